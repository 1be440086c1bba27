// SPDX-License-Identifier: Apache-2.0
//
// kroncap: capacity statistics of Kronecker-correlated MIMO Rayleigh channels
// Copyright (C) 2026 the kroncap authors

#include "kroncap/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "kroncap/errors.hpp"

namespace kroncap {

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

SampleMoments sample_moments(std::span<const double> samples) {
    SampleMoments m;
    m.count = samples.size();
    if (m.count == 0) return m;
    double sum = 0.0;
    for (double s : samples) sum += s;
    m.mean = sum / static_cast<double>(m.count);

    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double s : samples) {
        const double d = s - m.mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    const double mm = static_cast<double>(m.count);
    if (m.count >= 2) m.var = m2 / (mm - 1.0);
    m2 /= mm;
    m3 /= mm;
    m4 /= mm;
    if (m2 > 0.0) {
        m.skewness = m3 / std::pow(m2, 1.5);
        m.excess_kurtosis = m4 / (m2 * m2) - 3.0;
    }
    return m;
}

namespace {

// Asymptotic complementary Kolmogorov distribution Q(lambda).
double kolmogorov_q(double lambda) {
    if (lambda < 1e-8) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = std::exp(-2.0 * j * j * lambda * lambda);
        sum += sign * term;
        sign = -sign;
        if (term < 1e-16) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace

KsResult ks_test_standard_normal(std::span<const double> samples) {
    if (samples.size() < 2) {
        throw InsufficientSamples("KS test needs at least 2 samples");
    }
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double m = static_cast<double>(sorted.size());

    double d_stat = 0.0;
    for (size_t i = 0; i < sorted.size(); ++i) {
        const double cdf = normal_cdf(sorted[i]);
        const double hi = (static_cast<double>(i) + 1.0) / m - cdf;
        const double lo = cdf - static_cast<double>(i) / m;
        d_stat = std::max({d_stat, hi, lo});
    }

    KsResult r;
    r.statistic = d_stat;
    const double sqrt_m = std::sqrt(m);
    r.p_value = kolmogorov_q((sqrt_m + 0.12 + 0.11 / sqrt_m) * d_stat);
    return r;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw InsufficientSamples("line fit needs >= 2 matched points");
    }
    const double m = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= m;
    my /= m;

    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw InvalidParams("degenerate abscissae in line fit");

    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;

    if (x.size() >= 3) {
        double rss = 0.0;
        for (size_t i = 0; i < x.size(); ++i) {
            const double r = y[i] - fit.intercept - fit.slope * x[i];
            rss += r * r;
        }
        fit.slope_stderr = std::sqrt(rss / (m - 2.0) / sxx);
    }
    return fit;
}

}  // namespace kroncap
