// SPDX-License-Identifier: Apache-2.0
//
// kroncap: capacity statistics of Kronecker-correlated MIMO Rayleigh channels
// Copyright (C) 2026 the kroncap authors

#include "kroncap/montecarlo.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "kroncap/errors.hpp"
#include "kroncap/parallel.hpp"
#include "kroncap/stats.hpp"

namespace kroncap {

namespace {

// splitmix64: mixes (seed, index) into a well-spread engine seed.
uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

TrialRng::TrialRng(uint64_t seed, uint64_t trial_index)
    : engine_(splitmix64(splitmix64(seed) ^
                         (0x9e3779b97f4a7c15ULL * (trial_index + 1)))) {}

double TrialRng::uniform() {
    // 53-bit mantissa, mapped to (0, 1] so log() below is always finite.
    const uint64_t bits = engine_() >> 11;
    return 1.0 - static_cast<double>(bits) * 0x1.0p-53;
}

double TrialRng::normal() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double theta = 2.0 * std::numbers::pi * uniform();
    cached_ = r * std::sin(theta);
    has_cached_ = true;
    return r * std::cos(theta);
}

std::complex<double> TrialRng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

Eigen::MatrixXcd sample_channel(const ValidatedProfile& p, TrialRng& rng) {
    const int rows = p.big_n();
    const int cols = p.n();
    Eigen::VectorXd sqrt_d(rows), sqrt_dt(cols);
    for (int i = 0; i < rows; ++i) sqrt_d[i] = std::sqrt(p.d()[static_cast<size_t>(i)]);
    for (int j = 0; j < cols; ++j) sqrt_dt[j] = std::sqrt(p.d_tilde()[static_cast<size_t>(j)]);

    Eigen::MatrixXcd y(rows, cols);
    for (int j = 0; j < cols; ++j) {
        for (int i = 0; i < rows; ++i) {
            y(i, j) = sqrt_d[i] * sqrt_dt[j] * rng.complex_normal();
        }
    }
    return y;
}

double mutual_information(const Eigen::MatrixXcd& y, double rho) {
    if (rho < 0.0) throw InvalidParams("rho must be >= 0");
    if (rho == 0.0) return 0.0;
    const double n = static_cast<double>(y.cols());
    const Eigen::MatrixXcd gram = y * y.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram,
                                                       Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw NumericalFailure("eigensolve of the Gram matrix failed");
    }
    double sum = 0.0;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        // PSD spectrum; roundoff can leak epsilon-negative values.
        const double lambda = std::max(0.0, es.eigenvalues()[k]);
        sum += std::log1p(rho * lambda / n);
    }
    return sum;
}

double mutual_information_cholesky(const Eigen::MatrixXcd& y, double rho) {
    if (rho < 0.0) throw InvalidParams("rho must be >= 0");
    if (rho == 0.0) return 0.0;
    const double n = static_cast<double>(y.cols());
    Eigen::MatrixXcd a = (rho / n) * (y * y.adjoint());
    a.diagonal().array() += 1.0;
    Eigen::LLT<Eigen::MatrixXcd> llt(a);
    if (llt.info() != Eigen::Success) {
        throw NumericalFailure("Cholesky of rho/n YY* + I failed");
    }
    double logdet = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        logdet += 2.0 * std::log(std::real(llt.matrixLLT()(i, i)));
    }
    return logdet;
}

TrialBatch run_batch(const ValidatedProfile& p, double rho, int trials,
                     uint64_t seed, int threads) {
    if (trials < 1) throw InvalidParams("trials must be >= 1");
    TrialBatch batch;
    batch.rho = rho;
    batch.seed = seed;
    batch.samples.resize(static_cast<size_t>(trials));

    parallel_for(static_cast<size_t>(trials), threads,
                 [&](size_t begin, size_t end) {
                     for (size_t i = begin; i < end; ++i) {
                         TrialRng rng(seed, i);
                         const Eigen::MatrixXcd y = sample_channel(p, rng);
                         batch.samples[i] = mutual_information(y, rho);
                     }
                 });

    const SampleMoments m = sample_moments(batch.samples);
    batch.mean = m.mean;
    batch.var = m.var;
    return batch;
}

TestReport normality_test(const TrialBatch& batch, const Equivalents& eq) {
    if (batch.samples.size() < 100) {
        throw InsufficientSamples("normality test needs >= 100 samples");
    }
    if (eq.sigma2 <= 0.0) {
        throw InvalidParams("normality test needs sigma2 > 0");
    }
    const double sigma = std::sqrt(eq.sigma2);
    std::vector<double> z(batch.samples.size());
    for (size_t i = 0; i < z.size(); ++i) {
        z[i] = (batch.samples[i] - eq.v) / sigma;
    }

    const SampleMoments m = sample_moments(z);
    const KsResult ks = ks_test_standard_normal(z);

    TestReport report;
    report.count = z.size();
    report.ks_stat = ks.statistic;
    report.ks_p = ks.p_value;
    report.var_ratio = batch.var / eq.sigma2;
    report.skewness = m.skewness;
    report.excess_kurtosis = m.excess_kurtosis;
    return report;
}

}  // namespace kroncap
