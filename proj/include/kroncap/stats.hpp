// SPDX-License-Identifier: Apache-2.0
//
// kroncap: capacity statistics of Kronecker-correlated MIMO Rayleigh channels
// Copyright (C) 2026 the kroncap authors

#pragma once

#include <span>

namespace kroncap {

/// Standard normal CDF via erfc; absolute error well below 1e-12.
double normal_cdf(double x);

struct SampleMoments {
    double mean = 0.0;
    double var = 0.0;  ///< unbiased (divides by m - 1)
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
    size_t count = 0;
};

SampleMoments sample_moments(std::span<const double> samples);

struct KsResult {
    double statistic = 0.0;
    double p_value = 0.0;
};

/// One-sample Kolmogorov-Smirnov test of `samples` against N(0, 1),
/// with the usual asymptotic p-value.
KsResult ks_test_standard_normal(std::span<const double> samples);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
};

/// Ordinary least squares of y against x. Needs at least 3 points for a
/// finite slope standard error.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace kroncap
