// SPDX-License-Identifier: Apache-2.0
//
// kroncap: capacity statistics of Kronecker-correlated MIMO Rayleigh channels
// Copyright (C) 2026 the kroncap authors

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "kroncap/profile.hpp"

namespace kroncap {

/// Monte Carlo estimate of alpha(rho) = E[(1/n) tr D H(rho)], where
/// H(t) = (t/n Y Y* + I)^{-1}. Trials use the same per-index streams as
/// run_batch; the aggregation order is fixed, so the estimate is
/// independent of the thread count.
double empirical_alpha(const ValidatedProfile& profile, double rho,
                       int trials, uint64_t seed, int threads = 1);

/// The deterministic companions of an alpha estimate:
/// R~ = (I + t alpha D~)^{-1}, alpha~ = (1/n) tr D~ R~,
/// R  = (I + t alpha~ D)^{-1}. All diagonal entries lie in (0, 1].
struct RMatrices {
    std::vector<double> r_diag;
    std::vector<double> r_tilde_diag;
    double alpha_tilde = 0.0;
};

RMatrices r_matrices(const ValidatedProfile& profile, double rho,
                     double alpha_hat);

/// Max-norm of H - (I - t/n H Y Y*), which is zero in exact arithmetic.
double resolvent_identity_residual(const Eigen::MatrixXcd& y, double rho);

/// (min, max) eigenvalue of H(rho); contained in (0, 1] for rho >= 0.
std::pair<double, double> resolvent_spectrum_range(const Eigen::MatrixXcd& y,
                                                   double rho);

struct DiagnosticSeries {
    std::vector<int> ns;
    std::vector<double> errors;      ///< nonnegative, same length as ns
    double fitted_exponent = 0.0;    ///< OLS slope of log(error) vs log(n)
    double fit_stderr = 0.0;
};

struct RateFitReport {
    DiagnosticSeries alpha_bias;  ///< |alpha_hat_n - delta_n|
    DiagnosticSeries trace_gap;   ///< |E tr(D H) - tr(D R(alpha_hat))|
};

/// Measures the deterministic-equivalent errors across the dimension sweep
/// `ns` for a generated profile family (big_n = round(ratio * n) per node).
/// Trials scale like n^2 from trials_base at the smallest n, keeping the
/// Monte Carlo noise aligned with the decaying bias.
RateFitReport rate_fit(const std::string& family_spec, double ratio,
                       double rho, std::span<const int> ns, int trials_base,
                       uint64_t seed, int threads = 1, double tol = 1e-12);

}  // namespace kroncap
