// SPDX-License-Identifier: Apache-2.0
//
// kroncap: capacity statistics of Kronecker-correlated MIMO Rayleigh channels
// Copyright (C) 2026 the kroncap authors

#pragma once

#include <span>
#include <vector>

#include "kroncap/profile.hpp"

namespace kroncap {

/// Solution of the coupled pair
///
///   delta       = (1/n) tr D  (I + t delta~ D )^{-1}
///   delta~      = (1/n) tr D~ (I + t delta  D~)^{-1}
///
/// at a given t >= 0, together with the derived diagonal matrices
/// T = (I + t delta~ D)^{-1}, T~ = (I + t delta D~)^{-1} and the
/// second-order traces gamma = (1/n) tr D^2 T^2, gamma~ = (1/n) tr D~^2 T~^2.
struct FixedPoint {
    double t = 0.0;
    double delta = 0.0;
    double delta_tilde = 0.0;
    std::vector<double> t_diag;        ///< T_ii,   length big_n, entries in (0, 1]
    std::vector<double> t_tilde_diag;  ///< T~_jj,  length n,     entries in (0, 1]
    double gamma = 0.0;
    double gamma_tilde = 0.0;
    double residual = 0.0;  ///< |delta - f(t, delta)| achieved by the solver

    /// 1 - t^2 gamma gamma~, the variance denominator. In (0, 1) for t > 0.
    double one_minus_t2gg() const { return 1.0 - t * t * gamma * gamma_tilde; }
};

struct SolveOptions {
    /// Positive values override the automatic bisection bracket. The
    /// override must still contain the root; anything else is rejected.
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    /// A previous delta at a smaller t; tightens the upper bracket.
    double warm_start = 0.0;
    long max_iterations = 200;
};

/// Solves the pair for the unique positive solution by a safeguarded
/// Newton/bisection search on the scalar reduction delta = f(t, delta),
/// where f substitutes delta~ as a function of delta. Stops when the
/// residual |delta - f(t, delta)| drops below tol; delta~ is exact in
/// delta by construction. t = 0 is returned in closed form.
/// Throws NoConvergence if the tolerance is not met.
FixedPoint solve(const ValidatedProfile& profile, double t, double tol = 1e-12,
                 const SolveOptions& options = {});

/// Fills t_diag, t_tilde_diag, gamma and gamma_tilde from (t, delta, delta~).
void derived_quantities(const ValidatedProfile& profile, FixedPoint& fp);

/// Solves at every node of an ascending grid, warm-starting each solve
/// from the previous node. Throws NoConvergence annotated with the grid
/// index that failed.
std::vector<FixedPoint> solve_path(const ValidatedProfile& profile,
                                   std::span<const double> t_grid,
                                   double tol = 1e-12);

/// (1/n) sum_i diag_d[i]^d_pow * diag_t[i]^t_pow. The normalization is by
/// the column count n regardless of which side the diagonals live on.
double trace_moment(std::span<const double> diag_d,
                    std::span<const double> diag_t, int d_pow, int t_pow,
                    int n);

/// A-priori bounds on the solution (valid for every t >= 0):
/// lower <= delta <= upper with upper = (1/n) tr D and
/// lower = ((1/n) tr D) / (1 + t d_max d~_max).
double delta_lower_bound(const ValidatedProfile& profile, double t);
double delta_tilde_lower_bound(const ValidatedProfile& profile, double t);

}  // namespace kroncap
