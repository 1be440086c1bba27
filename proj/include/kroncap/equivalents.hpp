// SPDX-License-Identifier: Apache-2.0
//
// kroncap: capacity statistics of Kronecker-correlated MIMO Rayleigh channels
// Copyright (C) 2026 the kroncap authors

#pragma once

#include "kroncap/fixed_point.hpp"
#include "kroncap/profile.hpp"

namespace kroncap {

/// Deterministic equivalents of the mutual information at SNR rho:
/// the first-order value V (nats) and the asymptotic variance
/// sigma2 = -log(1 - rho^2 gamma gamma~) (nats^2).
struct Equivalents {
    double rho = 0.0;
    double v = 0.0;
    double sigma2 = 0.0;
    FixedPoint fp;
};

/// V(rho) = sum_j log(1 + rho delta d~_j) + sum_i log(1 + rho delta~ d_i)
///          - n rho delta delta~, with sigma2 filled alongside.
Equivalents v_of_rho(const ValidatedProfile& profile, double rho,
                     double tol = 1e-12);

/// Same quantities computed from an already-solved fixed point.
Equivalents equivalents_from(const ValidatedProfile& profile,
                             const FixedPoint& fp);

/// Integrand whose antiderivative is sigma2/2: assembled from the solved
/// point's trace moments as
///
///   eta(t) = [ -t^2 g A3~ A1 / (1 - t^2 g g~)
///              + t g~ B23
///              + t^3 g~^2 B33 A1 / (1 - t^2 g g~) ] / (1 - t^2 g g~)
///
/// with g = gamma, g~ = gamma~, A1 = (1/n)tr(D T^2), B23 = (1/n)tr(D^2 T^3),
/// B33 = (1/n)tr(D^3 T^3), A3~ = (1/n)tr(D~^3 T~^3). Vanishes linearly at 0.
double eta(const ValidatedProfile& profile, double t, double tol = 1e-12);
double eta_from(const ValidatedProfile& profile, const FixedPoint& fp);

/// Composite-Simpson integral of the variance rate 2 eta(t) over [0, rho]
/// on a warm-started solve path; cross-checks the closed-form sigma2.
/// grid_size counts subintervals (rounded up to even).
double sigma2_by_integration(const ValidatedProfile& profile, double rho,
                             int grid_size = 256, double tol = 1e-12);

/// Composite-Simpson integral of n delta(t) delta~(t) over [0, rho];
/// cross-checks the closed-form V.
double v_by_integration(const ValidatedProfile& profile, double rho,
                        int grid_size = 256, double tol = 1e-12);

/// Gaussian-approximation outage probability P(I < threshold_r) =
/// Phi((threshold_r - V) / sigma).
double outage(const ValidatedProfile& profile, double rho, double threshold_r,
              double tol = 1e-12);

constexpr double nats_to_bits(double nats) { return nats / 0.6931471805599453; }

}  // namespace kroncap
