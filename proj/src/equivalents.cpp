// SPDX-License-Identifier: Apache-2.0
//
// kroncap: capacity statistics of Kronecker-correlated MIMO Rayleigh channels
// Copyright (C) 2026 the kroncap authors

#include "kroncap/equivalents.hpp"

#include <cmath>
#include <functional>
#include <vector>

#include "kroncap/errors.hpp"
#include "kroncap/stats.hpp"

namespace kroncap {

Equivalents equivalents_from(const ValidatedProfile& p, const FixedPoint& fp) {
    Equivalents e;
    e.rho = fp.t;
    e.fp = fp;

    double logdet_tx = 0.0;
    for (double dj : p.d_tilde()) {
        logdet_tx += std::log1p(fp.t * fp.delta * dj);
    }
    double logdet_rx = 0.0;
    for (double di : p.d()) {
        logdet_rx += std::log1p(fp.t * fp.delta_tilde * di);
    }
    e.v = logdet_tx + logdet_rx -
          static_cast<double>(p.n()) * fp.t * fp.delta * fp.delta_tilde;
    e.sigma2 = -std::log1p(-fp.t * fp.t * fp.gamma * fp.gamma_tilde);
    return e;
}

Equivalents v_of_rho(const ValidatedProfile& p, double rho, double tol) {
    if (rho < 0.0) throw InvalidParams("rho must be >= 0");
    return equivalents_from(p, solve(p, rho, tol));
}

double eta_from(const ValidatedProfile& p, const FixedPoint& fp) {
    const double t = fp.t;
    const int n = p.n();
    const double denom = fp.one_minus_t2gg();

    const double tr_d1t2 = trace_moment(p.d(), fp.t_diag, 1, 2, n);
    const double tr_d2t3 = trace_moment(p.d(), fp.t_diag, 2, 3, n);
    const double tr_d3t3 = trace_moment(p.d(), fp.t_diag, 3, 3, n);
    const double tr_dt3t3 = trace_moment(p.d_tilde(), fp.t_tilde_diag, 3, 3, n);

    const double term1 = -t * t * fp.gamma * tr_dt3t3 * tr_d1t2 / denom;
    const double term2 = t * fp.gamma_tilde * tr_d2t3;
    const double term3 =
        t * t * t * fp.gamma_tilde * fp.gamma_tilde * tr_d3t3 * tr_d1t2 / denom;
    return (term1 + term2 + term3) / denom;
}

double eta(const ValidatedProfile& p, double t, double tol) {
    if (t < 0.0) throw InvalidParams("t must be >= 0");
    return eta_from(p, solve(p, t, tol));
}

namespace {

// Composite Simpson of a per-node function over a warm-started solve path
// on [0, rho]. grid_size is rounded up to an even subinterval count.
double simpson_on_path(
    const ValidatedProfile& p, double rho, int grid_size, double tol,
    const std::function<double(const FixedPoint&)>& integrand) {
    if (rho < 0.0) throw InvalidParams("rho must be >= 0");
    if (rho == 0.0) return 0.0;
    if (grid_size < 2) throw InvalidParams("grid_size must be >= 2");
    const int m = grid_size + (grid_size % 2);
    const double h = rho / m;

    std::vector<double> grid(static_cast<size_t>(m) + 1);
    for (int k = 0; k <= m; ++k) grid[static_cast<size_t>(k)] = h * k;
    const std::vector<FixedPoint> path = solve_path(p, grid, tol);

    double acc = integrand(path.front()) + integrand(path.back());
    for (int k = 1; k < m; ++k) {
        acc += (k % 2 == 1 ? 4.0 : 2.0) * integrand(path[static_cast<size_t>(k)]);
    }
    return acc * h / 3.0;
}

}  // namespace

double sigma2_by_integration(const ValidatedProfile& p, double rho,
                             int grid_size, double tol) {
    // The variance grows at rate d sigma2/dt = 2 eta(t).
    return simpson_on_path(p, rho, grid_size, tol, [&](const FixedPoint& fp) {
        return 2.0 * eta_from(p, fp);
    });
}

double v_by_integration(const ValidatedProfile& p, double rho, int grid_size,
                        double tol) {
    const double n = static_cast<double>(p.n());
    return simpson_on_path(p, rho, grid_size, tol, [&](const FixedPoint& fp) {
        return n * fp.delta * fp.delta_tilde;
    });
}

double outage(const ValidatedProfile& p, double rho, double threshold_r,
              double tol) {
    const Equivalents e = v_of_rho(p, rho, tol);
    if (e.sigma2 <= 0.0) {
        // Degenerate rho = 0 limit: the distribution collapses onto V.
        if (threshold_r < e.v) return 0.0;
        if (threshold_r > e.v) return 1.0;
        return 0.5;
    }
    return normal_cdf((threshold_r - e.v) / std::sqrt(e.sigma2));
}

}  // namespace kroncap
