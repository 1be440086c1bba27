// SPDX-License-Identifier: Apache-2.0
//
// kroncap: capacity statistics of Kronecker-correlated MIMO Rayleigh channels
// Copyright (C) 2026 the kroncap authors

#include "kroncap/fixed_point.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kroncap/errors.hpp"

namespace kroncap {

namespace {

// One evaluation of the scalar reduction at a candidate delta: maps delta
// to delta~(delta), then to f(t, delta) and the slope of f - delta. The
// slope is f'(delta) - 1 = t^2 gamma gamma~ - 1, which stays negative
// wherever the variance denominator is positive, so Newton steps are
// well-behaved near the root.
struct ScalarEval {
    double f = 0.0;            // f(t, delta)
    double phi = 0.0;          // f(t, delta) - delta
    double dphi = 0.0;         // d phi / d delta
    double delta_tilde = 0.0;  // delta~ evaluated at this delta
};

ScalarEval evaluate(const ValidatedProfile& p, double t, double delta) {
    const double n = static_cast<double>(p.n());
    double dt_sum = 0.0, gt_sum = 0.0;
    for (double dj : p.d_tilde()) {
        const double tt = 1.0 / (1.0 + t * delta * dj);
        dt_sum += dj * tt;
        gt_sum += dj * dj * tt * tt;
    }
    ScalarEval e;
    e.delta_tilde = dt_sum / n;
    const double gamma_tilde = gt_sum / n;

    double f_sum = 0.0, g_sum = 0.0;
    for (double di : p.d()) {
        const double ti = 1.0 / (1.0 + t * e.delta_tilde * di);
        f_sum += di * ti;
        g_sum += di * di * ti * ti;
    }
    e.f = f_sum / n;
    const double gamma = g_sum / n;

    e.phi = e.f - delta;
    e.dphi = t * t * gamma * gamma_tilde - 1.0;
    return e;
}

}  // namespace

double delta_lower_bound(const ValidatedProfile& p, double t) {
    return p.trace_d() / (1.0 + t * p.d_max() * p.d_tilde_max());
}

double delta_tilde_lower_bound(const ValidatedProfile& p, double t) {
    return p.trace_d_tilde() /
           (1.0 + t * p.ratio() * p.d_max() * p.d_tilde_max());
}

void derived_quantities(const ValidatedProfile& p, FixedPoint& fp) {
    const double n = static_cast<double>(p.n());
    fp.t_diag.resize(p.d().size());
    fp.t_tilde_diag.resize(p.d_tilde().size());

    double g_sum = 0.0;
    for (size_t i = 0; i < p.d().size(); ++i) {
        const double ti = 1.0 / (1.0 + fp.t * fp.delta_tilde * p.d()[i]);
        fp.t_diag[i] = ti;
        const double dt = p.d()[i] * ti;
        g_sum += dt * dt;
    }
    fp.gamma = g_sum / n;

    double gt_sum = 0.0;
    for (size_t j = 0; j < p.d_tilde().size(); ++j) {
        const double tj = 1.0 / (1.0 + fp.t * fp.delta * p.d_tilde()[j]);
        fp.t_tilde_diag[j] = tj;
        const double dt = p.d_tilde()[j] * tj;
        gt_sum += dt * dt;
    }
    fp.gamma_tilde = gt_sum / n;
}

FixedPoint solve(const ValidatedProfile& p, double t, double tol,
                 const SolveOptions& options) {
    if (t < 0.0 || !std::isfinite(t)) throw InvalidParams("t must be >= 0");
    if (tol <= 0.0) throw InvalidParams("tol must be > 0");

    FixedPoint fp;
    fp.t = t;

    if (t == 0.0) {
        // T = T~ = I exactly.
        fp.delta = p.trace_d();
        fp.delta_tilde = p.trace_d_tilde();
        fp.residual = 0.0;
        derived_quantities(p, fp);
        return fp;
    }

    double lo = options.bracket_lo > 0.0 ? options.bracket_lo
                                         : 0.5 * delta_lower_bound(p, t);
    double hi = options.bracket_hi > 0.0 ? options.bracket_hi : p.trace_d();
    if (options.warm_start > 0.0) {
        // delta decreases in t, so a solution at a smaller t caps the root.
        hi = std::min(hi, options.warm_start * (1.0 + 1e-12) +
                              std::numeric_limits<double>::min());
    }

    ScalarEval at_lo = evaluate(p, t, lo);
    ScalarEval at_hi = evaluate(p, t, hi);
    if (at_lo.phi < 0.0 || at_hi.phi > 0.0) {
        if (options.bracket_lo > 0.0 || options.bracket_hi > 0.0) {
            throw InvalidParams("bracket override does not contain the root");
        }
        // The a-priori bracket cannot fail for a validated profile; the
        // warm start might in pathological floating-point corners.
        lo = 0.5 * delta_lower_bound(p, t);
        hi = p.trace_d();
        at_lo = evaluate(p, t, lo);
        at_hi = evaluate(p, t, hi);
        if (at_lo.phi < 0.0 || at_hi.phi > 0.0) {
            throw NoConvergence("scalar reduction lost its bracket", 0);
        }
    }

    double x = 0.5 * (lo + hi);
    ScalarEval e = evaluate(p, t, x);
    long iter = 0;
    for (; iter < options.max_iterations; ++iter) {
        if (std::abs(e.phi) < tol) break;
        if (e.phi > 0.0) {
            lo = x;
        } else {
            hi = x;
        }
        double next = x - e.phi / e.dphi;
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        if (next == x) break;  // interval exhausted at double precision
        x = next;
        e = evaluate(p, t, x);
    }
    if (std::abs(e.phi) >= tol) {
        throw NoConvergence("fixed point residual " + std::to_string(e.phi) +
                                " above tolerance after " +
                                std::to_string(iter) + " iterations",
                            iter);
    }

    fp.delta = x;
    fp.delta_tilde = e.delta_tilde;
    fp.residual = std::abs(e.phi);
    derived_quantities(p, fp);
    return fp;
}

std::vector<FixedPoint> solve_path(const ValidatedProfile& p,
                                   std::span<const double> t_grid,
                                   double tol) {
    if (t_grid.empty()) return {};
    if (t_grid.front() < 0.0) throw InvalidParams("grid must start at t >= 0");
    for (size_t k = 1; k < t_grid.size(); ++k) {
        if (t_grid[k] < t_grid[k - 1]) {
            throw InvalidParams("grid must be sorted ascending");
        }
    }

    std::vector<FixedPoint> path;
    path.reserve(t_grid.size());
    SolveOptions options;
    for (size_t k = 0; k < t_grid.size(); ++k) {
        try {
            path.push_back(solve(p, t_grid[k], tol, options));
        } catch (const NoConvergence& e) {
            throw NoConvergence("grid index " + std::to_string(k) + ": " +
                                    e.what(),
                                e.iterations);
        }
        options.warm_start = path.back().delta;
    }
    return path;
}

double trace_moment(std::span<const double> diag_d,
                    std::span<const double> diag_t, int d_pow, int t_pow,
                    int n) {
    double sum = 0.0;
    for (size_t i = 0; i < diag_d.size(); ++i) {
        double term = 1.0;
        for (int k = 0; k < d_pow; ++k) term *= diag_d[i];
        for (int k = 0; k < t_pow; ++k) term *= diag_t[i];
        sum += term;
    }
    return sum / static_cast<double>(n);
}

}  // namespace kroncap
