// SPDX-License-Identifier: Apache-2.0
//
// kroncap: capacity statistics of Kronecker-correlated MIMO Rayleigh channels
// Copyright (C) 2026 the kroncap authors

#include "kroncap/resolvent_diag.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "kroncap/errors.hpp"
#include "kroncap/fixed_point.hpp"
#include "kroncap/montecarlo.hpp"
#include "kroncap/parallel.hpp"
#include "kroncap/stats.hpp"

namespace kroncap {

namespace {

struct GramEig {
    Eigen::VectorXd lambdas;
    Eigen::MatrixXcd vectors;
};

GramEig gram_eig(const Eigen::MatrixXcd& y) {
    const Eigen::MatrixXcd gram = y * y.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
    if (es.info() != Eigen::Success) {
        throw NumericalFailure("eigensolve of the Gram matrix failed");
    }
    return {es.eigenvalues(), es.eigenvectors()};
}

// (1/n) tr(D H) from the Gram spectrum: H = U f(Lambda) U* with
// f(lambda) = 1 / (1 + rho lambda / n).
double beta_from_eig(const ValidatedProfile& p, const GramEig& eig,
                     double rho) {
    const double n = static_cast<double>(p.n());
    Eigen::VectorXd d(p.big_n());
    for (int i = 0; i < p.big_n(); ++i) d[i] = p.d()[static_cast<size_t>(i)];
    // weight_k = sum_i d_i |U_ik|^2
    const Eigen::VectorXd weights =
        eig.vectors.cwiseAbs2().transpose() * d;
    double sum = 0.0;
    for (Eigen::Index k = 0; k < weights.size(); ++k) {
        const double lambda = std::max(0.0, eig.lambdas[k]);
        sum += weights[k] / (1.0 + rho * lambda / n);
    }
    return sum / n;
}

// Uniform D collapses tr(D H) to d tr(H), and the trace of the inverse
// comes straight from a Cholesky factor: tr(A^-1) = ||L^-1||_F^2.
double beta_uniform_d(const ValidatedProfile& p, const Eigen::MatrixXcd& y,
                      double rho) {
    const double n = static_cast<double>(p.n());
    Eigen::MatrixXcd a = (rho / n) * (y * y.adjoint());
    a.diagonal().array() += 1.0;
    Eigen::LLT<Eigen::MatrixXcd> llt(a);
    if (llt.info() != Eigen::Success) {
        throw NumericalFailure("Cholesky of rho/n YY* + I failed");
    }
    Eigen::MatrixXcd linv =
        Eigen::MatrixXcd::Identity(a.rows(), a.rows());
    llt.matrixL().solveInPlace(linv);
    return p.d()[0] * linv.squaredNorm() / n;
}

}  // namespace

double empirical_alpha(const ValidatedProfile& p, double rho, int trials,
                       uint64_t seed, int threads) {
    if (trials < 1) throw InvalidParams("trials must be >= 1");
    const bool uniform_d = p.d_max() == *std::min_element(p.d().begin(), p.d().end());
    std::vector<double> betas(static_cast<size_t>(trials));
    parallel_for(static_cast<size_t>(trials), threads,
                 [&](size_t begin, size_t end) {
                     for (size_t i = begin; i < end; ++i) {
                         TrialRng rng(seed, i);
                         const Eigen::MatrixXcd y = sample_channel(p, rng);
                         betas[i] = uniform_d
                                        ? beta_uniform_d(p, y, rho)
                                        : beta_from_eig(p, gram_eig(y), rho);
                     }
                 });
    // Fixed-order reduction keeps the estimate thread-count independent.
    double sum = 0.0;
    for (double b : betas) sum += b;
    return sum / static_cast<double>(trials);
}

RMatrices r_matrices(const ValidatedProfile& p, double rho, double alpha_hat) {
    if (alpha_hat <= 0.0 && rho > 0.0) {
        throw InvalidParams("alpha_hat must be > 0");
    }
    const double n = static_cast<double>(p.n());
    RMatrices out;
    out.r_tilde_diag.resize(p.d_tilde().size());
    double at_sum = 0.0;
    for (size_t j = 0; j < p.d_tilde().size(); ++j) {
        const double rj = 1.0 / (1.0 + rho * alpha_hat * p.d_tilde()[j]);
        out.r_tilde_diag[j] = rj;
        at_sum += p.d_tilde()[j] * rj;
    }
    out.alpha_tilde = at_sum / n;

    out.r_diag.resize(p.d().size());
    for (size_t i = 0; i < p.d().size(); ++i) {
        out.r_diag[i] = 1.0 / (1.0 + rho * out.alpha_tilde * p.d()[i]);
    }
    return out;
}

double resolvent_identity_residual(const Eigen::MatrixXcd& y, double rho) {
    const double n = static_cast<double>(y.cols());
    const Eigen::MatrixXcd gram = y * y.adjoint();
    Eigen::MatrixXcd a = (rho / n) * gram;
    a.diagonal().array() += 1.0;
    const Eigen::MatrixXcd h = a.llt().solve(
        Eigen::MatrixXcd::Identity(y.rows(), y.rows()));
    const Eigen::MatrixXcd residual =
        h - (Eigen::MatrixXcd::Identity(y.rows(), y.rows()) -
             (rho / n) * h * gram);
    return residual.cwiseAbs().maxCoeff();
}

std::pair<double, double> resolvent_spectrum_range(const Eigen::MatrixXcd& y,
                                                   double rho) {
    const double n = static_cast<double>(y.cols());
    const GramEig eig = gram_eig(y);
    double lo = 1.0, hi = 0.0;
    for (Eigen::Index k = 0; k < eig.lambdas.size(); ++k) {
        const double mu = 1.0 / (1.0 + rho * eig.lambdas[k] / n);
        lo = std::min(lo, mu);
        hi = std::max(hi, mu);
    }
    return {lo, hi};
}

RateFitReport rate_fit(const std::string& family_spec, double ratio,
                       double rho, std::span<const int> ns, int trials_base,
                       uint64_t seed, int threads, double tol) {
    if (ns.size() < 3) throw InvalidParams("rate fit needs at least 3 sizes");
    if (trials_base < 1) throw InvalidParams("trials_base must be >= 1");
    for (size_t k = 1; k < ns.size(); ++k) {
        if (ns[k] <= ns[k - 1]) throw InvalidParams("ns must be increasing");
    }

    RateFitReport report;
    const double n0 = static_cast<double>(ns.front());
    for (size_t k = 0; k < ns.size(); ++k) {
        const int n = ns[k];
        const int big_n = std::max(1, static_cast<int>(std::lround(ratio * n)));
        const ValidatedProfile profile =
            validate(generate_from_spec(family_spec, big_n, n));

        const double scale = static_cast<double>(n) / n0;
        const int trials =
            static_cast<int>(std::lround(trials_base * scale * scale));

        // Decorrelate the sweep nodes by folding n into the stream seed.
        const uint64_t node_seed = seed + 0x632be59bd9b4e019ULL * (k + 1);
        const double alpha_hat =
            empirical_alpha(profile, rho, trials, node_seed, threads);
        const FixedPoint fp = solve(profile, rho, tol);
        const RMatrices r = r_matrices(profile, rho, alpha_hat);

        double tr_dr = 0.0;
        for (size_t i = 0; i < r.r_diag.size(); ++i) {
            tr_dr += profile.d()[i] * r.r_diag[i];
        }

        report.alpha_bias.ns.push_back(n);
        report.alpha_bias.errors.push_back(std::abs(alpha_hat - fp.delta));
        report.trace_gap.ns.push_back(n);
        report.trace_gap.errors.push_back(
            std::abs(static_cast<double>(profile.n()) * alpha_hat - tr_dr));
    }

    for (DiagnosticSeries* series : {&report.alpha_bias, &report.trace_gap}) {
        std::vector<double> lx, ly;
        for (size_t k = 0; k < series->ns.size(); ++k) {
            lx.push_back(std::log(static_cast<double>(series->ns[k])));
            ly.push_back(std::log(std::max(series->errors[k], 1e-300)));
        }
        const LineFit fit = fit_line(lx, ly);
        series->fitted_exponent = fit.slope;
        series->fit_stderr = fit.slope_stderr;
    }
    return report;
}

}  // namespace kroncap
