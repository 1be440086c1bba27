// SPDX-License-Identifier: Apache-2.0
//
// kroncap: capacity statistics of Kronecker-correlated MIMO Rayleigh channels
// Copyright (C) 2026 the kroncap authors

#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "kroncap/equivalents.hpp"
#include "kroncap/profile.hpp"

namespace kroncap {

/// Deterministic random stream for one Monte Carlo trial, derived from
/// (seed, trial index) alone. Trials therefore commute across threads and
/// runs: the sample multiset depends only on the seed.
class TrialRng {
  public:
    TrialRng(uint64_t seed, uint64_t trial_index);

    /// Uniform on (0, 1].
    double uniform();

    /// Standard normal (Box-Muller; pairs cached).
    double normal();

    /// CN(0,1): (g1 + i g2) / sqrt(2), so E|X|^2 = 1 and E X^2 = 0.
    std::complex<double> complex_normal();

  private:
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

/// Draws Y with Y_ij = sqrt(d_i d~_j) X_ij, X_ij i.i.d. CN(0,1).
/// Entries are drawn column by column, top to bottom.
Eigen::MatrixXcd sample_channel(const ValidatedProfile& profile, TrialRng& rng);

/// I(rho) = log det(rho/n Y Y* + I) in nats, via the eigenvalues of the
/// Hermitian PSD Gram matrix Y Y*. Nonnegative and nondecreasing in rho.
double mutual_information(const Eigen::MatrixXcd& y, double rho);

/// Same quantity through a Cholesky factorization of rho/n Y Y* + I;
/// faster, no spectrum. Agrees with the eigenvalue route to roundoff.
double mutual_information_cholesky(const Eigen::MatrixXcd& y, double rho);

struct TrialBatch {
    double rho = 0.0;
    std::vector<double> samples;  ///< one I(rho) per trial, ordered by index
    double mean = 0.0;
    double var = 0.0;  ///< unbiased; meaningful from 2 samples on
    uint64_t seed = 0;
};

/// Runs `trials` independent realizations. The result is identical for any
/// thread count: trial i always consumes the (seed, i) stream and lands in
/// samples[i].
TrialBatch run_batch(const ValidatedProfile& profile, double rho, int trials,
                     uint64_t seed, int threads = 1);

struct TestReport {
    size_t count = 0;
    double ks_stat = 0.0;
    double ks_p = 0.0;
    double var_ratio = 0.0;  ///< sample variance / sigma2
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
};

/// Standardizes the batch by the deterministic equivalents, (I - V)/sigma,
/// and scores it against N(0,1). Needs at least 100 samples.
TestReport normality_test(const TrialBatch& batch, const Equivalents& eq);

}  // namespace kroncap
