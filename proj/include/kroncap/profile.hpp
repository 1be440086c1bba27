// SPDX-License-Identifier: Apache-2.0
//
// kroncap: capacity statistics of Kronecker-correlated MIMO Rayleigh channels
// Copyright (C) 2026 the kroncap authors

#pragma once

#include <span>
#include <string>
#include <vector>

namespace kroncap {

/// Separable variance profile of an N x n channel matrix: the entry (i,j)
/// has variance d[i] * d_tilde[j]. D = diag(d) carries the receive-side
/// correlation eigenvalues, D~ = diag(d_tilde) the transmit-side ones.
struct VarianceProfile {
    int n = 0;      ///< transmit antennas (columns)
    int big_n = 0;  ///< receive antennas (rows)
    std::vector<double> d;        ///< length big_n, nonnegative
    std::vector<double> d_tilde;  ///< length n, nonnegative
};

/// A profile that passed validation. Immutable; safe to share across threads.
class ValidatedProfile {
  public:
    int n() const { return raw_.n; }
    int big_n() const { return raw_.big_n; }
    double ratio() const { return ratio_; }  ///< c = N / n

    std::span<const double> d() const { return raw_.d; }
    std::span<const double> d_tilde() const { return raw_.d_tilde; }

    double d_max() const { return d_max_; }
    double d_tilde_max() const { return d_tilde_max_; }

    /// (1/n) tr D and (1/n) tr D~. Both are > 0 after validation.
    double trace_d() const { return trace_d_; }
    double trace_d_tilde() const { return trace_d_tilde_; }

    const VarianceProfile& raw() const { return raw_; }

  private:
    friend ValidatedProfile validate(VarianceProfile profile);

    VarianceProfile raw_;
    double ratio_ = 0.0;
    double d_max_ = 0.0;
    double d_tilde_max_ = 0.0;
    double trace_d_ = 0.0;
    double trace_d_tilde_ = 0.0;
};

/// Checks nonnegativity of all entries and positivity of both normalized
/// traces. Throws RejectNegativeEntry or RejectZeroTrace.
ValidatedProfile validate(VarianceProfile profile);

enum class ProfileKind {
    kConstant,          ///< every entry equals c0
    kLinearRamp,        ///< entries run linearly from lo to hi
    kExponentialDecay,  ///< entries 1, base, base^2, ...
};

/// Builds the requested deterministic profile family on both sides:
/// d gets big_n entries, d_tilde gets n entries of the same shape.
/// constant(1) is the i.i.d. case D = D~ = I.
VarianceProfile generate(ProfileKind kind, int big_n, int n,
                         std::span<const double> params);

/// Parses a generator spec of the form "constant:1", "linear-ramp:0.5,1.5"
/// or "exponential-decay:0.9". Throws UnknownKind / InvalidParams.
VarianceProfile generate_from_spec(const std::string& spec, int big_n, int n);

/// JSON document {"n": ..., "N": ..., "d": [...], "d_tilde": [...]}.
VarianceProfile load_profile(const std::string& path);
void save_profile(const VarianceProfile& profile, const std::string& path);
std::string profile_to_json(const VarianceProfile& profile);
VarianceProfile profile_from_json(const std::string& text);

}  // namespace kroncap
