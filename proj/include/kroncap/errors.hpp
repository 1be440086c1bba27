// SPDX-License-Identifier: Apache-2.0
//
// kroncap: capacity statistics of Kronecker-correlated MIMO Rayleigh channels
// Copyright (C) 2026 the kroncap authors

#pragma once

#include <stdexcept>
#include <string>

namespace kroncap {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Profile rejected: a diagonal entry is negative.
struct RejectNegativeEntry : Error {
    using Error::Error;
};

// Profile rejected: one of the normalized traces is zero.
struct RejectZeroTrace : Error {
    using Error::Error;
};

// Unknown profile generator family.
struct UnknownKind : Error {
    using Error::Error;
};

// Generator parameters invalid for the requested family.
struct InvalidParams : Error {
    using Error::Error;
};

// Root search failed to reach the requested residual tolerance.
struct NoConvergence : Error {
    NoConvergence(const std::string& what, long iterations_)
        : Error(what), iterations(iterations_) {}
    long iterations;
};

// A matrix factorization or eigensolve failed.
struct NumericalFailure : Error {
    using Error::Error;
};

// Too few samples for the requested statistic.
struct InsufficientSamples : Error {
    using Error::Error;
};

// File could not be read or written.
struct IoError : Error {
    using Error::Error;
};

}  // namespace kroncap
