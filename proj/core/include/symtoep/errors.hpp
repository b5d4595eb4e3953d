// Copyright (c) 2026 The symtoep authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace symtoep {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed arguments: bad extents, length mismatches, out-of-domain inputs.
class InputError : public Error {
public:
    using Error::Error;
};

/// |f| fell below the positivity floor while forming or evaluating f/|f|.
class SingularSymbolError : public Error {
public:
    using Error::Error;
};

/// A stated analytical assumption (e.g. essential positivity) failed on the grid.
class AssumptionError : public Error {
public:
    using Error::Error;
};

/// A preconditioner solve hit a (near-)zero eigenvalue or failed to factorize.
class SingularPreconditionerError : public Error {
public:
    using Error::Error;
};

/// Dense factorization failure (coarsest-grid solver, exact preconditioners).
class FactorizationError : public Error {
public:
    using Error::Error;
};

/// Request exceeds a hard size cap (dense materialization, dense eigensolver).
class SizeCapError : public Error {
public:
    using Error::Error;
};

/// Invalid run configuration (solver/preconditioner mismatch, unknown names).
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace symtoep
