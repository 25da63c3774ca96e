#pragma once

#include <stdexcept>
#include <string>

namespace scatterflat {

/// Base class for all library errors. `code()` is a stable, machine-readable
/// identifier used by the CLI error envelope; `what()` is the human message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

/// Input violates a documented precondition (bad argument, unsupported case,
/// out-of-domain request). CLI maps these to exit code 2.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Evaluation requested exactly at (or within guard distance of) a pole.
/// CLI maps these to exit code 1.
class PoleError : public Error {
public:
    using Error::Error;
};

/// An iteration/term budget was exhausted before reaching the target
/// accuracy. CLI maps these to exit code 1.
class BudgetError : public Error {
public:
    using Error::Error;
};

/// A series was requested outside its open convergence region.
/// Treated as a precondition violation (exit code 2).
class DivergenceError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// Geometric configuration is invalid (e.g. overlapping horoballs).
/// Treated as a precondition violation (exit code 2).
class GeometryError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

} // namespace scatterflat
