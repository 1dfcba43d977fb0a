// errors.hpp: exception hierarchy shared by every cavdress module

#pragma once

#include <stdexcept>
#include <string>

namespace cavdress {

/// Broad failure category; the CLI maps each one to a process exit code.
enum class ErrorCategory {
    usage,      // bad flags, unknown keys
    validation, // a domain invariant was violated by the inputs
    numerical,  // solver or quadrature could not meet its contract
    io,         // filesystem trouble
};

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& what)
        : std::runtime_error(what), category_(category) {}

    ErrorCategory category() const noexcept { return category_; }

private:
    ErrorCategory category_;
};

struct UsageError : Error {
    explicit UsageError(const std::string& what) : Error(ErrorCategory::usage, what) {}
};

struct ValidationError : Error {
    explicit ValidationError(const std::string& what) : Error(ErrorCategory::validation, what) {}
};

struct IoError : Error {
    explicit IoError(const std::string& what) : Error(ErrorCategory::io, what) {}
};

struct NumericalError : Error {
    explicit NumericalError(const std::string& what) : Error(ErrorCategory::numerical, what) {}
};

// spectrum
struct BracketFailure : NumericalError {
    using NumericalError::NumericalError;
};
struct NonPositiveLowestRoot : NumericalError {
    using NumericalError::NumericalError;
};
struct DeltaOutOfRange : ValidationError {
    using ValidationError::ValidationError;
};

// coupling
struct ResonanceDegeneracy : NumericalError {
    using NumericalError::NumericalError;
};
struct OccupationMismatch : ValidationError {
    using ValidationError::ValidationError;
};
struct OverflowGuard : ValidationError {
    using ValidationError::ValidationError;
};

// evolution
struct IndexOutOfRange : ValidationError {
    using ValidationError::ValidationError;
};
struct ContractViolation : NumericalError {
    using NumericalError::NumericalError;
};

} // namespace cavdress
