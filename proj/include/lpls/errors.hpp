#pragma once

#include <stdexcept>
#include <string>

namespace lpls {

// Base class for everything this library throws.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Shape/validation problems: mismatched dimensions, invalid configs.
struct DimensionError : Error {
    using Error::Error;
};

// Malformed input files; the message carries the offending line number.
struct ParseError : Error {
    using Error::Error;
};

// Base for failures of the numerics themselves.
struct NumericalError : Error {
    using Error::Error;
};

// Rounded magnitude exceeds the largest finite value of a clamped range.
struct OverflowError : NumericalError {
    using NumericalError::NumericalError;
};

// sqrt of a negative number, division by zero.
struct DomainError : NumericalError {
    using NumericalError::NumericalError;
};

// Cholesky hit a non-positive pivot.
struct BreakdownError : NumericalError {
    using NumericalError::NumericalError;
};

// Singular values below the rank tolerance where full rank is required.
struct RankDeficientError : NumericalError {
    using NumericalError::NumericalError;
};

} // namespace lpls
