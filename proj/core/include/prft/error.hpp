#pragma once

#include <stdexcept>
#include <string>

namespace prft {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input file does not parse, or its timestamps are not a uniform grid.
class FormatError : public Error {
public:
    using Error::Error;
};

/// Parsed data violates the configured quality policy (missing values, long gaps).
class DataQualityError : public Error {
public:
    using Error::Error;
};

/// Too few samples remain for the requested operation.
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

/// Zero-variance or otherwise degenerate input where spread is required.
class DegenerateInputError : public Error {
public:
    using Error::Error;
};

/// Values outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A parametric fit failed to converge.
class FitError : public Error {
public:
    using Error::Error;
};

/// Caller broke a documented precondition (size mismatch, bad argument).
class ContractViolation : public Error {
public:
    using Error::Error;
};

} // namespace prft
