#pragma once

#include <stdexcept>
#include <string>

namespace fracid {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

// Inconsistent or unsupported configuration (divergent integrals, bad grids).
class ConfigError : public Error {
public:
    using Error::Error;
};

// Non-finite inputs, failed convergence, singular systems.
class NumericError : public Error {
public:
    using Error::Error;
};

// The quasi-optimality rule had too few finite values to choose from.
class SelectionError : public NumericError {
public:
    using NumericError::NumericError;
};

// The observation carries no usable signal (zero denominators).
class DegenerateObservationError : public NumericError {
public:
    using NumericError::NumericError;
};

// Order estimates violate the required ordering nu_second < nu1.
class OrderError : public NumericError {
public:
    using NumericError::NumericError;
};

}  // namespace fracid
