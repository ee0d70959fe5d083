#pragma once

#include <stdexcept>
#include <string>

namespace fockq {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument or out-of-domain request (bad dimension, nonpositive scale, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public DomainError {
public:
    using DomainError::DomainError;
};

/// A quantity left the representable floating-point range.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Quadrature order too low for the requested accuracy.
class QuadratureError : public Error {
public:
    QuadratureError(const std::string& what, std::size_t required_radial,
                    std::size_t required_angular)
        : Error(what), required_radial_(required_radial), required_angular_(required_angular) {}

    std::size_t required_radial() const noexcept { return required_radial_; }
    std::size_t required_angular() const noexcept { return required_angular_; }

private:
    std::size_t required_radial_;
    std::size_t required_angular_;
};

/// Iterative eigensolver or bisection failed to meet its contract.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// A mathematical invariant the library guarantees was observed to fail.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace fockq
