#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace genfrac {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Inputs outside the mathematical domain of an operation: poles, invalid
/// orders, radius violations, unsupported base points, bad psi functions.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Numerical failure of an otherwise well-posed computation.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// A power series is evaluated outside its disc of convergence, or its terms
/// grow over a detection window.
class DivergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// A transform symbol was requested where the A_Gamma series diverges and no
/// closed-form continuation is known for the kernel.
class OutOfRegionError : public DivergenceError {
public:
    using DivergenceError::DivergenceError;
};

/// A convergent series did not reach the tail tolerance within max_terms.
class TruncationError : public NumericalError {
public:
    TruncationError(const std::string& what, double last_tail)
        : NumericalError(what), last_tail_(last_tail) {}

    double last_tail() const noexcept { return last_tail_; }

private:
    double last_tail_;
};

/// A fixed-point iteration failed to contract or ran out of iterations.
class ConvergenceError : public NumericalError {
public:
    ConvergenceError(const std::string& what, double last_residual)
        : NumericalError(what), last_residual_(last_residual) {}

    double last_residual() const noexcept { return last_residual_; }

private:
    double last_residual_;
};

/// Malformed textual input (kernel specs, expressions, problem files).
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

}  // namespace genfrac
