#pragma once

#include <stdexcept>
#include <string>

namespace fracbvp {

/// Argument outside the mathematical domain of an operation (gamma poles,
/// evaluating x^p with p < 0 at x = 0, inadmissible Caputo powers, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An adaptive numerical procedure did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A pivot vanished during factorization.
class SingularMatrixError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file or option.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace fracbvp
