#pragma once

#include <stdexcept>
#include <string>

namespace wpk {

// Invalid argument outside a function's domain (bad alpha, |x| > 1, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Evaluation at a pole of a meromorphic function.
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

// Iterative procedure hit its cap before meeting the tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Boundary data lacks the derivative that was asked for.
class MissingDerivativeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Malformed file content.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace wpk
