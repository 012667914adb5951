#pragma once

#include <stdexcept>
#include <string>

namespace cldpt {

/// Parameters outside the validity region of the requested operation.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Evaluation point outside the open domain (or too close to its boundary).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A gamma factor or series coefficient sits on (or within tolerance of) a pole.
class PoleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A series or iteration failed to reach the requested tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Quadrature rule construction failed (eigenvalue iteration did not settle).
class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace cldpt
