#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pk {

// Common base so callers (and the integrator's abort path) can catch
// everything thrown by this library in one place.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Parse failure. offset() is the byte offset into the input text.
class SyntaxError : public Error {
  public:
    SyntaxError(const std::string& what, std::size_t offset)
        : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const { return offset_; }

  private:
    std::size_t offset_;
};

// Evaluation left the domain of an elementary function (division by zero,
// ln of a non-positive value, sqrt of a negative value, pow with a
// non-integer exponent and non-positive base). The message names the
// offending subexpression.
class EvalDomainError : public Error {
  public:
    using Error::Error;
};

// Two geometric objects were combined at different base points.
class BasePointMismatch : public Error {
  public:
    using Error::Error;
};

// The plane span{u, v} is degenerate: g(u,u)g(v,v) - g(u,v)^2 ~ 0.
class DegeneratePlane : public Error {
  public:
    using Error::Error;
};

// g(u,u) ~ 0; the J-plane of u carries no sectional curvature.
class IsotropicVector : public Error {
  public:
    using Error::Error;
};

// Hessian determinant of L below the regularity threshold.
class DegenerateLagrangian : public Error {
  public:
    using Error::Error;
};

// y is inside the strip where the para-symplectic coefficient vanishes
// and the Hamiltonian vector field is undefined.
class AxisSingularity : public Error {
  public:
    using Error::Error;
};

// A Runge-Kutta stage evaluation failed; stage() is 1..4.
class StepFailure : public Error {
  public:
    StepFailure(int stage, const std::string& what)
        : Error("rk4 stage " + std::to_string(stage) + ": " + what), stage_(stage) {}

    int stage() const { return stage_; }

  private:
    int stage_;
};

}  // namespace pk
