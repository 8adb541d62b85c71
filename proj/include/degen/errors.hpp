#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace degen {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// ---- expression language ----

/// Malformed expression text. `offset` is the byte position of the problem.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, const std::string& msg)
      : Error("syntax error at byte " + std::to_string(offset) + ": " + msg),
        offset(offset) {}
  std::size_t offset;
};

/// Identifier that is neither an allowed variable, a named constant, nor a builtin.
class UnknownIdentifierError : public Error {
 public:
  UnknownIdentifierError(std::string name, std::size_t offset)
      : Error("unknown identifier '" + name + "' at byte " + std::to_string(offset)),
        name(std::move(name)), offset(offset) {}
  std::string name;
  std::size_t offset;
};

/// Builtin function called with the wrong number of arguments.
class ArityError : public Error {
 public:
  ArityError(std::string name, std::size_t offset, std::size_t count)
      : Error("function '" + name + "' takes 1 argument, got " + std::to_string(count) +
              " at byte " + std::to_string(offset)),
        name(std::move(name)), offset(offset), count(count) {}
  std::string name;
  std::size_t offset;
  std::size_t count;
};

/// Variable referenced during evaluation without a binding.
class UnboundVariableError : public Error {
 public:
  explicit UnboundVariableError(const std::string& name)
      : Error("unbound variable '" + name + "'") {}
};

/// `abs` reached under derivative (dual) evaluation; it has no complex derivative.
class NonAnalyticNodeError : public Error {
 public:
  NonAnalyticNodeError() : Error("abs() is not differentiable under dual evaluation") {}
};

// ---- numerics ----

/// Quadrature failed to settle within the allowed number of refinements.
class NoConvergenceError : public Error {
 public:
  explicit NoConvergenceError(const std::string& msg) : Error(msg) {}
};

/// |cos(phi)| below the guard threshold; the coordinate transform degenerates.
class NearSingularAngleError : public Error {
 public:
  explicit NearSingularAngleError(double phi)
      : Error("angle too close to singular: cos(phi) ~ 0 for phi = " + std::to_string(phi)) {}
};

/// Inverse coordinates do not correspond to a real event.
class NonRealEventError : public Error {
 public:
  explicit NonRealEventError(double residue)
      : Error("coordinates map to a complex event (imaginary residue " +
              std::to_string(residue) + ")") {}
};

/// Matrix is singular or too ill-conditioned to invert reliably.
class SingularMatrixError : public Error {
 public:
  explicit SingularMatrixError(const std::string& msg) : Error(msg) {}
};

// ---- physics-layer preconditions ----

/// Generator set failed validation (non-real values, bad parameters).
class InvalidGeneratorError : public Error {
 public:
  explicit InvalidGeneratorError(const std::string& msg) : Error(msg) {}
};

/// The pairing bilinear vanished; direction extraction is undefined.
class DegeneracyConditionViolatedError : public Error {
 public:
  explicit DegeneracyConditionViolatedError(const std::string& msg) : Error(msg) {}
};

/// Zero spinor where a nonzero one is required.
class ZeroSpinorError : public Error {
 public:
  ZeroSpinorError() : Error("spinor is zero; ratio of bilinears undefined") {}
};

/// A bilinear that must be real came out with a significant imaginary part.
class NonRealSpinError : public Error {
 public:
  explicit NonRealSpinError(double im)
      : Error("spin bilinear has imaginary part " + std::to_string(im)) {}
};

/// The closed-form spin expressions hold for real wave numbers only.
class ComplexKUnsupportedError : public Error {
 public:
  ComplexKUnsupportedError() : Error("closed-form spin requires real k") {}
};

/// Both residuals sit at the roundoff floor; no meaningful convergence order.
class BelowNoiseFloorError : public Error {
 public:
  explicit BelowNoiseFloorError(double r1, double r2)
      : Error("residuals " + std::to_string(r1) + ", " + std::to_string(r2) +
              " are below the noise floor; convergence order undefined") {}
};

// ---- configuration ----

/// Structurally invalid run configuration.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

}  // namespace degen
