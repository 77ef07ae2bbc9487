#pragma once

#include <stdexcept>
#include <string>

namespace aitlab {

/// Coarse error class, used by the CLI to pick an exit code.
enum class ErrorCategory { Spec, Numerical, Io };

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}
  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

/// An operator spec breaks one of the OP axioms. `axiom()` names it ("OP3-b", "OP4", ...).
class SpecViolation : public Error {
 public:
  SpecViolation(std::string axiom, const std::string& detail);
  const std::string& axiom() const noexcept { return axiom_; }

 private:
  std::string axiom_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(ErrorCategory::Spec, what) {}
};

/// Y is not in the admissible parameter space of the operator.
class InvalidWindow : public Error {
 public:
  explicit InvalidWindow(const std::string& what) : Error(ErrorCategory::Spec, what) {}
};

/// q must lie in (0,1) or (1,inf).
class InvalidQ : public Error {
 public:
  explicit InvalidQ(const std::string& what) : Error(ErrorCategory::Spec, what) {}
};

/// A resolvent evaluation point is within min_gap of the spectrum.
class NearSingular : public Error {
 public:
  NearSingular(const std::string& what, double distance)
      : Error(ErrorCategory::Numerical, what), distance_(distance) {}
  double distance() const noexcept { return distance_; }

 private:
  double distance_;
};

class Singular : public Error {
 public:
  explicit Singular(const std::string& what) : Error(ErrorCategory::Numerical, what) {}
};

/// Adaptive quadrature hit its node cap. Carries the best residual reached.
class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what, double best_residual, int nodes_per_side)
      : Error(ErrorCategory::Numerical, what),
        best_residual_(best_residual),
        nodes_per_side_(nodes_per_side) {}
  double best_residual() const noexcept { return best_residual_; }
  int nodes_per_side() const noexcept { return nodes_per_side_; }

 private:
  double best_residual_;
  int nodes_per_side_;
};

class InvalidProjection : public Error {
 public:
  InvalidProjection(const std::string& what, double residual)
      : Error(ErrorCategory::Numerical, what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Wraps an error raised inside a named pipeline stage, keeping its category.
class StageError : public Error {
 public:
  StageError(std::string stage, const Error& cause)
      : Error(cause.category(), stage + ": " + cause.what()), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCategory::Io, what) {}
};

}  // namespace aitlab
