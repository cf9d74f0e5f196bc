#pragma once

#include <stdexcept>
#include <string>

namespace fsm {

/// Base class for all solver errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluation point outside the solution domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Source description violates an admissibility rule (e.g. a Dirac delta
/// handed to the pointwise interpolation path).
class SourceError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature did not reach the requested tolerance.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double achieved)
      : Error(what), achieved_error(achieved) {}
  double achieved_error;
};

/// A mode block of the coefficient-determination system is singular.
class SingularModeError : public Error {
 public:
  SingularModeError(const std::string& what, int m, int n = -1)
      : Error(what), m(m), n(n) {}
  int m;
  int n;
};

/// A boundary or interface system is singular or too ill-conditioned to trust.
class IllPosedError : public Error {
 public:
  IllPosedError(const std::string& what, double condition)
      : Error(what), condition(condition) {}
  double condition;
};

/// Least-squares boundary assembly lost column rank.
class RankError : public Error {
 public:
  RankError(const std::string& what, long rank, long cols)
      : Error(what), rank(rank), cols(cols) {}
  long rank;
  long cols;
};

/// Finite-difference stability precondition violated.
class StabilityError : public Error {
 public:
  StabilityError(const std::string& what, long required_nodes)
      : Error(what), required_nodes(required_nodes) {}
  long required_nodes;
};

}  // namespace fsm
