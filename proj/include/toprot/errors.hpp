#pragma once

#include <stdexcept>
#include <string>

namespace toprot {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid numeric input (argument outside the documented domain).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Energy outside the accessible region A*J^2 <= E <= C*J^2.
class OutOfDiagramError : public DomainError {
 public:
  explicit OutOfDiagramError(const std::string& msg) : DomainError(msg) {}
};

// Operation requested on the separatrix, where the motion is not periodic.
class SeparatrixError : public Error {
 public:
  explicit SeparatrixError(const std::string& msg) : Error(msg) {}
};

// Euler-chart breakdown: theta reached 0 or pi during integration.
class SingularityError : public Error {
 public:
  SingularityError(const std::string& msg, double t)
      : Error(msg), time(t) {}
  double time;
};

// Rotating-definition rotation number requested for an oscillating point.
class DefinitionMismatchError : public Error {
 public:
  explicit DefinitionMismatchError(const std::string& msg) : Error(msg) {}
};

// Lattice cell cannot be formed (missing neighbor level).
class UndefinedCellError : public Error {
 public:
  explicit UndefinedCellError(const std::string& msg) : Error(msg) {}
};

// Lattice cell with a vanishing energy denominator.
class DegenerateCellError : public Error {
 public:
  explicit DegenerateCellError(const std::string& msg) : Error(msg) {}
};

// Spectra missing for part of the requested j range.
class IncompleteLatticeError : public Error {
 public:
  explicit IncompleteLatticeError(const std::string& msg) : Error(msg) {}
};

// No root of theta_cl(gamma) = 4*pi on the requested side.
class NoTreDistanceError : public Error {
 public:
  explicit NoTreDistanceError(const std::string& msg) : Error(msg) {}
};

}  // namespace toprot
