#include "toprot/molecule.hpp"

#include <cmath>
#include <sstream>

#include "toprot/errors.hpp"

namespace toprot {

Molecule::Molecule(std::string name_, double A_, double B_, double C_)
    : name(std::move(name_)), A(A_), B(B_), C(C_) {
  if (!(std::isfinite(A) && std::isfinite(B) && std::isfinite(C))) {
    throw DomainError("molecule '" + name + "': non-finite rotational constant");
  }
  if (!(0.0 < A && A < B && B < C)) {
    std::ostringstream os;
    os << "molecule '" << name << "': constants must satisfy 0 < A < B < C, got A="
       << A << " B=" << B << " C=" << C;
    throw DomainError(os.str());
  }
}

Molecule Molecule::unchecked(std::string name, double A, double B, double C) {
  if (!(A > 0.0 && B > 0.0 && C > 0.0) ||
      !(std::isfinite(A) && std::isfinite(B) && std::isfinite(C))) {
    throw DomainError("molecule '" + name + "': constants must be positive and finite");
  }
  Molecule m("placeholder", 1.0, 2.0, 3.0);
  m.name = std::move(name);
  m.A = A;
  m.B = B;
  m.C = C;
  return m;
}

Molecule Molecule::water() { return Molecule("water", 9.3, 14.5, 27.9); }
Molecule Molecule::ethylene() { return Molecule("ethylene", 0.828, 1.001, 4.64); }
Molecule Molecule::s4() { return Molecule("s4", 0.0501, 0.0741, 0.1553); }

std::optional<Molecule> Molecule::preset(const std::string& name) {
  if (name == "water") return water();
  if (name == "ethylene") return ethylene();
  if (name == "s4" || name == "S4") return s4();
  return std::nullopt;
}

const char* to_string(Convention c) {
  return c == Convention::Oscillating ? "oscillating" : "rotating";
}

}  // namespace toprot
