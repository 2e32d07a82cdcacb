#pragma once

#include <optional>
#include <string>

namespace toprot {

// Rigid asymmetric top described by its rotational constants in cm^-1,
// A = 1/(2*Ix), B = 1/(2*Iy), C = 1/(2*Iz), with the strict ordering
// 0 < A < B < C.  Energies are in cm^-1 and time in 1/cm^-1 (hbar = 1),
// so only dimensionless combinations such as omega*T or 2*E*T/J appear
// in results.
struct Molecule {
  std::string name;
  double A;
  double B;
  double C;

  Molecule(std::string name_, double A_, double B_, double C_);

  // Skips the strict-ordering check (constants must still be positive and
  // finite).  For symmetric-top limits A = B or A = B = C, which the
  // quantum module handles but the classical formulas do not.
  static Molecule unchecked(std::string name, double A, double B, double C);

  static Molecule water();
  static Molecule ethylene();
  static Molecule s4();

  // Lookup by preset name ("water", "ethylene", "s4"); empty if unknown.
  static std::optional<Molecule> preset(const std::string& name);
};

// Labeling direction of the second quantum number / classical definition.
// Oscillating counts up from E = A*J^2 (prolate ladder, p = Ka);
// Rotating counts up from E = C*J^2 (oblate ladder, p = Kc).
enum class Convention { Oscillating, Rotating };

const char* to_string(Convention c);

}  // namespace toprot
