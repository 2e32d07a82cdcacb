#pragma once

#include "toprot/classical.hpp"
#include "toprot/molecule.hpp"

namespace toprot {

// Rotation number split into its dynamical and geometric contributions,
// theta_cl = 2*E*T/J + geometric_part, where the geometric part is the
// (signed) solid angle -A for the oscillating definition and 2*pi - A
// for the rotating one.
struct RotationNumberResult {
  double theta_cl;
  double dynamical_part;
  double geometric_part;
  Convention definition;
};

struct AsymptoteCoefficients {
  double alpha;
  double beta;
};

// cos^2(theta) as a function of psi on the energy shell E, J.  Negative
// values flag psi outside the trajectory's accessible range.
double cos_theta_sq(const Molecule& mol, double E, double J, double psi);

// Solid angle between the momentum loop and the equator.  Rotating:
// integral of cos(theta(psi)) over a full psi turn.  Oscillating: twice
// the integral over the accessible arc around psi = pi, whose square-root
// turning points are removed by a sin^2 substitution.
double geometric_area(const Molecule& mol, const ClassicalPoint& pt);

// Montgomery-phase rotation number.  The oscillating definition is valid
// in both regimes (continuous extension across the separatrix); the
// rotating definition only above it, and equals the oscillating value
// plus 2*pi.
RotationNumberResult theta_cl(const Molecule& mol, const ClassicalPoint& pt,
                              Convention definition);

// Coefficients of the near-separatrix approximation
// theta_cl ~ alpha - beta * ln|gamma|.
AsymptoteCoefficients separatrix_asymptote(const Molecule& mol);

// Signed distance gamma* at which theta_cl (oscillating definition)
// equals 4*pi on the requested side of the separatrix, located by
// bracketed root finding on the exact rotation number; the asymptote
// inversion only seeds the bracket.
double tre_distance(const Molecule& mol, Convention side);

// Second action (1/2pi) * loop integral of K d(alpha_K) along one
// momentum loop, evaluated as a time quadrature of the analytic solution.
// Satisfies dI = -(theta_cl/2pi) dJ + (T/2pi) dE.
double second_action(const Molecule& mol, const ClassicalPoint& pt);

}  // namespace toprot
