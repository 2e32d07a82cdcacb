#pragma once

#include <vector>

#include "toprot/molecule.hpp"

namespace toprot {

enum class Regime { Oscillating, Rotating, Separatrix };

const char* to_string(Regime r);

// Point of the energy-momentum diagram with its derived trajectory data:
// signed separatrix distance gamma (E = B*J^2*(1+gamma)), elliptic
// parameter m and angular frequency omega of the regime's analytic
// solution.
struct ClassicalPoint {
  double E;
  double J;
  double gamma;
  Regime regime;
  double m;
  double omega;
};

// Body-frame angular momentum components.
struct BodyMomentum {
  double Jx;
  double Jy;
  double Jz;
};

// Euler angles (z-x-z convention of the free rotor) plus the redundant
// body-frame momentum components; both representations are kept
// consistent, Jx = -J sin(theta) cos(psi), Jy = J sin(theta) sin(psi),
// Jz = J cos(theta).
struct EulerState {
  double theta;
  double phi;
  double psi;
  double Jx;
  double Jy;
  double Jz;
};

struct EulerRates {
  double theta_dot;
  double phi_dot;
  double psi_dot;
};

struct Momenta {
  double p_theta;
  double p_phi;
  double p_psi;
};

// Band half-width for classifying a point as sitting on the separatrix.
inline constexpr double kSeparatrixTol = 1e-12;

ClassicalPoint classify(const Molecule& mol, double E, double J);

// Analytic free-rotor solution at chi = omega*t + rho.  The oscillating
// branch carries Jy = -g*sn rather than the +sn form one usually sees in
// tables: with +sn the triple solves the time-reversed Euler equations.
BodyMomentum angular_momentum_trajectory(const ClassicalPoint& pt,
                                         const Molecule& mol, double t,
                                         double rho = 0.0);

// Period of the angular-momentum loop, T = 4K(m)/omega.
double period(const ClassicalPoint& pt);

// Right-hand side of the Euler-angle flow at fixed |J|.
EulerRates euler_rates(const Molecule& mol, double J, double theta, double psi);

// Energy A*Jx^2 + B*Jy^2 + C*Jz^2 expressed through the angles.
double energy_from_angles(const Molecule& mol, double J, double theta,
                          double psi);

// Builds a consistent EulerState from angles.
EulerState make_euler_state(double J, double theta, double phi, double psi);

// Builds a consistent EulerState from a momentum direction (requires
// sin(theta) > 0) and a precession angle.
EulerState make_euler_state(double J, const BodyMomentum& Jb, double phi);

struct TrajectorySample {
  double t;
  EulerState state;
};

struct EulerTrajectory {
  std::vector<TrajectorySample> samples;  // one per accepted step
  double delta_phi;                       // unwrapped phi(t1) - phi(t0)
  double delta_psi;                       // unwrapped psi(t1) - psi(t0)
};

// Adaptive integration of the three-angle flow over [0, duration] with
// per-step relative tolerance tol.  phi and psi are accumulated as
// continuous variables (never reduced mod 2*pi).  Throws
// SingularityError if theta comes within 1e-8 of the chart poles.
EulerTrajectory integrate_euler_angles(const Molecule& mol, double J,
                                       const EulerState& initial,
                                       double duration, double tol);

// Unwrapped variation of phi over exactly one period of the angular
// momentum, starting from the analytic solution's point chi = rho.  This
// is the flow-based route to the classical rotation number.
double delta_phi_one_period(const Molecule& mol, const ClassicalPoint& pt,
                            double rho = 0.0);

// Tennis-racket protocol: start at theta = pi/2 (momentum in the body
// x-y plane, which requires A*J^2 <= E <= B*J^2), integrate until the
// unwrapped precession |delta phi| reaches 2*pi, and report |delta psi|.
double simulate_tre(const Molecule& mol, double J, double gamma);

// Conjugate momenta (p_theta, p_phi, p_psi) from angles and angle rates,
// through the body-frame angular velocity.  Requires sin(theta) != 0.
Momenta momenta_from_angles(const Molecule& mol, const EulerState& state,
                            const EulerRates& rates);

}  // namespace toprot
