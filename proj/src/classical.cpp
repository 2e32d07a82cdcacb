#include "toprot/classical.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "toprot/errors.hpp"
#include "toprot/ode.hpp"
#include "toprot/specfun.hpp"

namespace toprot {

namespace {

constexpr double kThetaPoleTol = 1e-8;

using State3 = std::array<double, 3>;  // (theta, phi, psi)

State3 angle_rhs(const Molecule& mol, double J, const State3& y) {
  const double st = std::sin(y[0]);
  const double ct = std::cos(y[0]);
  const double sp = std::sin(y[2]);
  const double cp = std::cos(y[2]);
  const double f = mol.B * sp * sp + mol.A * cp * cp;
  return {2.0 * J * (mol.B - mol.A) * st * sp * cp, 2.0 * J * f,
          2.0 * J * (mol.C - f) * ct};
}

void check_theta(double theta, double t) {
  if (std::sin(theta) < kThetaPoleTol) {
    std::ostringstream os;
    os << "euler-angle chart singular: theta = " << theta << " at t = " << t;
    throw SingularityError(os.str(), t);
  }
}

}  // namespace

const char* to_string(Regime r) {
  switch (r) {
    case Regime::Oscillating: return "oscillating";
    case Regime::Rotating: return "rotating";
    default: return "separatrix";
  }
}

ClassicalPoint classify(const Molecule& mol, double E, double J) {
  if (!std::isfinite(J) || J <= 0.0) {
    throw DomainError("classify: J must be positive and finite");
  }
  if (!std::isfinite(E)) throw DomainError("classify: non-finite energy");
  const double J2 = J * J;
  if (E < mol.A * J2 || E > mol.C * J2) {
    std::ostringstream os;
    os << "classify: E = " << E << " outside the accessible region ["
       << mol.A * J2 << ", " << mol.C * J2 << "] for J = " << J;
    throw OutOfDiagramError(os.str());
  }
  ClassicalPoint pt;
  pt.E = E;
  pt.J = J;
  pt.gamma = E / (mol.B * J2) - 1.0;
  if (std::abs(pt.gamma) < kSeparatrixTol) {
    pt.regime = Regime::Separatrix;
    pt.m = 1.0;
    pt.omega = 2.0 * std::sqrt((mol.C - mol.B) * (E - mol.A * J2));
    return pt;
  }
  if (pt.gamma > 0.0) {
    pt.regime = Regime::Rotating;
    pt.m = (mol.B - mol.A) * (mol.C * J2 - E) /
           ((mol.C - mol.B) * (E - mol.A * J2));
    pt.omega = 2.0 * std::sqrt((mol.C - mol.B) * (E - mol.A * J2));
  } else {
    pt.regime = Regime::Oscillating;
    pt.m = (mol.C - mol.B) * (E - mol.A * J2) /
           ((mol.B - mol.A) * (mol.C * J2 - E));
    pt.omega = 2.0 * std::sqrt((mol.B - mol.A) * (mol.C * J2 - E));
  }
  pt.m = std::clamp(pt.m, 0.0, 1.0);
  return pt;
}

BodyMomentum angular_momentum_trajectory(const ClassicalPoint& pt,
                                         const Molecule& mol, double t,
                                         double rho) {
  if (pt.regime == Regime::Separatrix) {
    throw SeparatrixError(
        "angular_momentum_trajectory: no periodic solution on the separatrix");
  }
  const double J2 = pt.J * pt.J;
  const double chi = pt.omega * t + rho;
  const auto [sn, cn, dn] = jacobi_elliptic(chi, pt.m);
  if (pt.regime == Regime::Rotating) {
    return {-std::sqrt((mol.C * J2 - pt.E) / (mol.C - mol.A)) * cn,
            std::sqrt((mol.C * J2 - pt.E) / (mol.C - mol.B)) * sn,
            std::sqrt((pt.E - mol.A * J2) / (mol.C - mol.A)) * dn};
  }
  return {std::sqrt((mol.C * J2 - pt.E) / (mol.C - mol.A)) * dn,
          -std::sqrt((pt.E - mol.A * J2) / (mol.B - mol.A)) * sn,
          std::sqrt((pt.E - mol.A * J2) / (mol.C - mol.A)) * cn};
}

double period(const ClassicalPoint& pt) {
  if (pt.regime == Regime::Separatrix) {
    throw SeparatrixError("period: diverges on the separatrix");
  }
  return 4.0 * complete_elliptic_K(pt.m) / pt.omega;
}

EulerRates euler_rates(const Molecule& mol, double J, double theta,
                       double psi) {
  const auto d = angle_rhs(mol, J, {theta, 0.0, psi});
  return {d[0], d[1], d[2]};
}

double energy_from_angles(const Molecule& mol, double J, double theta,
                          double psi) {
  const double st = std::sin(theta);
  const double ct = std::cos(theta);
  const double sp = std::sin(psi);
  const double cp = std::cos(psi);
  const double f = mol.B * sp * sp + mol.A * cp * cp;
  return J * J * (f * st * st + mol.C * ct * ct);
}

EulerState make_euler_state(double J, double theta, double phi, double psi) {
  const double st = std::sin(theta);
  return {theta, phi, psi, -J * st * std::cos(psi), J * st * std::sin(psi),
          J * std::cos(theta)};
}

EulerState make_euler_state(double J, const BodyMomentum& Jb, double phi) {
  const double st = std::hypot(Jb.Jx, Jb.Jy) / J;
  if (st <= 0.0) {
    throw SingularityError("make_euler_state: momentum along the body z-axis", 0.0);
  }
  const double theta = std::atan2(st * J, Jb.Jz);
  const double psi = std::atan2(Jb.Jy, -Jb.Jx);
  return {theta, phi, psi, Jb.Jx, Jb.Jy, Jb.Jz};
}

EulerTrajectory integrate_euler_angles(const Molecule& mol, double J,
                                       const EulerState& initial,
                                       double duration, double tol) {
  if (!(tol > 0.0)) throw DomainError("integrate_euler_angles: tol must be > 0");
  check_theta(initial.theta, 0.0);
  State3 y{initial.theta, initial.phi, initial.psi};
  EulerTrajectory out;
  out.samples.push_back({0.0, initial});
  auto rhs = [&mol, J](double, const State3& s, State3& dydt) {
    dydt = angle_rhs(mol, J, s);
  };
  integrate_adaptive<3>(
      rhs, y, 0.0, duration, tol, tol * 1e-2,
      [&](const DormandPrince54<3>& st) {
        check_theta(st.state()[0], st.time());
        out.samples.push_back(
            {st.time(), make_euler_state(J, st.state()[0], st.state()[1],
                                         st.state()[2])});
        return true;
      });
  out.delta_phi = y[1] - initial.phi;
  out.delta_psi = y[2] - initial.psi;
  return out;
}

double delta_phi_one_period(const Molecule& mol, const ClassicalPoint& pt,
                            double rho) {
  const double T = period(pt);
  const auto Jb = angular_momentum_trajectory(pt, mol, 0.0, rho);
  const EulerState start = make_euler_state(pt.J, Jb, 0.0);
  State3 y{start.theta, start.phi, start.psi};
  auto rhs = [&mol, J = pt.J](double, const State3& s, State3& dydt) {
    dydt = angle_rhs(mol, J, s);
  };
  integrate_adaptive<3>(rhs, y, 0.0, T, 1e-12, 1e-13,
                        [](const DormandPrince54<3>&) { return true; });
  return y[1] - start.phi;
}

double simulate_tre(const Molecule& mol, double J, double gamma) {
  if (!std::isfinite(J) || J <= 0.0) {
    throw DomainError("simulate_tre: J must be positive and finite");
  }
  const double gamma_min = (mol.A - mol.B) / mol.B;
  if (gamma < gamma_min || gamma > 0.0) {
    std::ostringstream os;
    os << "simulate_tre: the theta(0) = pi/2 start requires A*J^2 <= E <= "
          "B*J^2, i.e. gamma in ["
       << gamma_min << ", 0]; got " << gamma;
    throw DomainError(os.str());
  }
  if (std::abs(gamma) < kSeparatrixTol) {
    throw SeparatrixError("simulate_tre: gamma on the separatrix band");
  }
  const double E = mol.B * J * J * (1.0 + gamma);
  const double psi0 = std::acos(std::sqrt(
      std::clamp((mol.B - E / (J * J)) / (mol.B - mol.A), 0.0, 1.0)));
  const State3 start{M_PI / 2.0, 0.0, psi0};
  const double phi_target = 2.0 * M_PI;  // phi is strictly increasing

  State3 y = start;
  auto rhs = [&mol, J](double, const State3& s, State3& dydt) {
    dydt = angle_rhs(mol, J, s);
  };
  DormandPrince54<3> stepper(rhs, 1e-12, 1e-13);
  // Generous horizon: phi advances at least at rate 2*J*A.
  const double t_max = 2.0 * phi_target / (2.0 * J * mol.A) + 1.0 / (J * mol.A);
  stepper.start(0.0, y, 1e-6 * t_max);
  while (true) {
    stepper.step(t_max - stepper.time());
    check_theta(stepper.state()[0], stepper.time());
    if (stepper.state()[1] >= phi_target) break;
    if (stepper.time() >= t_max) {
      throw Error("simulate_tre: phi target not reached inside the horizon");
    }
  }
  // phi is monotone; bisect the dense output for the crossing time.
  double lo = stepper.step_begin();
  double hi = stepper.time();
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (stepper.interpolate(mid)[1] < phi_target ? lo : hi) = mid;
  }
  const double psi_end = stepper.interpolate(0.5 * (lo + hi))[2];
  return std::abs(psi_end - psi0);
}

Momenta momenta_from_angles(const Molecule& mol, const EulerState& state,
                            const EulerRates& rates) {
  const double st = std::sin(state.theta);
  const double ct = std::cos(state.theta);
  if (st == 0.0) {
    throw SingularityError("momenta_from_angles: sin(theta) = 0", 0.0);
  }
  const double sp = std::sin(state.psi);
  const double cp = std::cos(state.psi);
  // Body-frame angular velocity, then J_i = Omega_i / (2 * constant).
  const double ox = -rates.phi_dot * st * cp + rates.theta_dot * sp;
  const double oy = rates.phi_dot * st * sp + rates.theta_dot * cp;
  const double oz = rates.phi_dot * ct + rates.psi_dot;
  const double jx = ox / (2.0 * mol.A);
  const double jy = oy / (2.0 * mol.B);
  const double jz = oz / (2.0 * mol.C);
  return {jx * sp + jy * cp, (-jx * cp + jy * sp) * st + jz * ct, jz};
}

}  // namespace toprot
