#include "toprot/rotnum_classical.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "toprot/errors.hpp"
#include "toprot/quadrature.hpp"
#include "toprot/specfun.hpp"

namespace toprot {

namespace {

double sqrt_clamped(double x) { return std::sqrt(std::max(x, 0.0)); }

// Composite trapezoid with interval doubling; exact workhorse for smooth
// periodic integrands over one period.
template <class F>
double periodic_quadrature(F&& f, double period, double tol) {
  std::size_t n = 64;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += f(period * double(i) / double(n));
  double value = sum * period / double(n);
  for (int pass = 0; pass < 16; ++pass) {
    double extra = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      extra += f(period * (double(i) + 0.5) / double(n));
    const double refined = 0.5 * value + extra * period / double(2 * n);
    n *= 2;
    const bool done = std::abs(refined - value) <= tol * std::max(1.0, std::abs(refined));
    value = refined;
    if (done) return value;
  }
  return value;
}

}  // namespace

double cos_theta_sq(const Molecule& mol, double E, double J, double psi) {
  const double cp = std::cos(psi);
  const double sp = std::sin(psi);
  const double f = mol.A * cp * cp + mol.B * sp * sp;
  return (E / (J * J) - f) / (mol.C - f);
}

double geometric_area(const Molecule& mol, const ClassicalPoint& pt) {
  if (pt.regime == Regime::Separatrix) {
    throw SeparatrixError("geometric_area: undefined on the separatrix");
  }
  constexpr double kTol = 1e-10;
  if (pt.regime == Regime::Rotating) {
    auto f = [&](double psi) {
      return sqrt_clamped(cos_theta_sq(mol, pt.E, pt.J, psi));
    };
    return integrate(f, 0.0, 2.0 * M_PI, kTol).value;
  }
  // Oscillating: the loop around the +x pole spans the arc
  // [pi - psi0, pi + psi0]; cos(theta) vanishes like a square root at both
  // turning points, so substitute psi = lo + (hi-lo)*sin^2(s).
  const double e2 = pt.E / (pt.J * pt.J);
  const double psi0 =
      std::acos(std::sqrt(std::clamp((mol.B - e2) / (mol.B - mol.A), 0.0, 1.0)));
  const double lo = M_PI - psi0;
  const double len = 2.0 * psi0;
  auto g = [&](double s) {
    const double sn = std::sin(s);
    const double psi = lo + len * sn * sn;
    return sqrt_clamped(cos_theta_sq(mol, pt.E, pt.J, psi)) * len *
           std::sin(2.0 * s);
  };
  return 2.0 * integrate(g, 0.0, M_PI / 2.0, kTol).value;
}

RotationNumberResult theta_cl(const Molecule& mol, const ClassicalPoint& pt,
                              Convention definition) {
  if (pt.regime == Regime::Separatrix) {
    throw SeparatrixError("theta_cl: diverges on the separatrix");
  }
  if (definition == Convention::Rotating && pt.regime != Regime::Rotating) {
    throw DefinitionMismatchError(
        "theta_cl: rotating definition requested for an oscillating point");
  }
  const double T = period(pt);
  const double area = geometric_area(mol, pt);
  RotationNumberResult r;
  r.definition = definition;
  r.dynamical_part = 2.0 * pt.E * T / pt.J;
  // The rotating definition measures the area around the z-pole,
  // A_R = A - 2*pi, which fixes theta^(R) = theta^(O) + 2*pi.
  r.geometric_part =
      definition == Convention::Oscillating ? -area : 2.0 * M_PI - area;
  r.theta_cl = r.dynamical_part + r.geometric_part;
  return r;
}

AsymptoteCoefficients separatrix_asymptote(const Molecule& mol) {
  const double beta =
      2.0 * mol.B / std::sqrt((mol.C - mol.B) * (mol.B - mol.A));
  const double alpha =
      -4.0 * std::asin(std::sqrt((mol.B - mol.A) / (mol.C - mol.A))) +
      2.0 * beta *
          (std::log(4.0) -
           0.5 * std::log(mol.B * (mol.C - mol.A) /
                          ((mol.C - mol.B) * (mol.B - mol.A))));
  return {alpha, beta};
}

double tre_distance(const Molecule& mol, Convention side) {
  const auto [alpha, beta] = separatrix_asymptote(mol);
  const double sign = side == Convention::Oscillating ? -1.0 : 1.0;
  // Physical side bound, slightly inset from the diagram edge.
  const double side_max =
      std::min(0.5, 0.999 * (side == Convention::Oscillating
                                 ? (mol.B - mol.A) / mol.B
                                 : (mol.C - mol.B) / mol.B));
  auto resid = [&](double g) {
    return theta_cl(mol, classify(mol, mol.B * (1.0 + sign * g), 1.0),
                    Convention::Oscillating)
               .theta_cl -
           4.0 * M_PI;
  };
  // Seed the bracket from the asymptote inversion; theta_cl decreases
  // with |gamma|, so expand until the residual changes sign.
  const double g0 =
      std::clamp(std::exp((alpha - 4.0 * M_PI) / beta), 1e-7, 0.5 * side_max);
  double lo = std::max(g0 / 4.0, 1e-8);
  double hi = std::min(g0 * 4.0, side_max);
  for (int i = 0; i < 60 && resid(lo) < 0.0; ++i) lo = std::max(lo / 4.0, 1e-8);
  for (int i = 0; i < 60 && resid(hi) > 0.0 && hi < side_max; ++i)
    hi = std::min(hi * 4.0, side_max);
  double flo = resid(lo), fhi = resid(hi);
  if (!(flo > 0.0 && fhi < 0.0)) {
    std::ostringstream os;
    os << "tre_distance: no 4*pi crossing in (1e-8, " << side_max
       << ") on the " << to_string(side) << " side of " << mol.name;
    throw NoTreDistanceError(os.str());
  }
  for (int i = 0; i < 200 && hi - lo > 1e-13 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (resid(mid) > 0.0 ? lo : hi) = mid;
  }
  return sign * 0.5 * (lo + hi);
}

double second_action(const Molecule& mol, const ClassicalPoint& pt) {
  if (pt.regime == Regime::Separatrix) {
    throw SeparatrixError("second_action: undefined on the separatrix");
  }
  const double J2 = pt.J * pt.J;
  const double T = period(pt);
  // K dalpha_K reduces to 2*Jz^2*(C*J^2-E)/(J^2-Jz^2) dt, a smooth
  // periodic integrand (the denominator stays away from zero strictly
  // inside the diagram).
  auto f = [&](double t) {
    const auto Jb = angular_momentum_trajectory(pt, mol, t);
    const double z2 = Jb.Jz * Jb.Jz;
    return 2.0 * z2 * (mol.C * J2 - pt.E) / (J2 - z2);
  };
  return periodic_quadrature(f, T, 1e-11) / (2.0 * M_PI);
}

}  // namespace toprot
