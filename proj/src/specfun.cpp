#include "toprot/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "toprot/errors.hpp"

namespace toprot {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();

[[noreturn]] void bad_parameter(const char* fn, double m) {
  std::ostringstream os;
  os << fn << ": parameter m = " << m << " outside the valid range";
  throw DomainError(os.str());
}
}  // namespace

double complete_elliptic_K(double m) {
  if (!std::isfinite(m) || m < 0.0 || m >= 1.0) bad_parameter("complete_elliptic_K", m);
  double a = 1.0;
  double b = std::sqrt(1.0 - m);
  // Quadratic convergence: |a-b| squares each pass, so 40 iterations is
  // far beyond what any representable m < 1 needs.
  for (int i = 0; i < 40 && std::abs(a - b) > 4.0 * kEps * a; ++i) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return M_PI / (2.0 * a);
}

JacobiValues jacobi_elliptic(double u, double m) {
  if (!std::isfinite(u)) {
    std::ostringstream os;
    os << "jacobi_elliptic: non-finite argument u = " << u;
    throw DomainError(os.str());
  }
  if (!std::isfinite(m) || m < 0.0 || m > 1.0) bad_parameter("jacobi_elliptic", m);
  if (m == 0.0) return {std::sin(u), std::cos(u), 1.0};
  if (m == 1.0) {
    const double sech = 1.0 / std::cosh(u);
    return {std::tanh(u), sech, sech};
  }
  // Within an ulp of the separatrix value the periodic forms are
  // meaningless; the caller has to branch to the m = 1 limit explicitly.
  if (1.0 - m <= 2.0 * kEps) bad_parameter("jacobi_elliptic", m);

  // Descending Landen transformation on the AGM scale (ascending means,
  // then backward recursion of the amplitude).
  constexpr int kDepth = 16;
  double a[kDepth + 1], c[kDepth + 1];
  a[0] = 1.0;
  c[0] = std::sqrt(m);
  double b = std::sqrt(1.0 - m);
  int n = 0;
  while (n < kDepth && std::abs(c[n]) > kEps * a[n]) {
    a[n + 1] = 0.5 * (a[n] + b);
    c[n + 1] = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
  }
  double phi = std::ldexp(a[n] * u, n);
  for (int i = n; i >= 1; --i) {
    const double s = std::clamp(c[i] / a[i] * std::sin(phi), -1.0, 1.0);
    phi = 0.5 * (phi + std::asin(s));
  }
  const double sn = std::sin(phi);
  const double cn = std::cos(phi);
  // 1 - m*sn^2 rewritten as (1-m) + m*cn^2: both terms nonnegative, so dn
  // stays accurate at the cn = 0 quarter periods (the amplitude-ratio
  // form cos(phi0)/cos(phi1-phi0) is 0/0 there).
  const double dn = std::sqrt((1.0 - m) + m * cn * cn);
  return {sn, cn, dn};
}

}  // namespace toprot
