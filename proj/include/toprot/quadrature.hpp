#pragma once

#include <cmath>
#include <utility>

#include "toprot/errors.hpp"

namespace toprot {

struct QuadratureResult {
  double value;
  double error;  // accumulated |K15 - G7| estimate
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
inline constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
// Gauss weights for the odd Kronrod nodes (indices 1, 3, 5, 7).
inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class F>
QuadratureResult kronrod15(F&& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double hlen = 0.5 * (b - a);
  const double f_mid = f(mid);
  double gauss = kGaussWeights[3] * f_mid;
  double kron = kKronrodWeights[7] * f_mid;
  for (int i = 0; i < 7; ++i) {
    const double dx = hlen * kKronrodNodes[i];
    const double fsum = f(mid - dx) + f(mid + dx);
    kron += kKronrodWeights[i] * fsum;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * fsum;
  }
  return {kron * hlen, std::abs((kron - gauss) * hlen)};
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod integration of f over [a, b] to the
// requested absolute tolerance, bisecting intervals whose local error
// estimate exceeds their share of the budget.
template <class F>
QuadratureResult integrate(F&& f, double a, double b, double abs_tol = 1e-10,
                           int max_depth = 60) {
  struct Frame {
    double a, b, tol;
    int depth;
  };
  // Explicit stack; worst case max_depth levels of bisection.
  Frame stack[64];
  int top = 0;
  stack[top++] = {a, b, abs_tol, 0};
  double total = 0.0, err = 0.0;
  while (top > 0) {
    const Frame fr = stack[--top];
    const auto est = detail::kronrod15(f, fr.a, fr.b);
    if (est.error <= fr.tol || fr.depth >= max_depth) {
      total += est.value;
      err += est.error;
      continue;
    }
    const double mid = 0.5 * (fr.a + fr.b);
    stack[top++] = {fr.a, mid, 0.5 * fr.tol, fr.depth + 1};
    stack[top++] = {mid, fr.b, 0.5 * fr.tol, fr.depth + 1};
  }
  return {total, err};
}

}  // namespace toprot
