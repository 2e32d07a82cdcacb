#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>

#include "toprot/errors.hpp"

namespace toprot {

// Dormand-Prince 5(4) embedded Runge-Kutta stepper with the standard
// fourth-order dense-output interpolant.  State dimension is a compile
// time constant; the right-hand side is any callable rhs(t, y, dydt).
// FSAL: the last stage of an accepted step seeds the next one.
template <int N>
class DormandPrince54 {
 public:
  using State = std::array<double, N>;
  using Rhs = std::function<void(double, const State&, State&)>;

  DormandPrince54(Rhs rhs, double rel_tol, double abs_tol)
      : rhs_(std::move(rhs)), rtol_(rel_tol), atol_(abs_tol) {}

  void start(double t0, const State& y0, double step_hint) {
    t_ = t0;
    y_ = y0;
    rhs_(t_, y_, k_[0]);
    h_ = step_hint;
  }

  double time() const { return t_; }
  const State& state() const { return y_; }
  double step_begin() const { return t_prev_; }

  // Advance by one accepted step of size at most h_max (> 0); returns the
  // size actually taken.
  double step(double h_max) {
    double h = std::min(h_, h_max);
    for (int attempt = 0; attempt < 200; ++attempt) {
      if (!(h > 0.0) || t_ + h == t_) {
        throw Error("ode: step size underflow at t = " + std::to_string(t_));
      }
      const double err = try_step(h);
      if (err <= 1.0) {
        accept(h);
        const double grow = err == 0.0 ? 5.0 : 0.9 * std::pow(err, -0.2);
        const double h_next = h * std::clamp(grow, 0.2, 5.0);
        // A step clipped to hit the endpoint must not shrink the working size.
        h_ = (h == h_max && h < h_) ? std::max(h_, h_next) : h_next;
        return h;
      }
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
    }
    throw Error("ode: repeated step rejection at t = " + std::to_string(t_));
  }

  // Dense-output polynomial on the last accepted step [step_begin, time].
  State interpolate(double t) const {
    const double th = (t - t_prev_) / h_prev_;
    const double th1 = 1.0 - th;
    State out;
    for (int i = 0; i < N; ++i) {
      out[i] = rc1_[i] +
               th * (rc2_[i] + th1 * (rc3_[i] + th * (rc4_[i] + th1 * rc5_[i])));
    }
    return out;
  }

 private:
  // Butcher tableau (Dormand & Prince 1980), FSAL form.
  static constexpr double a21 = 1.0 / 5.0;
  static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
  static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
  static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                          a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
  static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                          a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                          a65 = -5103.0 / 18656.0;
  static constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0,
                          a74 = 125.0 / 192.0, a75 = -2187.0 / 6784.0,
                          a76 = 11.0 / 84.0;
  static constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0,
                          c5 = 8.0 / 9.0;
  static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0,
                          e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                          e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
  // Dense-output coefficients (Hairer, Norsett & Wanner, DOPRI5).
  static constexpr double d1 = -12715105075.0 / 11282082432.0;
  static constexpr double d3 = 87487479700.0 / 32700410799.0;
  static constexpr double d4 = -10690763975.0 / 1880347072.0;
  static constexpr double d5 = 701980252875.0 / 199316789632.0;
  static constexpr double d6 = -1453857185.0 / 822651844.0;
  static constexpr double d7 = 69997945.0 / 29380423.0;

  // One trial step; fills y_next_ and k_[1..6], returns the scaled error.
  double try_step(double h) {
    State tmp;
    for (int i = 0; i < N; ++i) tmp[i] = y_[i] + h * a21 * k_[0][i];
    rhs_(t_ + c2 * h, tmp, k_[1]);
    for (int i = 0; i < N; ++i)
      tmp[i] = y_[i] + h * (a31 * k_[0][i] + a32 * k_[1][i]);
    rhs_(t_ + c3 * h, tmp, k_[2]);
    for (int i = 0; i < N; ++i)
      tmp[i] = y_[i] + h * (a41 * k_[0][i] + a42 * k_[1][i] + a43 * k_[2][i]);
    rhs_(t_ + c4 * h, tmp, k_[3]);
    for (int i = 0; i < N; ++i)
      tmp[i] = y_[i] + h * (a51 * k_[0][i] + a52 * k_[1][i] + a53 * k_[2][i] +
                            a54 * k_[3][i]);
    rhs_(t_ + c5 * h, tmp, k_[4]);
    for (int i = 0; i < N; ++i)
      tmp[i] = y_[i] + h * (a61 * k_[0][i] + a62 * k_[1][i] + a63 * k_[2][i] +
                            a64 * k_[3][i] + a65 * k_[4][i]);
    rhs_(t_ + h, tmp, k_[5]);
    for (int i = 0; i < N; ++i)
      y_next_[i] = y_[i] + h * (a71 * k_[0][i] + a73 * k_[2][i] + a74 * k_[3][i] +
                                a75 * k_[4][i] + a76 * k_[5][i]);
    rhs_(t_ + h, y_next_, k_[6]);
    double err = 0.0;
    for (int i = 0; i < N; ++i) {
      const double ei = h * (e1 * k_[0][i] + e3 * k_[2][i] + e4 * k_[3][i] +
                             e5 * k_[4][i] + e6 * k_[5][i] + e7 * k_[6][i]);
      const double sc =
          atol_ + rtol_ * std::max(std::abs(y_[i]), std::abs(y_next_[i]));
      err += (ei / sc) * (ei / sc);
    }
    return std::sqrt(err / N);
  }

  void accept(double h) {
    t_prev_ = t_;
    y_prev_ = y_;
    h_prev_ = h;
    for (int i = 0; i < N; ++i) {
      const double ydiff = y_next_[i] - y_[i];
      const double bspl = h * k_[0][i] - ydiff;
      rc1_[i] = y_[i];
      rc2_[i] = ydiff;
      rc3_[i] = bspl;
      rc4_[i] = ydiff - h * k_[6][i] - bspl;
      rc5_[i] = h * (d1 * k_[0][i] + d3 * k_[2][i] + d4 * k_[3][i] +
                     d5 * k_[4][i] + d6 * k_[5][i] + d7 * k_[6][i]);
    }
    t_ += h;
    y_ = y_next_;
    k_[0] = k_[6];  // FSAL
  }

  Rhs rhs_;
  double rtol_, atol_;
  double t_ = 0.0, h_ = 0.0;
  double t_prev_ = 0.0, h_prev_ = 0.0;
  State y_{}, y_prev_{}, y_next_{};
  std::array<State, 7> k_{};
  State rc1_{}, rc2_{}, rc3_{}, rc4_{}, rc5_{};
};

// Integrate y' = rhs(t, y) from t0 to t1, invoking observer(stepper) after
// every accepted step; the observer may return false to stop early.
template <int N, class Obs>
void integrate_adaptive(typename DormandPrince54<N>::Rhs rhs,
                        typename DormandPrince54<N>::State& y, double t0,
                        double t1, double rel_tol, double abs_tol, Obs&& obs) {
  DormandPrince54<N> stepper(std::move(rhs), rel_tol, abs_tol);
  const double span = t1 - t0;
  if (!(span > 0.0)) throw DomainError("ode: integration span must be positive");
  stepper.start(t0, y, 1e-4 * span);
  std::size_t steps = 0;
  while (stepper.time() < t1) {
    stepper.step(t1 - stepper.time());
    if (!obs(stepper)) break;
    if (++steps > 50'000'000) throw Error("ode: step budget exhausted");
  }
  y = stepper.state();
}

}  // namespace toprot
