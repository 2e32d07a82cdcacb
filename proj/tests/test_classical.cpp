#include "toprot/classical.hpp"

#include <array>
#include <cmath>
#include <random>

#include <doctest.h>

#include "oracles.hpp"
#include "toprot/errors.hpp"
#include "toprot/ode.hpp"
#include "toprot/specfun.hpp"

using namespace toprot;

namespace {

const Molecule kWater = Molecule::water();

ClassicalPoint water_point(double gamma, double J = 1.0) {
  return classify(kWater, kWater.B * J * J * (1.0 + gamma), J);
}

// Reference integration of the momentum-space Euler equations
// dJ/dt = J x Omega, independent of the angle-flow machinery.
std::array<double, 3> integrate_momentum_ode(const Molecule& mol,
                                             const std::array<double, 3>& j0,
                                             double t1) {
  auto rhs = [&mol](double, const std::array<double, 3>& j,
                    std::array<double, 3>& d) {
    d[0] = 2.0 * j[1] * j[2] * (mol.C - mol.B);
    d[1] = -2.0 * j[0] * j[2] * (mol.C - mol.A);
    d[2] = 2.0 * j[0] * j[1] * (mol.B - mol.A);
  };
  auto y = j0;
  integrate_adaptive<3>(rhs, y, 0.0, t1, 1e-12, 1e-14,
                        [](const DormandPrince54<3>&) { return true; });
  return y;
}

}  // namespace

TEST_CASE("classify separatrix and boundary points") {
  const auto sep = water_point(0.0, 2.0);
  CHECK(sep.regime == Regime::Separatrix);
  CHECK(sep.gamma == doctest::Approx(0.0).epsilon(1e-14));

  const auto top = classify(kWater, kWater.C, 1.0);
  CHECK(top.regime == Regime::Rotating);
  CHECK(top.m == doctest::Approx(0.0).epsilon(1e-14));

  const auto bottom = classify(kWater, kWater.A, 1.0);
  CHECK(bottom.regime == Regime::Oscillating);
  CHECK(bottom.m == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("classify matches a direct evaluation of the trajectory formulas") {
  const double A = kWater.A, B = kWater.B, C = kWater.C;
  const double E = B * 1.05;
  const auto pt = classify(kWater, E, 1.0);
  CHECK(pt.regime == Regime::Rotating);
  CHECK(pt.gamma == doctest::Approx(0.05).epsilon(1e-13));
  CHECK(pt.m ==
        doctest::Approx((B - A) * (C - E) / ((C - B) * (E - A))).epsilon(1e-14));
  CHECK(pt.omega ==
        doctest::Approx(2.0 * std::sqrt((C - B) * (E - A))).epsilon(1e-14));

  const double Eo = B * 0.95;
  const auto po = classify(kWater, Eo, 1.0);
  CHECK(po.regime == Regime::Oscillating);
  CHECK(po.m ==
        doctest::Approx((C - B) * (Eo - A) / ((B - A) * (C - Eo))).epsilon(1e-14));
  CHECK(po.omega ==
        doctest::Approx(2.0 * std::sqrt((B - A) * (C - Eo))).epsilon(1e-14));
}

TEST_CASE("classify rejects bad input") {
  CHECK_THROWS_AS(classify(kWater, 2.0 * kWater.C, 1.0), OutOfDiagramError);
  CHECK_THROWS_AS(classify(kWater, 0.5 * kWater.A, 1.0), OutOfDiagramError);
  CHECK_THROWS_AS(classify(kWater, kWater.B, 0.0), DomainError);
  CHECK_THROWS_AS(classify(kWater, kWater.B, -2.0), DomainError);
}

TEST_CASE("analytic trajectory at chi = 0, rotating") {
  const auto pt = water_point(0.05);
  const auto j = angular_momentum_trajectory(pt, kWater, 0.0);
  const double C = kWater.C, A = kWater.A, E = pt.E;
  CHECK(j.Jx == doctest::Approx(-std::sqrt((C - E) / (C - A))).epsilon(1e-14));
  CHECK(j.Jy == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(j.Jz == doctest::Approx(std::sqrt((E - A) / (C - A))).epsilon(1e-14));
}

TEST_CASE("analytic trajectory conserves energy and norm") {
  for (double gamma : {0.34, 0.05, -0.05, -0.31}) {
    const auto pt = water_point(gamma, 2.0);
    for (double t = 0.0; t < 1.0; t += 0.137) {
      const auto j = angular_momentum_trajectory(pt, kWater, t, 0.4);
      const double E = kWater.A * j.Jx * j.Jx + kWater.B * j.Jy * j.Jy +
                       kWater.C * j.Jz * j.Jz;
      const double n2 = j.Jx * j.Jx + j.Jy * j.Jy + j.Jz * j.Jz;
      CHECK(std::abs(E - pt.E) / pt.E <= 1e-9);
      CHECK(std::abs(n2 - pt.J * pt.J) / (pt.J * pt.J) <= 1e-9);
    }
  }
}

TEST_CASE("analytic trajectory satisfies the Euler equations pointwise") {
  // Five-point central differences in t against the quadratic right-hand
  // sides, both regimes.
  for (double gamma : {0.08, -0.12}) {
    const auto pt = water_point(gamma);
    const double dt = 1e-4;
    for (double t : {0.1, 0.31, 0.77}) {
      auto at = [&](double tt) {
        return angular_momentum_trajectory(pt, kWater, tt);
      };
      const auto jm2 = at(t - 2 * dt), jm1 = at(t - dt), jp1 = at(t + dt),
                 jp2 = at(t + 2 * dt);
      const auto j = at(t);
      const double dJx =
          (-jp2.Jx + 8 * jp1.Jx - 8 * jm1.Jx + jm2.Jx) / (12 * dt);
      const double dJy =
          (-jp2.Jy + 8 * jp1.Jy - 8 * jm1.Jy + jm2.Jy) / (12 * dt);
      const double dJz =
          (-jp2.Jz + 8 * jp1.Jz - 8 * jm1.Jz + jm2.Jz) / (12 * dt);
      CHECK(std::abs(dJx - 2.0 * j.Jy * j.Jz * (kWater.C - kWater.B)) <= 1e-8);
      CHECK(std::abs(dJy + 2.0 * j.Jx * j.Jz * (kWater.C - kWater.A)) <= 1e-8);
      CHECK(std::abs(dJz - 2.0 * j.Jx * j.Jy * (kWater.B - kWater.A)) <= 1e-8);
    }
  }
}

TEST_CASE("analytic trajectory matches the momentum ODE") {
  for (double gamma : {0.05, -0.05}) {
    const auto pt = water_point(gamma);
    const auto j0 = angular_momentum_trajectory(pt, kWater, 0.0);
    const auto jt = integrate_momentum_ode(kWater, {j0.Jx, j0.Jy, j0.Jz}, 0.37);
    const auto ja = angular_momentum_trajectory(pt, kWater, 0.37);
    CHECK(std::abs(jt[0] - ja.Jx) <= 1e-7);
    CHECK(std::abs(jt[1] - ja.Jy) <= 1e-7);
    CHECK(std::abs(jt[2] - ja.Jz) <= 1e-7);
  }
}

TEST_CASE("period: harmonic limits and separatrix error") {
  // Both diagram edges have m = 0, where the motion is pure precession.
  const auto top = classify(kWater, kWater.C, 1.0);
  CHECK(period(top) * top.omega == doctest::Approx(2.0 * M_PI).epsilon(1e-15));
  const auto bottom = classify(kWater, kWater.A, 1.0);
  CHECK(period(bottom) * bottom.omega ==
        doctest::Approx(2.0 * M_PI).epsilon(1e-15));
  CHECK_THROWS_AS(period(water_point(0.0)), SeparatrixError);
  CHECK_THROWS_AS(angular_momentum_trajectory(water_point(0.0), kWater, 0.1),
                  SeparatrixError);
}

TEST_CASE("period equals the ODE first-return time") {
  const auto pt = water_point(0.05);
  const double T = period(pt);
  const auto j0 = angular_momentum_trajectory(pt, kWater, 0.0);
  // Jy starts at 0 ascending; locate the next ascending zero.
  auto rhs = [&](double, const std::array<double, 3>& j,
                 std::array<double, 3>& d) {
    d[0] = 2.0 * j[1] * j[2] * (kWater.C - kWater.B);
    d[1] = -2.0 * j[0] * j[2] * (kWater.C - kWater.A);
    d[2] = 2.0 * j[0] * j[1] * (kWater.B - kWater.A);
  };
  DormandPrince54<3> stepper(rhs, 1e-12, 1e-14);
  stepper.start(0.0, {j0.Jx, j0.Jy, j0.Jz}, 1e-4 * T);
  double t_return = -1.0;
  double prev_jy = 0.0;
  while (stepper.time() < 2.0 * T) {
    stepper.step(2.0 * T - stepper.time());
    const double jy = stepper.state()[1];
    if (stepper.step_begin() > 0.5 * T && prev_jy < 0.0 && jy >= 0.0) {
      double lo = stepper.step_begin(), hi = stepper.time();
      for (int i = 0; i < 100; ++i) {
        const double mid = 0.5 * (lo + hi);
        (stepper.interpolate(mid)[1] < 0.0 ? lo : hi) = mid;
      }
      t_return = 0.5 * (lo + hi);
      break;
    }
    prev_jy = jy;
  }
  REQUIRE(t_return > 0.0);
  CHECK(std::abs(t_return - T) / T <= 1e-8);
}

TEST_CASE("period grows logarithmically toward the separatrix") {
  // Decade steps in gamma add equal increments to T when T ~ -ln|gamma|.
  const double t2 = period(water_point(1e-2));
  const double t3 = period(water_point(1e-3));
  const double t4 = period(water_point(1e-4));
  const double d1 = t3 - t2, d2 = t4 - t3;
  CHECK(std::abs(d2 / d1 - 1.0) <= 0.05);
}

TEST_CASE("euler angle flow: stable x-rotation is a fixed point of (theta, psi)") {
  const double J = 1.3;
  const auto start = make_euler_state(J, M_PI / 2.0, 0.0, 0.0);
  CHECK(energy_from_angles(kWater, J, start.theta, start.psi) ==
        doctest::Approx(kWater.A * J * J).epsilon(1e-14));
  const auto rates = euler_rates(kWater, J, start.theta, start.psi);
  CHECK(std::abs(rates.theta_dot) <= 1e-14);
  CHECK(std::abs(rates.psi_dot) <= 1e-14);
  CHECK(rates.phi_dot == doctest::Approx(2.0 * J * kWater.A).epsilon(1e-15));

  const auto traj = integrate_euler_angles(kWater, J, start, 0.5, 1e-10);
  CHECK(std::abs(traj.delta_psi) <= 1e-10);
  CHECK(traj.samples.back().state.theta ==
        doctest::Approx(M_PI / 2).epsilon(1e-12));
  CHECK(traj.delta_phi == doctest::Approx(2.0 * J * kWater.A * 0.5).epsilon(1e-10));
}

TEST_CASE("euler angle flow reproduces the analytic momentum over a period") {
  const auto pt = water_point(0.05);
  const double T = period(pt);
  const auto start =
      make_euler_state(pt.J, angular_momentum_trajectory(pt, kWater, 0.0), 0.0);
  for (double frac : {0.3, 0.7, 1.0}) {
    auto traj = integrate_euler_angles(kWater, pt.J, start, frac * T, 1e-12);
    const auto& s = traj.samples.back().state;
    const auto ja = angular_momentum_trajectory(pt, kWater, frac * T);
    CHECK(std::abs(s.Jx - ja.Jx) <= 1e-6);
    CHECK(std::abs(s.Jy - ja.Jy) <= 1e-6);
    CHECK(std::abs(s.Jz - ja.Jz) <= 1e-6);
  }
}

TEST_CASE("euler angle flow conserves energy over ten periods") {
  for (double gamma : {0.2, -0.2}) {
    const auto pt = water_point(gamma);
    const auto start = make_euler_state(
        pt.J, angular_momentum_trajectory(pt, kWater, 0.0), 0.0);
    const double E0 = energy_from_angles(kWater, pt.J, start.theta, start.psi);
    const auto traj =
        integrate_euler_angles(kWater, pt.J, start, 10.0 * period(pt), 1e-10);
    double worst = 0.0;
    for (const auto& s : traj.samples) {
      const double E =
          energy_from_angles(kWater, pt.J, s.state.theta, s.state.psi);
      worst = std::max(worst, std::abs(E - E0) / E0);
    }
    CHECK(worst <= 1e-8);
  }
}

TEST_CASE("delta_phi_one_period is independent of the starting phase") {
  const auto pt = water_point(-0.07);
  double lo = 1e300, hi = -1e300;
  for (int k = 0; k < 8; ++k) {
    const double v = delta_phi_one_period(kWater, pt, 0.77 * k);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(hi - lo <= 1e-6);
}

TEST_CASE("delta_phi_one_period depends on E/J^2 only") {
  const double g = 0.11;
  const double a = delta_phi_one_period(kWater, water_point(g, 1.0));
  const double b = delta_phi_one_period(kWater, water_point(g, 2.0));
  CHECK(std::abs(a - b) <= 1e-8);
}

TEST_CASE("delta_phi_one_period near the tennis-racket distance") {
  // Regression values; 4*pi is reached only at the exact distance gamma*
  // (|gamma*| ~ 0.057-0.061 for water), so at |gamma| = 0.05 the winding
  // sits a few tenths of a radian above it.
  const double plus = delta_phi_one_period(kWater, water_point(0.05));
  const double minus = delta_phi_one_period(kWater, water_point(-0.05));
  CHECK(plus == doctest::Approx(13.2410801814).epsilon(1e-8));
  CHECK(minus == doctest::Approx(13.0073988180).epsilon(1e-8));
  CHECK(std::abs(plus - 4.0 * M_PI) < 0.7);
  CHECK(std::abs(minus - 4.0 * M_PI) < 0.7);
}

TEST_CASE("simulate_tre") {
  SUBCASE("near the separatrix the flip angle approaches its 2*psi0 bound") {
    const double got = simulate_tre(kWater, 1.0, -0.05);
    CHECK(got == doctest::Approx(2.372996).epsilon(2e-5));
    const double psi0 =
        std::acos(std::sqrt(0.05 * kWater.B / (kWater.B - kWater.A)));
    CHECK(got <= 2.0 * psi0 + 1e-9);
  }
  SUBCASE("far from the separatrix there is no flip") {
    CHECK(simulate_tre(kWater, 1.0, -0.3) ==
          doctest::Approx(0.0145356).epsilon(2e-4));
  }
  SUBCASE("stable x-rotation limit: pure precession, no flip") {
    const double gamma_bottom = (kWater.A - kWater.B) / kWater.B;
    CHECK(simulate_tre(kWater, 1.0, gamma_bottom) <= 1e-9);
  }
  SUBCASE("rotating side is out of the protocol's reach") {
    CHECK_THROWS_AS(simulate_tre(kWater, 1.0, 0.05), DomainError);
    CHECK_THROWS_AS(simulate_tre(kWater, 1.0, 0.0), SeparatrixError);
  }
}

TEST_CASE("integration from the chart pole is rejected with the time") {
  const auto start = make_euler_state(1.0, 1e-9, 0.0, 0.3);
  try {
    integrate_euler_angles(kWater, 1.0, start, 1.0, 1e-10);
    FAIL("expected SingularityError");
  } catch (const SingularityError& e) {
    CHECK(e.time == 0.0);
  }
}

TEST_CASE("momenta from angles") {
  SUBCASE("p_psi equals Jz, zero at theta = pi/2") {
    const double J = 2.0;
    const auto st = make_euler_state(J, M_PI / 2, 0.3, 0.0);
    const auto rates = euler_rates(kWater, J, st.theta, st.psi);
    const auto m = momenta_from_angles(kWater, st, rates);
    CHECK(m.p_psi == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(m.p_psi == doctest::Approx(st.Jz).epsilon(1e-14));
  }
  SUBCASE("J^2 identity on random on-shell states") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
      const double J = 0.5 + 3.0 * u(rng);
      const double theta = 0.2 + (M_PI - 0.4) * u(rng);
      const double psi = 2.0 * M_PI * u(rng);
      const auto st = make_euler_state(J, theta, 2.0 * M_PI * u(rng), psi);
      const auto rates = euler_rates(kWater, J, theta, psi);
      const auto m = momenta_from_angles(kWater, st, rates);
      const double ct = std::cos(theta), stn = std::sin(theta);
      const double lhs = m.p_theta * m.p_theta +
                         std::pow((m.p_phi - m.p_psi * ct) / stn, 2) +
                         m.p_psi * m.p_psi;
      CHECK(std::abs(lhs - J * J) / (J * J) <= 1e-10);
    }
  }
  SUBCASE("p_phi is conserved along a trajectory") {
    const auto pt = water_point(-0.15);
    const auto start = make_euler_state(
        pt.J, angular_momentum_trajectory(pt, kWater, 0.0), 0.0);
    const auto traj =
        integrate_euler_angles(kWater, pt.J, start, period(pt), 1e-11);
    for (const auto& s : traj.samples) {
      const auto rates = euler_rates(kWater, pt.J, s.state.theta, s.state.psi);
      const auto m = momenta_from_angles(kWater, s.state, rates);
      CHECK(std::abs(m.p_phi - pt.J) <= 1e-8);
    }
  }
  SUBCASE("chart pole is rejected") {
    const EulerState at_pole{0.0, 0.0, 0.0, 0.0, 0.0, 1.0};
    CHECK_THROWS_AS(momenta_from_angles(kWater, at_pole, {0.0, 0.0, 0.0}),
                    SingularityError);
  }
}

TEST_CASE("molecule validation") {
  CHECK_THROWS_AS(Molecule("bad", 5.0, 4.0, 6.0), DomainError);
  CHECK_THROWS_AS(Molecule("bad", -1.0, 2.0, 3.0), DomainError);
  CHECK_THROWS_AS(Molecule("bad", 1.0, 1.0, 3.0), DomainError);
  CHECK(Molecule::preset("ethylene").has_value());
  CHECK(!Molecule::preset("helium").has_value());
}
