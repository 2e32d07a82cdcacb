#include <array>
#include <cmath>

#include <doctest.h>

#include "toprot/errors.hpp"
#include "toprot/ode.hpp"
#include "toprot/quadrature.hpp"

using namespace toprot;

TEST_CASE("gauss-kronrod on closed-form integrals") {
  CHECK(integrate([](double x) { return std::sin(x); }, 0.0, M_PI).value ==
        doctest::Approx(2.0).epsilon(1e-14));
  CHECK(integrate([](double x) { return std::pow(x, 9); }, 0.0, 1.0).value ==
        doctest::Approx(0.1).epsilon(1e-14));
  // Narrow Lorentzian: forces the adaptive bisection to work.
  const double w = 1e-2;
  const auto peak = integrate(
      [w](double x) { return 1.0 / ((x - 0.3) * (x - 0.3) + w * w); }, 0.0,
      1.0, 1e-12);
  const double exact = (std::atan(0.7 / w) + std::atan(0.3 / w)) / w;
  CHECK(peak.value == doctest::Approx(exact).epsilon(1e-12));
  CHECK(peak.error <= 1e-9);
}

TEST_CASE("gauss-kronrod square-root endpoint") {
  const auto r = integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-12);
  CHECK(r.value == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("dormand-prince endpoint and dense output on the oscillator") {
  auto rhs = [](double, const std::array<double, 2>& y,
                std::array<double, 2>& d) {
    d[0] = y[1];
    d[1] = -y[0];
  };
  DormandPrince54<2> st(rhs, 1e-10, 1e-12);
  st.start(0.0, {1.0, 0.0}, 0.01);
  double worst = 0.0;
  while (st.time() < 20.0) {
    st.step(20.0 - st.time());
    for (double f : {0.1, 0.37, 0.5, 0.83}) {
      const double t = st.step_begin() + f * (st.time() - st.step_begin());
      const auto y = st.interpolate(t);
      worst = std::max(worst, std::abs(y[0] - std::cos(t)));
      worst = std::max(worst, std::abs(y[1] + std::sin(t)));
    }
  }
  CHECK(st.time() == doctest::Approx(20.0).epsilon(1e-15));
  CHECK(worst <= 1e-9);
  CHECK(std::abs(st.state()[0] - std::cos(20.0)) <= 1e-9);
}

TEST_CASE("integrate_adaptive hits stiff-free exponential exactly") {
  auto rhs = [](double, const std::array<double, 1>& y,
                std::array<double, 1>& d) { d[0] = -2.0 * y[0]; };
  std::array<double, 1> y{3.0};
  integrate_adaptive<1>(rhs, y, 0.0, 4.0, 1e-12, 1e-14,
                        [](const DormandPrince54<1>&) { return true; });
  CHECK(y[0] == doctest::Approx(3.0 * std::exp(-8.0)).epsilon(1e-10));
}

TEST_CASE("integrate_adaptive rejects non-positive spans") {
  auto rhs = [](double, const std::array<double, 1>&, std::array<double, 1>& d) {
    d[0] = 1.0;
  };
  std::array<double, 1> y{0.0};
  CHECK_THROWS_AS(
      integrate_adaptive<1>(rhs, y, 1.0, 1.0, 1e-10, 1e-12,
                            [](const DormandPrince54<1>&) { return true; }),
      DomainError);
}
