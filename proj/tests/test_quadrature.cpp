#include <doctest.h>

#include <cmath>
#include <numbers>

#include "warped/quadrature.hpp"
#include "warped/roots.hpp"

using warped::integrate_adaptive;

TEST_CASE("kronrod and gauss weights sum to the interval length") {
  using Rule = warped::detail::GaussKronrod15<double>;
  double wk = Rule::wgk[7];
  double wg = Rule::wg[3];
  for (int j = 0; j < 7; ++j) {
    wk += 2.0 * Rule::wgk[j];
    if (j % 2 == 1) wg += 2.0 * Rule::wg[j / 2];
  }
  CHECK(wk == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(wg == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("single panel is exact for high-degree polynomials") {
  // The 15-point Kronrod rule integrates degree <= 22 exactly.
  const auto f = [](double x) {
    double p = 1.0;
    for (int k = 0; k < 10; ++k) p *= x;
    return p; // x^10
  };
  const auto res = integrate_adaptive<double>(f, 0.0, 1.0, 1e-14, 1e-15);
  CHECK(res.value == doctest::Approx(1.0 / 11.0).epsilon(1e-15));
}

TEST_CASE("adaptive integration matches known integrals") {
  const auto sin_res = integrate_adaptive<double>(
      [](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 1e-12,
      1e-14);
  CHECK(sin_res.converged);
  CHECK(sin_res.value == doctest::Approx(2.0).epsilon(1e-13));

  const auto exp_res = integrate_adaptive<double>(
      [](double x) { return std::exp(x); }, 0.0, 1.0, 1e-12, 1e-14);
  CHECK(exp_res.value ==
        doctest::Approx(std::numbers::e - 1.0).epsilon(1e-13));

  // Oscillatory integrand forcing subdivision.
  const auto osc = integrate_adaptive<double>(
      [](double x) { return std::cos(40.0 * x); }, 0.0, 1.0, 1e-12, 1e-14);
  CHECK(osc.panels > 1);
  CHECK(osc.value == doctest::Approx(std::sin(40.0) / 40.0).epsilon(1e-11));
}

TEST_CASE("orientation flips the sign") {
  const auto fwd = integrate_adaptive<double>(
      [](double x) { return x * x; }, 0.0, 2.0, 1e-12, 1e-14);
  const auto rev = integrate_adaptive<double>(
      [](double x) { return x * x; }, 2.0, 0.0, 1e-12, 1e-14);
  CHECK(fwd.value == doctest::Approx(8.0 / 3.0).epsilon(1e-14));
  CHECK(rev.value == doctest::Approx(-8.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("empty interval integrates to zero") {
  const auto res = integrate_adaptive<double>(
      [](double x) { return std::exp(x); }, 1.5, 1.5, 1e-12, 1e-14);
  CHECK(res.value == 0.0);
  CHECK(res.panels == 0);
}

TEST_CASE("newton_bisect finds bracketed roots") {
  const auto f = [](double x) { return x * x * x - 2.0; };
  const auto df = [](double x) { return 3.0 * x * x; };
  const double root = warped::newton_bisect<double>(f, df, 0.0, 2.0, 1.0,
                                                    0.0, 1e-15);
  CHECK(root == doctest::Approx(std::cbrt(2.0)).epsilon(1e-14));
}

TEST_CASE("newton_bisect survives a hostile derivative") {
  // Derivative callback returns zero, forcing pure bisection.
  const auto f = [](double x) { return std::cos(x); };
  const auto df = [](double) { return 0.0; };
  const double root = warped::newton_bisect<double>(f, df, 0.0, 3.0, 0.1,
                                                    0.0, 1e-13);
  CHECK(root == doctest::Approx(std::numbers::pi / 2.0).epsilon(1e-11));
}

TEST_CASE("newton_bisect rejects a non-bracketing interval") {
  const auto f = [](double x) { return x * x + 1.0; };
  const auto df = [](double x) { return 2.0 * x; };
  CHECK_THROWS_AS(warped::newton_bisect<double>(f, df, 0.0, 1.0, 0.5, 0.0,
                                                1e-15),
                  std::runtime_error);
}
