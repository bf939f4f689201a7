#include <doctest.h>

#include <cmath>
#include <random>

#include "warped/spacetime.hpp"

using namespace warped;

namespace {

// Independent root check: plain bisection on the direct lapse.
double bisect_lapse_root(const SpacetimeParams& p, double lo, double hi) {
  double flo = lapse_squared(p, lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = lapse_squared(p, mid);
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("classification is an exact zero test") {
  CHECK(classify({1.0, 0.25, 0.04}) == Family::RNAdS);
  CHECK(classify({1.0, 0.0, 0.0}) == Family::Schw);
  CHECK(classify({1.0, 1.0, 0.0}) == Family::RN);
  CHECK(classify({1.0, 0.0, 0.04}) == Family::SchwAdS);
  // Tiny but nonzero values stay in the generic family.
  CHECK(classify({1.0, 1e-300, 1e-300}) == Family::RNAdS);
}

TEST_CASE("family names round-trip") {
  for (const Family f :
       {Family::RNAdS, Family::SchwAdS, Family::RN, Family::Schw})
    CHECK(family_from_string(to_string(f)) == f);
  CHECK(!family_from_string("Kerr").has_value());
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(SpacetimeParams::create(0.0, 0.0, 0.0), SchemeInapplicable);
  CHECK_THROWS_AS(SpacetimeParams::create(-1.0, 0.0, 0.0), SchemeInapplicable);
  CHECK_THROWS_AS(SpacetimeParams::create(1.0, -0.1, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(SpacetimeParams::create(1.0, 0.0, -0.1),
                  std::invalid_argument);
  CHECK_NOTHROW(SpacetimeParams::create(1.0, 0.0, 0.0));
}

TEST_CASE("direct lapse values") {
  const SpacetimeParams rn{1.25, 1.0, 0.0};
  CHECK(lapse_squared(rn, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(lapse_squared(rn, 2.0) == doctest::Approx(0.0).epsilon(1e-15));
  const SpacetimeParams schw{1.0, 0.0, 0.0};
  CHECK(lapse_squared(schw, 2.0) == 0.0);
  CHECK_THROWS_AS(lapse_squared(schw, 0.0), DomainError);
  CHECK_THROWS_AS(lapse_squared(schw, -1.0), DomainError);
}

TEST_CASE("factored lapse matches the direct form") {
  const SpacetimeParams rn{1.25, 1.0, 0.0};
  const HorizonData h = solve_horizons(rn);
  CHECK(lapse_squared_factored(rn, h, 1.0) ==
        doctest::Approx(0.5).epsilon(1e-13));

  const SpacetimeParams schw{1.0, 0.0, 0.0};
  const HorizonData hs = solve_horizons(schw);
  CHECK(lapse_squared_factored(schw, hs, 1.0) ==
        doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(lapse_squared_factored(rn, h, h.r_plus), DomainError);
  CHECK_THROWS_AS(lapse_squared_factored(rn, h, h.r_minus), DomainError);
}

TEST_CASE("factored lapse agreement across random interior points") {
  std::mt19937_64 gen(42);
  const auto u01 = [&] { return (gen() >> 11) * 0x1.0p-53; };
  const SpacetimeParams sets[] = {{1.25, 1.0, 0.0},
                                  {1.0, 0.25, 0.04},
                                  {1.0, 0.0, 0.04},
                                  {1.0, 0.0, 0.0},
                                  {2.0, 1.5, 0.02}};
  for (const auto& p : sets) {
    const HorizonData h = solve_horizons(p);
    for (int k = 0; k < 200; ++k) {
      const double r = h.r_minus + (1e-6 + (1.0 - 2e-6) * u01()) * h.gap;
      const double direct = lapse_squared(p, r);
      const double fact = lapse_squared_factored(p, h, r);
      CHECK(std::abs(direct - fact) <= 1e-12 * std::max(1.0, std::abs(direct)));
    }
  }
}

TEST_CASE("flat charged horizons use the closed form") {
  const HorizonData h = solve_horizons({1.25, 1.0, 0.0});
  CHECK(h.r_minus == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(h.r_plus == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(h.gap == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(h.extremality_margin == doctest::Approx(0.36).epsilon(1e-12));

  // Independent oracle: bisection on the direct lapse.
  const SpacetimeParams p{1.25, 1.0, 0.0};
  CHECK(bisect_lapse_root(p, 1.25, 3.0) ==
        doctest::Approx(h.r_plus).epsilon(1e-13));
  CHECK(bisect_lapse_root(p, 0.01, 1.25) ==
        doctest::Approx(h.r_minus).epsilon(1e-13));
}

TEST_CASE("degenerate and missing horizons are reported") {
  CHECK_THROWS_AS(solve_horizons({1.0, 1.0, 0.0}), ExtremalConfiguration);
  CHECK_THROWS_AS(solve_horizons({1.0, 1.5, 0.0}), NakedSingularity);
  // Strong curvature pushes r^2 N^2 below zero everywhere.
  CHECK_THROWS_AS(solve_horizons({1.0, 0.6, 5.0}), NakedSingularity);
  SpacetimeParams bad;
  bad.mass = -2.0;
  CHECK_THROWS_AS(solve_horizons(bad), SchemeInapplicable);
}

TEST_CASE("uncharged families have a vanishing inner horizon") {
  const HorizonData schw = solve_horizons({1.0, 0.0, 0.0});
  CHECK(schw.r_minus == 0.0);
  CHECK(schw.r_plus == 2.0);
  CHECK(schw.extremality_margin == doctest::Approx(1.0));

  const HorizonData sads = solve_horizons({1.0, 0.0, 0.04});
  CHECK(sads.r_minus == 0.0);
  CHECK(sads.r_plus == doctest::Approx(1.7759472879411508).epsilon(1e-12));
  CHECK(std::abs(lapse_squared({1.0, 0.0, 0.04}, sads.r_plus)) < 1e-12);
}

TEST_CASE("generic quartic horizons satisfy the lapse to 1e-12") {
  const SpacetimeParams p{1.0, 0.25, 0.04};
  const HorizonData h = solve_horizons(p);
  CHECK(h.r_minus == doctest::Approx(0.13398203817931631).epsilon(1e-12));
  CHECK(h.r_plus == doctest::Approx(1.6651767881356144).epsilon(1e-12));
  CHECK(std::abs(lapse_squared(p, h.r_plus)) < 1e-12);
  CHECK(std::abs(lapse_squared(p, h.r_minus)) < 1e-12);
  CHECK(h.extremality_margin ==
        doctest::Approx(0.7152043530140978).epsilon(1e-10));
  // Interior positivity at the midpoint.
  CHECK(lapse_squared(p, 0.5 * (h.r_minus + h.r_plus)) > 0.0);
}

TEST_CASE("horizon inversion reproduces the parameters") {
  const HorizonInversion a = params_from_horizons(1.8, 0.2, 1.0);
  CHECK(a.charge_sq == doctest::Approx(0.36).epsilon(1e-14));
  CHECK(a.ads_curvature == 0.0);

  const HorizonInversion b = params_from_horizons(2.0, 0.5, 1.25);
  CHECK(b.charge_sq == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(b.ads_curvature == 0.0);

  CHECK_THROWS_AS(params_from_horizons(2.0, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(params_from_horizons(0.5, 2.0, 1.0), DomainError);
  // 2m < r_plus + r_minus would need lambda < 0.
  CHECK_THROWS_AS(params_from_horizons(2.0, 0.5, 1.0), InconsistentHorizons);
}

TEST_CASE("solve/invert round-trip over random nonextremal draws") {
  std::mt19937_64 gen(7);
  const auto u01 = [&] { return (gen() >> 11) * 0x1.0p-53; };
  int accepted = 0;
  while (accepted < 50) {
    const double m = 0.5 + 1.5 * u01();
    const double q2 = m * m * (1e-3 + 0.95 * u01());
    const double lam = (1e-4 + 0.15 * u01()) / (m * m);
    const SpacetimeParams p{m, q2, lam};
    HorizonData h;
    try {
      h = solve_horizons(p);
    } catch (const GeometryError&) {
      continue;
    }
    ++accepted;
    const HorizonInversion inv = params_from_horizons(h.r_plus, h.r_minus, m);
    CHECK(std::abs(inv.charge_sq - q2) / q2 < 1e-10);
    CHECK(std::abs(inv.ads_curvature - lam) / lam < 1e-10);
  }
}

TEST_CASE("flat-limit round-trip snaps lambda to zero") {
  const SpacetimeParams p{1.25, 1.0, 0.0};
  const HorizonData h = solve_horizons(p);
  const HorizonInversion inv = params_from_horizons(h.r_plus, h.r_minus, p.mass);
  CHECK(inv.ads_curvature == 0.0);
  CHECK(std::abs(inv.charge_sq - 1.0) < 1e-12);
}

TEST_CASE("AdS roots degenerate to the flat closed form as lambda -> 0") {
  const double m = 1.25;
  const double q2 = 1.0;
  const double rp_rn = m + std::sqrt(m * m - q2);
  const double rm_rn = m - std::sqrt(m * m - q2);
  double prev = 1.0;
  for (const double lam : {1e-6, 1e-8}) {
    const HorizonData h = solve_horizons({m, q2, lam});
    const double err = std::max(std::abs(h.r_plus - rp_rn) / rp_rn,
                                std::abs(h.r_minus - rm_rn) / rm_rn);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 1e-6);
}
