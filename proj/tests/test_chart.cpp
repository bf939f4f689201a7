#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include "support/oracles.hpp"
#include "warped/chart.hpp"
#include "warped/serialize.hpp"

using namespace warped;

namespace {

// Reference chart values computed with an independent high-precision
// integrator (midpoint split + sqrt endpoint substitution + Simpson, and
// cross-checked against a 40-digit arbitrary-precision evaluation).
constexpr double kSchwAdSRPlus = 1.7759472879411508;
constexpr double kSchwAdSMuMax = 2.4499076018980006;
constexpr double kSchwAdSMuHalf = 0.46669614110351790; // at r = r_plus/2
constexpr double kRNAdSRMinus = 0.13398203817931631;
constexpr double kRNAdSRPlus = 1.6651767881356144;
constexpr double kRNAdSMuMax = 2.5042639636759815;
constexpr double kRNAdSMuAtOne = 0.71055327971073032; // at r = 1

long double oracle_mu(const SpacetimeParams& p, double r_lo, double r) {
  return testsupport::integrate_sqrt_endpoints(
      [&](long double x) {
        const long double n2 = -1.0L + 2.0L * p.mass / x -
                               p.charge_sq / (x * x) -
                               p.ads_curvature * x * x;
        return 1.0L / std::sqrt(n2);
      },
      r_lo, r);
}

} // namespace

TEST_CASE("flat charged chart hits the closed-form boundary values") {
  const SpacetimeParams p{1.25, 1.0, 0.0};
  const MuChart chart = build_chart(p);
  const HorizonData& h = chart.horizons();

  CHECK(chart.mu_at(h.r_minus) == 0.0);
  CHECK(chart.mu_at(h.r_plus) == chart.mu_max());
  CHECK(chart.mu_max() ==
        doctest::Approx(1.25 * std::numbers::pi).epsilon(1e-10));
  CHECK(chart.mu_at(1.25) ==
        doctest::Approx(1.2134954084936208).epsilon(1e-10));
}

TEST_CASE("closed-form chart: values and derivative origin") {
  // arccos(sqrt(1/2)) = pi/4 makes this value exact by hand.
  CHECK(rn_mu_analytic(1.25, 2.0, 0.5, 1.25) ==
        doctest::Approx(2.5 * std::numbers::pi / 4.0 - 0.75).epsilon(1e-15));
  CHECK(rn_mu_analytic(1.25, 2.0, 0.5, 0.5) == 0.0);
  CHECK(rn_mu_analytic(1.25, 2.0, 0.5, 2.0) ==
        doctest::Approx(1.25 * std::numbers::pi).epsilon(1e-15));
  CHECK_THROWS_AS(rn_mu_analytic(1.25, 2.0, 0.5, 0.4), DomainError);
  CHECK_THROWS_AS(rn_mu_analytic(1.25, 2.0, 0.5, 2.1), DomainError);
}

TEST_CASE("quadrature agrees with the closed form across the interval") {
  const MuChart chart = build_chart({1.25, 1.0, 0.0});
  const HorizonData& h = chart.horizons();
  double worst = 0.0;
  for (int k = 0; k <= 256; ++k) {
    const double r = h.r_minus + k * h.gap / 256.0;
    worst = std::max(worst, std::abs(chart.mu_at(r) - rn_mu_analytic(
                                                          1.25, h.r_plus,
                                                          h.r_minus, r)));
  }
  CHECK(worst <= 10.0 * chart.quad_tol());
}

TEST_CASE("the un-square-rooted variant shares only the endpoints") {
  const MuChart chart = build_chart({1.25, 1.0, 0.0});
  const HorizonData& h = chart.horizons();
  CHECK(rn_mu_analytic_uncorrected(1.25, h.r_plus, h.r_minus, h.r_minus) ==
        0.0);
  CHECK(rn_mu_analytic_uncorrected(1.25, h.r_plus, h.r_minus, h.r_plus) ==
        doctest::Approx(1.25 * std::numbers::pi).epsilon(1e-15));
  double worst = 0.0;
  for (int k = 0; k <= 256; ++k) {
    const double r = h.r_minus + k * h.gap / 256.0;
    worst = std::max(
        worst, std::abs(chart.mu_at(r) - rn_mu_analytic_uncorrected(
                                             1.25, h.r_plus, h.r_minus, r)));
  }
  CHECK(worst >= 1e-3); // fails to track the quadrature in between
}

TEST_CASE("uncharged flat chart: mu_max = m pi and oracle agreement") {
  const SpacetimeParams p{1.0, 0.0, 0.0};
  const MuChart chart = build_chart(p);
  CHECK(chart.mu_max() == doctest::Approx(std::numbers::pi).epsilon(1e-10));
  // r_minus = 0 reading of the closed form covers this family too.
  for (const double r : {0.3, 1.0, 1.7}) {
    CHECK(chart.mu_at(r) ==
          doctest::Approx(rn_mu_analytic(1.0, 2.0, 0.0, r)).epsilon(1e-10));
    CHECK(chart.mu_at(r) ==
          doctest::Approx(static_cast<double>(oracle_mu(p, 0.0, r)))
              .epsilon(1e-10));
  }
}

TEST_CASE("uncharged AdS chart matches the frozen oracle values") {
  const SpacetimeParams p{1.0, 0.0, 0.04};
  const MuChart chart = build_chart(p);
  CHECK(chart.horizons().r_plus ==
        doctest::Approx(kSchwAdSRPlus).epsilon(1e-12));
  CHECK(chart.mu_max() == doctest::Approx(kSchwAdSMuMax).epsilon(1e-11));
  CHECK(chart.mu_at(kSchwAdSRPlus / 2.0) ==
        doctest::Approx(kSchwAdSMuHalf).epsilon(1e-11));
  CHECK(chart.mu_at(1.2) ==
        doctest::Approx(static_cast<double>(oracle_mu(p, 0.0, 1.2)))
            .epsilon(1e-11));
}

TEST_CASE("charged AdS chart matches the frozen oracle values") {
  const SpacetimeParams p{1.0, 0.25, 0.04};
  const MuChart chart = build_chart(p);
  CHECK(chart.horizons().r_minus ==
        doctest::Approx(kRNAdSRMinus).epsilon(1e-12));
  CHECK(chart.horizons().r_plus == doctest::Approx(kRNAdSRPlus).epsilon(1e-12));
  CHECK(chart.mu_max() == doctest::Approx(kRNAdSMuMax).epsilon(1e-11));
  CHECK(chart.mu_at(1.0) == doctest::Approx(kRNAdSMuAtOne).epsilon(1e-11));
}

TEST_CASE("chart is strictly monotone") {
  const MuChart chart = build_chart({1.0, 0.25, 0.04});
  const HorizonData& h = chart.horizons();
  const auto& table = chart.table();
  for (std::size_t k = 1; k < table.size(); ++k) {
    CHECK(table[k].r > table[k - 1].r);
    CHECK(table[k].mu > table[k - 1].mu);
  }
  std::mt19937_64 gen(3);
  const auto u01 = [&] { return (gen() >> 11) * 0x1.0p-53; };
  for (int k = 0; k < 300; ++k) {
    double r1 = h.r_minus + u01() * h.gap;
    double r2 = h.r_minus + u01() * h.gap;
    if (std::abs(r1 - r2) < 1e-9 * h.gap) continue;
    if (r1 > r2) std::swap(r1, r2);
    CHECK(chart.mu_at(r1) < chart.mu_at(r2));
  }
}

TEST_CASE("dF/dr equals 1/N in the interior") {
  for (const SpacetimeParams& p :
       {SpacetimeParams{1.25, 1.0, 0.0}, SpacetimeParams{1.0, 0.25, 0.04},
        SpacetimeParams{1.0, 0.0, 0.04}}) {
    const MuChart chart = build_chart(p);
    const HorizonData& h = chart.horizons();
    const double step = 3e-4 * h.gap;
    for (int k = 1; k <= 8; ++k) {
      const double r = h.r_minus + h.gap * (0.15 + 0.7 * (k - 1) / 7.0);
      const double fd =
          (chart.mu_at(r + step) - chart.mu_at(r - step)) / (2.0 * step);
      const double expected = 1.0 / std::sqrt(lapse_squared(p, r));
      CHECK(std::abs(fd - expected) / expected < 1e-6);
    }
  }
}

TEST_CASE("inversion: boundaries, a known point, and the round trip") {
  const MuChart chart = build_chart({1.25, 1.0, 0.0});
  CHECK(chart.r_at(0.0) == chart.horizons().r_minus);
  CHECK(chart.r_at(chart.mu_max()) == chart.horizons().r_plus);
  CHECK(chart.r_at(1.2134954084936208) == doctest::Approx(1.25).epsilon(1e-9));

  std::mt19937_64 gen(11);
  const auto u01 = [&] { return (gen() >> 11) * 0x1.0p-53; };
  const double scale = std::max(1.0, chart.mu_max());
  for (int k = 0; k < 1000; ++k) {
    const double mu = u01() * chart.mu_max();
    CHECK(std::abs(chart.mu_at(chart.r_at(mu)) - mu) <= 1e-9 * scale);
  }
}

TEST_CASE("round trip near the endpoints uses the local square-root model") {
  for (const SpacetimeParams& p :
       {SpacetimeParams{1.25, 1.0, 0.0}, SpacetimeParams{1.0, 0.0, 0.04}}) {
    const MuChart chart = build_chart(p);
    const double scale = std::max(1.0, chart.mu_max());
    for (const double frac : {1e-12, 1e-7, 1e-3}) {
      for (const double mu :
           {frac * chart.mu_max(), (1.0 - frac) * chart.mu_max()}) {
        CHECK(std::abs(chart.mu_at(chart.r_at(mu)) - mu) <= 1e-9 * scale);
      }
    }
  }
}

TEST_CASE("domain and precondition errors") {
  const MuChart chart = build_chart({1.25, 1.0, 0.0});
  CHECK_THROWS_AS(chart.mu_at(chart.horizons().r_minus - 1e-9), DomainError);
  CHECK_THROWS_AS(chart.mu_at(chart.horizons().r_plus + 1e-9), DomainError);
  CHECK_THROWS_AS(chart.r_at(-1e-12), DomainError);
  CHECK_THROWS_AS(chart.r_at(chart.mu_max() * (1.0 + 1e-9)), DomainError);
  CHECK_THROWS_AS(build_chart({1.25, 1.0, 0.0}, 8), std::invalid_argument);
  CHECK_THROWS_AS(build_chart({1.0, 1.0, 0.0}), ExtremalConfiguration);
}

TEST_CASE("curved chart at lambda = 1e-8 tracks the flat closed form") {
  const SpacetimeParams p{1.25, 1.0, 1e-8};
  const MuChart chart = build_chart(p);
  double worst = 0.0;
  for (int k = 0; k < 64; ++k) {
    const double u = 0.05 + 0.85 * k / 63.0;
    const double r = chart.r_at(u * chart.mu_max());
    const double mu_flat = rn_mu_analytic(1.25, 2.0, 0.5, r);
    worst = std::max(worst, std::abs(chart.mu_at(r) - mu_flat) / mu_flat);
  }
  CHECK(worst < 1e-5);
}

TEST_CASE("a shared chart evaluates identically across threads") {
  const MuChart chart = build_chart({1.0, 0.25, 0.04});
  constexpr int kPoints = 64;
  std::vector<double> serial(kPoints);
  for (int i = 0; i < kPoints; ++i)
    serial[i] = chart.mu_at(chart.r_at((i + 0.5) * chart.mu_max() / kPoints));

  std::vector<double> parallel(kPoints);
  std::vector<std::thread> workers;
  for (int t = 0; t < 4; ++t) {
    workers.emplace_back([&, t] {
      for (int i = t; i < kPoints; i += 4)
        parallel[i] =
            chart.mu_at(chart.r_at((i + 0.5) * chart.mu_max() / kPoints));
    });
  }
  for (auto& w : workers) w.join();
  for (int i = 0; i < kPoints; ++i) CHECK(parallel[i] == serial[i]);
}

TEST_CASE("chart serialization round-trips") {
  const MuChart chart = build_chart({1.0, 0.25, 0.04}, 64);
  const nlohmann::json j = chart_to_json(chart);
  CHECK(j.at("version") == 1);
  const MuChart back = chart_from_json(j);

  CHECK(back.mu_max() == chart.mu_max());
  CHECK(back.table().size() == chart.table().size());
  for (std::size_t k = 0; k < chart.table().size(); ++k) {
    CHECK(back.table()[k].r == chart.table()[k].r);
    CHECK(back.table()[k].mu == chart.table()[k].mu);
  }
  // Restored charts evaluate identically.
  for (const double r : {0.5, 1.0, 1.5})
    CHECK(back.mu_at(r) == chart.mu_at(r));
  const std::string dumped = j.dump();
  CHECK(chart_to_json(back).dump() == dumped);

  nlohmann::json bad = j;
  bad["version"] = 999;
  CHECK_THROWS_AS(chart_from_json(bad), std::invalid_argument);
  bad = j;
  bad.erase("table");
  CHECK_THROWS_AS(chart_from_json(bad), std::invalid_argument);
}
