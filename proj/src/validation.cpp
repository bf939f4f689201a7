#include "warped/validation.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "warped/chart.hpp"
#include "warped/geometry.hpp"

namespace warped {

namespace {

// ---------------------------------------------------------------------------
// Deterministic sampling. Doubles are drawn from the high bits of a
// mt19937_64 stream, so reports are reproducible bit-for-bit across
// standard library implementations.
// ---------------------------------------------------------------------------

class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform01(); }
  double log_uniform(double a, double b) {
    return std::exp(uniform(std::log(a), std::log(b)));
  }

private:
  std::mt19937_64 gen_;
};

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

bool charged(Family f) { return f == Family::RNAdS || f == Family::RN; }
bool curved(Family f) { return f == Family::RNAdS || f == Family::SchwAdS; }

std::vector<SpacetimeParams> sample_family(Family family, std::uint64_t seed,
                                           int count) {
  Rng rng(seed ^ (kGolden * (static_cast<std::uint64_t>(family) + 1)));
  std::vector<SpacetimeParams> out;
  int guard = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++guard > 100000)
      throw std::runtime_error("sample_family: rejection guard tripped");
    const double m = rng.log_uniform(0.5, 2.0);
    const double q2 = charged(family) ? m * m * rng.log_uniform(1e-3, 0.99) : 0.0;
    const double lam = curved(family) ? rng.log_uniform(1e-4, 0.2) / (m * m) : 0.0;
    const SpacetimeParams p{m, q2, lam};
    try {
      (void)solve_horizons(p);
    } catch (const GeometryError&) {
      continue; // extremal or naked draw
    }
    out.push_back(p);
  }
  return out;
}

struct FamilyContext {
  Family family = Family::Schw;
  std::uint64_t seed = 0;
  std::vector<SpacetimeParams> draws;
  std::vector<HorizonData> horizons;
  std::vector<MuChart> charts;

  const SpacetimeParams& rep() const { return draws.front(); }
  const MuChart& rep_chart() const { return charts.front(); }
};

FamilyContext make_context(Family family, std::uint64_t seed, int count) {
  FamilyContext ctx;
  ctx.family = family;
  ctx.seed = seed;
  ctx.draws = sample_family(family, seed, count);
  ctx.horizons.reserve(ctx.draws.size());
  ctx.charts.reserve(ctx.draws.size());
  for (const auto& p : ctx.draws) {
    ctx.horizons.push_back(solve_horizons(p));
    ctx.charts.push_back(build_chart(p));
  }
  return ctx;
}

struct CheckContext {
  const FamilyContext* fam = nullptr;
  double tolerance = 0.0;
};

CheckResult finish(const CheckContext& ctx, const char* name, double max_error,
                   std::string details) {
  CheckResult r;
  r.name = name;
  r.family = ctx.fam->family;
  r.max_error = max_error;
  r.tolerance = ctx.tolerance;
  r.passed = max_error <= ctx.tolerance;
  r.details = std::move(details);
  return r;
}

Rng check_rng(const CheckContext& ctx, const char* name) {
  return Rng(ctx.fam->seed ^ fnv1a(name) ^
             (kGolden * (static_cast<std::uint64_t>(ctx.fam->family) + 11)));
}

// Strictly interior radii at midpoint fractions of the chart coordinate.
// Uniform-in-mu grids stay away from a small inner horizon, where the
// curvature combinations would otherwise be dominated by roundoff of huge
// cancelling terms.
std::vector<double> mu_midpoint_radii(const MuChart& chart, int n) {
  std::vector<double> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i)
    out.push_back(chart.r_at((i + 0.5) * chart.mu_max() / n));
  return out;
}

std::array<double, 5> fields(const RicciComponents& c) {
  return {c.r_mumu, c.r_tt, c.r_thth, c.r_phph_over_sin2, c.scalar};
}

bool same_bits(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

// ---------------------------------------------------------------------------
// Checks. Each returns max_error such that passed <=> max_error <= tolerance.
// ---------------------------------------------------------------------------

CheckResult check_horizon_residuals(const CheckContext& ctx) {
  double worst = 0.0;
  for (std::size_t i = 0; i < ctx.fam->draws.size(); ++i) {
    const auto& p = ctx.fam->draws[i];
    const auto& h = ctx.fam->horizons[i];
    worst = std::max(worst, std::abs(lapse_squared(p, h.r_plus)));
    if (h.r_minus > 0.0)
      worst = std::max(worst, std::abs(lapse_squared(p, h.r_minus)));
  }
  return finish(ctx, "horizon-residuals", worst,
                "max |N^2| at the solved horizon radii over " +
                    std::to_string(ctx.fam->draws.size()) + " draws");
}

CheckResult check_lapse_factored_agreement(const CheckContext& ctx) {
  double worst = 0.0;
  for (std::size_t i = 0; i < ctx.fam->draws.size(); ++i) {
    const auto& p = ctx.fam->draws[i];
    const auto& h = ctx.fam->horizons[i];
    for (int k = 0; k < 64; ++k) {
      const double r = h.r_minus + (k + 0.5) * h.gap / 64.0;
      const double direct = lapse_squared(p, r);
      const double factored = lapse_squared_factored(p, h, r);
      worst = std::max(worst, std::abs(direct - factored) /
                                  std::max(1.0, std::abs(direct)));
    }
  }
  return finish(ctx, "lapse-factored-agreement", worst,
                "direct vs root-factored lapse on 64-point interior grids");
}

CheckResult check_rn_closed_form_horizons(const CheckContext& ctx) {
  double worst = 0.0;
  for (std::size_t i = 0; i < ctx.fam->draws.size(); ++i) {
    const auto& p = ctx.fam->draws[i];
    const auto& h = ctx.fam->horizons[i];
    const long double m = p.mass;
    const long double s = std::sqrt(m * m - static_cast<long double>(p.charge_sq));
    const long double rp = m + s;
    const long double rm = m - s;
    worst = std::max(worst, std::abs(static_cast<double>((h.r_plus - rp) / rp)));
    worst = std::max(worst, std::abs(static_cast<double>((h.r_minus - rm) / rm)));
  }
  return finish(ctx, "rn-closed-form-horizons", worst,
                "solver vs extended-precision closed-form radii");
}

CheckResult check_params_roundtrip(const CheckContext& ctx) {
  double worst = 0.0;
  for (std::size_t i = 0; i < ctx.fam->draws.size(); ++i) {
    const auto& p = ctx.fam->draws[i];
    const auto& h = ctx.fam->horizons[i];
    const HorizonInversion inv = params_from_horizons(h.r_plus, h.r_minus, p.mass);
    worst = std::max(worst,
                     std::abs(inv.charge_sq - p.charge_sq) / p.charge_sq);
    if (p.ads_curvature > 0.0)
      worst = std::max(worst, std::abs(inv.ads_curvature - p.ads_curvature) /
                                  p.ads_curvature);
    else if (inv.ads_curvature != 0.0)
      worst = std::max(worst, 1.0);
  }
  return finish(ctx, "params-roundtrip", worst,
                "(Q^2, lambda) recovered from solved horizons");
}

CheckResult check_lambda_degeneration(const CheckContext& ctx) {
  double worst = 0.0;
  std::string detail;
  const std::size_t n = std::min<std::size_t>(4, ctx.fam->draws.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = ctx.fam->draws[i];
    const long double m = p.mass;
    const long double s =
        std::sqrt(m * m - static_cast<long double>(p.charge_sq));
    const long double rp_rn = m + s;
    const long double rm_rn = m - s;
    const auto dev_at = [&](double lam) {
      const HorizonData h =
          solve_horizons({p.mass, p.charge_sq, lam});
      const double dp = std::abs(static_cast<double>((h.r_plus - rp_rn) / rp_rn));
      const double dm = std::abs(static_cast<double>((h.r_minus - rm_rn) / rm_rn));
      return std::max(dp, dm);
    };
    const double e6 = dev_at(1e-6);
    const double e8 = dev_at(1e-8);
    worst = std::max(worst, e8 + (e8 < e6 ? 0.0 : 1.0));
    if (i == 0) detail = "draw0: dev(1e-6)=" + fmt(e6) + " dev(1e-8)=" + fmt(e8);
  }
  return finish(ctx, "lambda-degeneration", worst,
                "horizons converge to the flat-limit closed form; " + detail);
}

CheckResult check_chart_roundtrip(const CheckContext& ctx) {
  Rng rng = check_rng(ctx, "chart-roundtrip");
  const MuChart& chart = ctx.fam->rep_chart();
  const double scale = std::max(1.0, chart.mu_max());
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double mu = rng.uniform01() * chart.mu_max();
    const double back = chart.mu_at(chart.r_at(mu));
    worst = std::max(worst, std::abs(back - mu) / scale);
  }
  return finish(ctx, "chart-roundtrip", worst,
                "|F(F^-1(mu)) - mu| / max(1, mu_max) over 1000 draws");
}

CheckResult check_chart_monotonicity(const CheckContext& ctx) {
  Rng rng = check_rng(ctx, "chart-monotonicity");
  const MuChart& chart = ctx.fam->rep_chart();
  const HorizonData& h = chart.horizons();
  int violations = 0;
  const auto& table = chart.table();
  for (std::size_t k = 1; k < table.size(); ++k)
    if (!(table[k].mu > table[k - 1].mu && table[k].r > table[k - 1].r))
      ++violations;
  for (int k = 0; k < 200; ++k) {
    double r1 = h.r_minus + rng.uniform01() * h.gap;
    double r2 = h.r_minus + rng.uniform01() * h.gap;
    if (std::abs(r1 - r2) < 1e-9 * h.gap) continue;
    if (r1 > r2) std::swap(r1, r2);
    if (!(chart.mu_at(r1) < chart.mu_at(r2))) ++violations;
  }
  return finish(ctx, "chart-monotonicity", violations,
                "strict increase over the table and 200 random pairs");
}

CheckResult check_chart_derivative_consistency(const CheckContext& ctx) {
  const MuChart& chart = ctx.fam->rep_chart();
  const HorizonData& h = chart.horizons();
  // Small enough that the stencil truncation stays below tolerance even at
  // the near-horizon quantile points, where (1/N)'' grows like the inverse
  // square of the horizon distance.
  const double step = 1e-5 * h.gap;
  double worst = 0.0;
  for (int k = 0; k < 32; ++k) {
    const double u = 0.15 + 0.7 * k / 31.0;
    const double r = chart.r_at(u * chart.mu_max());
    const double fd = (chart.mu_at(r + step) - chart.mu_at(r - step)) / (2.0 * step);
    const double expected = 1.0 / std::sqrt(lapse_squared(chart.params(), r));
    worst = std::max(worst, std::abs(fd - expected) / expected);
  }
  return finish(ctx, "chart-derivative-consistency", worst,
                "centered dF/dr against 1/N at 32 interior points");
}

CheckResult check_rn_analytic_quadrature(const CheckContext& ctx) {
  const MuChart& chart = ctx.fam->rep_chart();
  const HorizonData& h = chart.horizons();
  const double m = chart.params().mass;
  double worst = 0.0;
  for (int k = 0; k < 256; ++k) {
    const double r = h.r_minus + k * h.gap / 255.0;
    worst = std::max(worst, std::abs(chart.mu_at(r) -
                                     rn_mu_analytic(m, h.r_plus, h.r_minus, r)));
  }
  return finish(ctx, "rn-analytic-quadrature-agreement", worst,
                "closed-form chart vs quadrature on a 256-point grid");
}

CheckResult check_rn_printed_form_control(const CheckContext& ctx) {
  const MuChart& chart = ctx.fam->rep_chart();
  const HorizonData& h = chart.horizons();
  const double m = chart.params().mass;
  const double threshold =
      std::max(1e-3, 1e3 * 10.0 * chart.quad_tol());
  double observed = 0.0;
  for (int k = 0; k < 256; ++k) {
    const double r = h.r_minus + k * h.gap / 255.0;
    observed = std::max(
        observed, std::abs(chart.mu_at(r) - rn_mu_analytic_uncorrected(
                                                m, h.r_plus, h.r_minus, r)));
  }
  // Negative control: the un-square-rooted arccos variant must MISS the
  // quadrature by at least `threshold` somewhere. Reported as the shortfall
  // below the threshold so that passed <=> max_error <= tolerance.
  const double shortfall = std::max(0.0, threshold - observed);
  return finish(ctx, "rn-printed-form-negative-control", shortfall,
                "observed max deviation " + fmt(observed) + ", required >= " +
                    fmt(threshold));
}

CheckResult check_rn_boundary_mpi(const CheckContext& ctx) {
  double worst = 0.0;
  const std::size_t n = std::min<std::size_t>(8, ctx.fam->draws.size());
  for (std::size_t i = 0; i < n; ++i) {
    const MuChart& chart = ctx.fam->charts[i];
    const double target = chart.params().mass * std::numbers::pi;
    worst = std::max(worst, std::abs(chart.mu_max() - target) / target);
  }
  return finish(ctx, "rn-boundary-mpi", worst,
                "mu_max against m*pi for " + std::to_string(n) + " draws");
}

CheckResult check_limit_consistency_lambda(const CheckContext& ctx) {
  const auto& p = ctx.fam->rep();
  const MuChart chart = build_chart({p.mass, p.charge_sq, 1e-8});
  const long double m = p.mass;
  const long double s = std::sqrt(m * m - static_cast<long double>(p.charge_sq));
  const double rp_rn = static_cast<double>(m + s);
  const double rm_rn = static_cast<double>(m - s);
  double worst = 0.0;
  // Quantile grid of the chart coordinate, kept away from the endpoints:
  // the horizon radii themselves shift with lambda, so right at the edges
  // the comparison degenerates into the square-root endpoint behaviour.
  for (int k = 0; k < 64; ++k) {
    const double u = 0.05 + 0.85 * k / 63.0;
    const double r = chart.r_at(u * chart.mu_max());
    const double mu_ads = chart.mu_at(r);
    const double mu_rn = rn_mu_analytic(p.mass, rp_rn, rm_rn, r);
    worst = std::max(worst, std::abs(mu_ads - mu_rn) / std::abs(mu_rn));
  }
  return finish(ctx, "limit-consistency-lambda", worst,
                "chart at lambda=1e-8 vs flat-limit closed form, 64 quantile "
                "points in [0.05, 0.9]");
}

CheckResult check_pipeline_closed_form(const CheckContext& ctx) {
  Rng rng = check_rng(ctx, "pipeline-closed-form-agreement");
  const MuChart& chart = ctx.fam->rep_chart();
  double worst = 0.0;
  for (int k = 0; k < 64; ++k) {
    const double mu = (0.01 + 0.98 * rng.uniform01()) * chart.mu_max();
    const WarpFrame frame = warp_frame(chart, EvaluationPoint::at_mu(mu));
    const RicciComponents pipe = ricci_from_frame(frame);
    const RicciComponents closed =
        ricci_closed_form(chart.params(), chart.horizons(), frame.r);
    const auto a = fields(pipe);
    const auto b = fields(closed);
    for (int c = 0; c < 5; ++c)
      worst = std::max(worst,
                       std::abs(a[c] - b[c]) / std::max(std::abs(b[c]), 1e-2));
  }
  return finish(ctx, "pipeline-closed-form-agreement", worst,
                "generic warped-product route vs closed forms at 64 random "
                "interior points (absolute floor 1e-9)");
}

CheckResult check_derivative_identity_suite(const CheckContext& ctx) {
  const MuChart& chart = ctx.fam->rep_chart();
  const HorizonData& h = chart.horizons();
  const double h0 = 1e-4 * h.gap;

  // Generic-interior quantile band: close to a horizon the third
  // derivatives grow and the pinned step would leave the stated tolerance.
  const auto max_dev = [&](double step) {
    double dev = 0.0;
    for (int k = 0; k < 8; ++k) {
      const double u = 0.25 + 0.5 * k / 7.0;
      const double r = chart.r_at(u * chart.mu_max());
      const WarpFrame ident = warp_frame(chart, EvaluationPoint::at_radius(r));
      const WarpFrame fd = finite_difference_frame(chart, r, step);
      const auto rel = [](double got, double want) {
        return std::abs(got - want) / std::max(std::abs(want), 1e-3);
      };
      dev = std::max({dev, rel(fd.f2_prime, ident.f1),
                      rel(fd.f1_prime, ident.f1_prime),
                      rel(fd.f1_pprime, ident.f1_pprime),
                      rel(fd.f2_pprime, ident.f1_prime)});
    }
    return dev;
  };

  const double d0 = max_dev(h0);
  const double d1 = max_dev(h0 / 2.0);
  const double order = d1 > 0.0 ? std::log2(d0 / d1) : 2.0;
  const double max_error = d0 + (order >= 1.9 ? 0.0 : 1.0);
  return finish(ctx, "derivative-identity-suite", max_error,
                "stencil vs identities at step 1e-4*gap, 8 quantile points in "
                "[0.25, 0.75]: dev=" + fmt(d0) +
                    ", half-step dev=" + fmt(d1) + ", observed order=" +
                    fmt(order));
}

CheckResult check_scalar_constancy(const CheckContext& ctx) {
  const MuChart& chart = ctx.fam->rep_chart();
  const double lam = chart.params().ads_curvature;
  std::vector<double> scalars;
  for (const double r : mu_midpoint_radii(chart, 128))
    scalars.push_back(
        ricci_from_frame(warp_frame(chart, EvaluationPoint::at_radius(r)))
            .scalar);
  double mean = 0.0;
  for (const double s : scalars) mean += s;
  mean /= scalars.size();
  double var = 0.0;
  for (const double s : scalars) var += (s - mean) * (s - mean);
  var /= scalars.size();
  const double sd = std::sqrt(var) / std::max(1.0, 12.0 * lam);
  return finish(ctx, "scalar-constancy", sd,
                "normalized standard deviation of the scalar over a 128-point "
                "interior grid; mean=" + fmt(mean));
}

CheckResult check_scalar_value(const CheckContext& ctx) {
  double worst = 0.0;
  for (std::size_t i = 0; i < ctx.fam->draws.size(); ++i) {
    const MuChart& chart = ctx.fam->charts[i];
    const double lam = chart.params().ads_curvature;
    const double target = 0.0 - 12.0 * lam;
    const double denom = lam > 0.0 ? 12.0 * lam : 1.0;
    for (const double r : mu_midpoint_radii(chart, 128)) {
      const WarpFrame frame = warp_frame(chart, EvaluationPoint::at_radius(r));
      const double scalar =
          contract_scalar(ricci_from_frame(frame), frame.f1, frame.f2);
      worst = std::max(worst, std::abs(scalar - target) / denom);
    }
  }
  return finish(ctx, "scalar-minus-12-over-l2", worst,
                "contracted scalar against -12/l^2 on 128-point grids, all "
                "draws");
}

CheckResult check_ricci_vanishing(const CheckContext& ctx) {
  double worst = 0.0;
  for (std::size_t i = 0; i < ctx.fam->draws.size(); ++i) {
    const MuChart& chart = ctx.fam->charts[i];
    for (const double r : mu_midpoint_radii(chart, 128)) {
      const RicciComponents c =
          ricci_from_frame(warp_frame(chart, EvaluationPoint::at_radius(r)));
      for (const double v : fields(c)) worst = std::max(worst, std::abs(v));
    }
  }
  return finish(ctx, "ricci-vanishing", worst,
                "all components through the generic route, flat interior");
}

CheckResult check_angular_factorization(const CheckContext& ctx) {
  const MuChart& chart = ctx.fam->rep_chart();
  int violations = 0;
  const double thetas[] = {0.0, std::numbers::pi / 6.0, std::numbers::pi / 2.0};
  for (const double r : mu_midpoint_radii(chart, 8)) {
    const RicciComponents c =
        ricci_from_frame(warp_frame(chart, EvaluationPoint::at_radius(r)));
    if (!same_bits(c.r_phph_over_sin2, c.r_thth)) ++violations;
    for (const double th : thetas) {
      const double sin_th = std::sin(th);
      const double expected = c.r_phph_over_sin2 * (sin_th * sin_th);
      if (!same_bits(reconstitute_r_phph(c, th), expected)) ++violations;
    }
  }
  return finish(ctx, "angular-factorization", violations,
                "phi-phi entry reconstitutes as R_thth sin^2(theta) exactly");
}

// Family-specific reference forms, written with the exact operation
// structure of the unified closed form so dropped terms cost nothing.
RicciComponents ref_schwads(double m, double lam, double r) {
  const double r2 = r * r;
  const double n2 = -1.0 + 2.0 * m / r - lam * r * r;
  RicciComponents c;
  c.r_mumu = 3.0 * lam;
  c.r_tt = 0.0 - n2 * (3.0 * lam);
  c.r_thth = 0.0 - 3.0 * lam * r2;
  c.r_phph_over_sin2 = c.r_thth;
  c.scalar = 0.0 - 12.0 * lam;
  return c;
}

RicciComponents ref_rn(double m, double q2, double r) {
  const double r2 = r * r;
  const double n2 = -1.0 + 2.0 * m / r - q2 / (r * r);
  RicciComponents c;
  c.r_mumu = q2 / (r2 * r2);
  c.r_tt = 0.0 - n2 * (q2 / (r2 * r2));
  c.r_thth = q2 / r2;
  c.r_phph_over_sin2 = c.r_thth;
  c.scalar = 0.0;
  return c;
}

RicciComponents ref_schw() { return RicciComponents{}; }

CheckResult check_truncation_commutes(const CheckContext& ctx) {
  const auto& p = ctx.fam->rep();
  int violations = 0;
  const auto compare = [&](const SpacetimeParams& trunc,
                           auto&& reference) {
    const HorizonData h = solve_horizons(trunc);
    for (int k = 0; k < 32; ++k) {
      const double r = h.r_minus + (k + 0.5) * h.gap / 32.0;
      const auto got = fields(ricci_closed_form(trunc, h, r));
      const auto want = fields(reference(r));
      for (int c = 0; c < 5; ++c)
        if (!same_bits(got[c], want[c])) ++violations;
    }
  };
  compare({p.mass, 0.0, p.ads_curvature},
          [&](double r) { return ref_schwads(p.mass, p.ads_curvature, r); });
  compare({p.mass, p.charge_sq, 0.0},
          [&](double r) { return ref_rn(p.mass, p.charge_sq, r); });
  compare({p.mass, 0.0, 0.0}, [&](double) { return ref_schw(); });
  return finish(ctx, "truncation-commutes", violations,
                "zeroed-parameter evaluation is bit-identical to the "
                "truncated family's own form");
}

CheckResult check_truncation_path(const CheckContext& ctx) {
  const auto& p = ctx.fam->rep();

  // Deviation between two parameter sets' closed forms on a shared interior
  // grid, kept away from the inner region (the charge term is singular at
  // the origin, so the small-Q^2 limit is not uniform there).
  const auto table_dev = [&](const SpacetimeParams& a, const SpacetimeParams& b) {
    const HorizonData ha = solve_horizons(a);
    const HorizonData hb = solve_horizons(b);
    const double hi = 0.97 * std::min(ha.r_plus, hb.r_plus);
    const double lo =
        std::max(1.03 * std::max(ha.r_minus, hb.r_minus), 0.3 * hi);
    double dev = 0.0;
    for (int k = 0; k < 32; ++k) {
      const double r = lo + (k + 0.5) * (hi - lo) / 32.0;
      const auto va = fields(ricci_closed_form(a, ha, r));
      const auto vb = fields(ricci_closed_form(b, hb, r));
      for (int c = 0; c < 5; ++c)
        dev = std::max(dev,
                       std::abs(va[c] - vb[c]) / std::max(1.0, std::abs(vb[c])));
    }
    return dev;
  };

  double worst = 0.0;
  std::string detail;
  // charge -> 0 lands on the uncharged AdS family
  {
    const SpacetimeParams target{p.mass, 0.0, p.ads_curvature};
    const double d2 = table_dev({p.mass, p.charge_sq * 1e-2, p.ads_curvature}, target);
    const double d4 = table_dev({p.mass, p.charge_sq * 1e-4, p.ads_curvature}, target);
    worst = std::max(worst, d4 + (d4 < d2 ? 0.0 : 1.0));
    detail += "q2: " + fmt(d2) + "->" + fmt(d4);
  }
  // lambda -> 0 lands on the flat charged family
  {
    const SpacetimeParams target{p.mass, p.charge_sq, 0.0};
    const double d2 = table_dev({p.mass, p.charge_sq, p.ads_curvature * 1e-2}, target);
    const double d4 = table_dev({p.mass, p.charge_sq, p.ads_curvature * 1e-4}, target);
    worst = std::max(worst, d4 + (d4 < d2 ? 0.0 : 1.0));
    detail += "; lambda: " + fmt(d2) + "->" + fmt(d4);
  }
  // both -> 0 lands on the flat uncharged family
  {
    const double d4 = table_dev(
        {p.mass, p.charge_sq * 1e-4, p.ads_curvature * 1e-4}, {p.mass, 0.0, 0.0});
    worst = std::max(worst, d4);
    detail += "; both: " + fmt(d4);
  }
  return finish(ctx, "truncation-path-consistency", worst,
                "successive truncation deviations shrink with the dropped "
                "parameter (" + detail + ")");
}

CheckResult check_horizon_continuity(const CheckContext& ctx) {
  const auto& p = ctx.fam->rep();
  const HorizonData& h = ctx.fam->horizons.front();
  const std::array<double, 3> eps = {1e-2 * h.gap, 1e-4 * h.gap, 1e-6 * h.gap};
  const ContinuityReport rep = horizon_continuity_check(p, eps);
  const double final_dev = rep.rows.back().max_norm_dev;
  const double max_error = final_dev + (rep.converges_linearly ? 0.0 : 1.0);
  return finish(ctx, "horizon-continuity", max_error,
                "one-sided closed-form limit at the outer horizon; linear in "
                "epsilon over {1e-2,1e-4,1e-6}*gap");
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

using CheckFn = CheckResult (*)(const CheckContext&);

struct CheckDef {
  const char* name;
  double default_tol;
  bool (*applies)(Family);
  CheckFn run;
};

bool to_all(Family) { return true; }
bool to_charged(Family f) { return charged(f); }
bool to_rn(Family f) { return f == Family::RN; }
bool to_rnads(Family f) { return f == Family::RNAdS; }
bool to_schw(Family f) { return f == Family::Schw; }

constexpr CheckDef kRegistry[] = {
    {"angular-factorization", 0.0, to_all, check_angular_factorization},
    {"chart-derivative-consistency", 1e-6, to_all, check_chart_derivative_consistency},
    {"chart-monotonicity", 0.0, to_all, check_chart_monotonicity},
    {"chart-roundtrip", 1e-9, to_all, check_chart_roundtrip},
    {"derivative-identity-suite", 1e-6, to_all, check_derivative_identity_suite},
    {"horizon-continuity", 1e-4, to_all, check_horizon_continuity},
    {"horizon-residuals", 1e-12, to_all, check_horizon_residuals},
    {"lambda-degeneration", 1e-4, to_rnads, check_lambda_degeneration},
    {"lapse-factored-agreement", 1e-12, to_all, check_lapse_factored_agreement},
    {"limit-consistency-lambda", 1e-5, to_rnads, check_limit_consistency_lambda},
    {"params-roundtrip", 1e-10, to_charged, check_params_roundtrip},
    {"pipeline-closed-form-agreement", 1e-7, to_all, check_pipeline_closed_form},
    {"ricci-vanishing", 1e-9, to_schw, check_ricci_vanishing},
    {"rn-analytic-quadrature-agreement", 1e-9, to_rn, check_rn_analytic_quadrature},
    {"rn-boundary-mpi", 1e-8, to_rn, check_rn_boundary_mpi},
    {"rn-closed-form-horizons", 1e-14, to_rn, check_rn_closed_form_horizons},
    {"rn-printed-form-negative-control", 0.0, to_rn, check_rn_printed_form_control},
    {"scalar-constancy", 1e-9, to_all, check_scalar_constancy},
    {"scalar-minus-12-over-l2", 1e-8, to_all, check_scalar_value},
    {"truncation-commutes", 0.0, to_rnads, check_truncation_commutes},
    {"truncation-path-consistency", 1e-2, to_rnads, check_truncation_path},
};

} // namespace

bool SuiteReport::all_passed() const {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return r.passed; });
}

std::vector<std::string> registry_check_names() {
  std::vector<std::string> names;
  for (const auto& def : kRegistry) names.emplace_back(def.name);
  std::sort(names.begin(), names.end());
  return names;
}

const std::map<std::string, double>& default_check_tolerances() {
  static const std::map<std::string, double> tols = [] {
    std::map<std::string, double> t;
    for (const auto& def : kRegistry) t.emplace(def.name, def.default_tol);
    return t;
  }();
  return tols;
}

SuiteReport run_suite(const std::set<Family>& families, std::uint64_t seed,
                      const SuiteOptions& options) {
  if (families.empty())
    throw std::invalid_argument("run_suite: family set is empty");
  for (const auto& [name, tol] : options.tol_overrides)
    if (default_check_tolerances().find(name) == default_check_tolerances().end())
      throw std::invalid_argument("run_suite: unknown check name in tolerance "
                                  "override: " + name);

  SuiteReport report;
  report.seed = seed;

  const Family order[] = {Family::RNAdS, Family::SchwAdS, Family::RN,
                          Family::Schw};
  for (const Family family : order) {
    if (families.find(family) == families.end()) continue;
    const FamilyContext ctx =
        make_context(family, seed, options.draws_per_family);
    report.params_sampled.insert(report.params_sampled.end(),
                                 ctx.draws.begin(), ctx.draws.end());
    for (const auto& def : kRegistry) {
      if (!def.applies(family)) continue;
      CheckContext cc;
      cc.fam = &ctx;
      const auto it = options.tol_overrides.find(def.name);
      cc.tolerance = it != options.tol_overrides.end() ? it->second
                                                       : def.default_tol;
      CheckResult result;
      try {
        result = def.run(cc);
      } catch (const std::exception& e) {
        result.name = def.name;
        result.family = family;
        result.tolerance = cc.tolerance;
        result.max_error = 9e99;
        result.passed = false;
        result.details = std::string("exception: ") + e.what();
      }
      report.results.push_back(std::move(result));
    }
  }
  std::sort(report.results.begin(), report.results.end(),
            [](const CheckResult& a, const CheckResult& b) {
              if (a.name != b.name) return a.name < b.name;
              return std::string(to_string(a.family)) < to_string(b.family);
            });
  return report;
}

} // namespace warped
