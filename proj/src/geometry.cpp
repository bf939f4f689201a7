#include "warped/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace warped {

namespace {

// Closed forms without the interior check, shared by ricci_closed_form and
// the horizon-approach report (the expressions stay finite at r_plus).
//
// Written so that a vanishing charge or curvature drops its terms exactly
// (x + 0 and x - 0 are exact, and 0.0 - y avoids producing -0.0), keeping
// family truncations bit-identical to the truncated families' own forms.
RicciComponents closed_form_raw(const SpacetimeParams& params, double r) {
  const double r2 = r * r;
  const double q_over_r4 = params.charge_sq / (r2 * r2);
  const double a = q_over_r4 + 3.0 * params.ads_curvature;
  const double n2 = lapse_squared(params, r);
  RicciComponents c;
  c.r_mumu = a;
  c.r_tt = 0.0 - n2 * a;
  c.r_thth = params.charge_sq / r2 - 3.0 * params.ads_curvature * r2;
  c.r_phph_over_sin2 = c.r_thth;
  c.scalar = 0.0 - 12.0 * params.ads_curvature;
  return c;
}

} // namespace

EvaluationPoint EvaluationPoint::at_radius(double r, double theta) {
  if (!std::isfinite(r) || !std::isfinite(theta))
    throw std::invalid_argument("EvaluationPoint: coordinates must be finite");
  if (theta < 0.0 || theta > std::numbers::pi)
    throw DomainError("EvaluationPoint: theta must lie in [0, pi]");
  EvaluationPoint p;
  p.r = r;
  p.theta = theta;
  return p;
}

EvaluationPoint EvaluationPoint::at_mu(double mu, double theta) {
  if (!std::isfinite(mu) || !std::isfinite(theta))
    throw std::invalid_argument("EvaluationPoint: coordinates must be finite");
  if (theta < 0.0 || theta > std::numbers::pi)
    throw DomainError("EvaluationPoint: theta must lie in [0, pi]");
  EvaluationPoint p;
  p.mu = mu;
  p.theta = theta;
  return p;
}

WarpFrame warp_frame(const MuChart& chart, const EvaluationPoint& point) {
  const HorizonData& h = chart.horizons();
  double r, mu;
  if (point.r.has_value()) {
    r = *point.r;
    if (!(r > h.r_minus && r < h.r_plus))
      throw DomainError("warp_frame: r=" + std::to_string(r) +
                        " is not strictly interior");
    mu = chart.mu_at(r);
  } else if (point.mu.has_value()) {
    mu = *point.mu;
    if (!(mu > 0.0 && mu < chart.mu_max()))
      throw DomainError("warp_frame: mu=" + std::to_string(mu) +
                        " is not strictly interior");
    r = chart.r_at(mu);
  } else {
    throw std::invalid_argument("warp_frame: point carries neither r nor mu");
  }

  const double n2 = lapse_squared(chart.params(), r);
  if (!(n2 > 0.0))
    throw DomainError("warp_frame: lapse vanishes at r=" + std::to_string(r));

  const double m = chart.params().mass;
  const double q2 = chart.params().charge_sq;
  const double lam = chart.params().ads_curvature;

  WarpFrame f;
  f.mu = mu;
  f.r = r;
  f.f2 = r;
  f.f1 = std::sqrt(n2);
  f.f1_prime = -m / (r * r) + q2 / (r * r * r) - lam * r;
  f.f2_prime = f.f1;
  f.f1_pprime = -2.0 * f.f1 * f.f1_prime / r - q2 * f.f1 / (r * r * r * r) -
                3.0 * lam * f.f1;
  f.f2_pprime = f.f1_prime;
  return f;
}

RicciComponents ricci_from_frame(const WarpFrame& frame) {
  if (frame.f1 == 0.0 || frame.f2 == 0.0)
    throw DomainError("ricci_from_frame: singular frame (f1 or f2 is zero)");
  // Extended precision for the combinations: the individual terms can be
  // orders of magnitude larger than their sum near a small inner horizon.
  const long double f1 = frame.f1;
  const long double f2 = frame.f2;
  const long double f1p = frame.f1_prime;
  const long double f2p = frame.f2_prime;
  const long double f1pp = frame.f1_pprime;
  const long double f2pp = frame.f2_pprime;

  RicciComponents c;
  c.r_mumu = static_cast<double>(-f1pp / f1 - 2.0L * f2pp / f2);
  c.r_tt = static_cast<double>(2.0L * f1 * f1p * f2p / f2 + f1 * f1pp);
  c.r_thth =
      static_cast<double>(f1p * f2 * f2p / f1 + f2 * f2pp + f2p * f2p + 1.0L);
  c.r_phph_over_sin2 = c.r_thth;
  c.scalar = contract_scalar(c, frame.f1, frame.f2);
  return c;
}

RicciComponents ricci_closed_form(const SpacetimeParams& params,
                                  const HorizonData& horizons, double r) {
  if (!(r > horizons.r_minus && r < horizons.r_plus))
    throw DomainError("ricci_closed_form: r=" + std::to_string(r) +
                      " is not strictly interior");
  return closed_form_raw(params, r);
}

RicciComponents ricci_closed_form(const SpacetimeParams& params, double r) {
  return ricci_closed_form(params, solve_horizons(params), r);
}

double contract_scalar(const RicciComponents& components, double f1,
                       double f2) {
  if (f1 == 0.0 || f2 == 0.0)
    throw DomainError("contract_scalar: zero warp factor");
  const long double f1sq = static_cast<long double>(f1) * f1;
  const long double f2sq = static_cast<long double>(f2) * f2;
  const long double sum = -static_cast<long double>(components.r_mumu) +
                          components.r_tt / f1sq +
                          components.r_thth / f2sq +
                          components.r_phph_over_sin2 / f2sq;
  return static_cast<double>(sum);
}

double reconstitute_r_phph(const RicciComponents& components, double theta) {
  if (theta < 0.0 || theta > std::numbers::pi)
    throw DomainError("reconstitute_r_phph: theta must lie in [0, pi]");
  const double s = std::sin(theta);
  return components.r_phph_over_sin2 * (s * s);
}

double default_fd_step(const HorizonData& horizons) {
  return 1e-4 * (horizons.r_plus - horizons.r_minus);
}

WarpFrame finite_difference_frame(const MuChart& chart, double r, double step,
                                  bool richardson) {
  const HorizonData& h = chart.horizons();
  if (!(step > 0.0) || !std::isfinite(step))
    throw std::invalid_argument("finite_difference_frame: step must be > 0");
  if (!(r > h.r_minus && r < h.r_plus))
    throw DomainError("finite_difference_frame: r is not interior");
  if (std::min(r - h.r_minus, h.r_plus - r) < 4.0 * step)
    throw DomainError(
        "finite_difference_frame: point closer than 4*step to a horizon");

  const double mu0 = chart.mu_at(r);
  if (!(mu0 - step > 0.0 && mu0 + step < chart.mu_max()))
    throw DomainError(
        "finite_difference_frame: stencil leaves the chart range");

  using LD = long double;
  const auto kernel =
      detail::ChartKernel<LD>::make(chart.params(), chart.horizons());
  const LD th0 = kernel.theta_of_r(static_cast<LD>(r));
  const LD m = chart.params().mass;
  const LD q2 = chart.params().charge_sq;
  const LD lam = chart.params().ads_curvature;

  // Invert the chart increment: find theta with
  // integral(th0 -> theta) = dmu. The spans are a few steps wide at most, so
  // a single fixed Kronrod pass is exact to working precision and, unlike an
  // adaptive pass, depends smoothly on the endpoint.
  const auto radius_at_offset = [&](LD dmu) -> LD {
    LD th = th0 + dmu / kernel.integrand(th0);
    for (int it = 0; it < 16; ++it) {
      const LD residual = kernel.mu_increment_fixed(th0, th) - dmu;
      const LD delta = residual / kernel.integrand(th);
      th -= delta;
      if (std::abs(delta) <= 1e-21L * std::max<LD>(std::abs(th), LD(0.25L)))
        break;
    }
    return kernel.x_of_theta(th);
  };
  const auto f1_of_radius = [&](LD x) -> LD {
    return std::sqrt(-1.0L + 2.0L * m / x - q2 / (x * x) - lam * x * x);
  };

  const LD r_center = static_cast<LD>(r);
  const LD f1_center = f1_of_radius(r_center);

  struct Derivs {
    LD f1p, f1pp, f2p, f2pp;
  };
  const auto stencil = [&](LD hs) -> Derivs {
    const LD r_pl = radius_at_offset(hs);
    const LD r_mn = radius_at_offset(-hs);
    const LD f1_pl = f1_of_radius(r_pl);
    const LD f1_mn = f1_of_radius(r_mn);
    Derivs d;
    d.f2p = (r_pl - r_mn) / (2.0L * hs);
    d.f2pp = (r_pl - 2.0L * r_center + r_mn) / (hs * hs);
    d.f1p = (f1_pl - f1_mn) / (2.0L * hs);
    d.f1pp = (f1_pl - 2.0L * f1_center + f1_mn) / (hs * hs);
    return d;
  };

  Derivs d = stencil(static_cast<LD>(step));
  if (richardson) {
    const Derivs d2 = stencil(static_cast<LD>(step) / 2.0L);
    d.f1p = (4.0L * d2.f1p - d.f1p) / 3.0L;
    d.f1pp = (4.0L * d2.f1pp - d.f1pp) / 3.0L;
    d.f2p = (4.0L * d2.f2p - d.f2p) / 3.0L;
    d.f2pp = (4.0L * d2.f2pp - d.f2pp) / 3.0L;
  }

  WarpFrame out;
  out.mu = mu0;
  out.r = r;
  out.f2 = r;
  out.f1 = static_cast<double>(f1_center);
  out.f1_prime = static_cast<double>(d.f1p);
  out.f2_prime = static_cast<double>(d.f2p);
  out.f1_pprime = static_cast<double>(d.f1pp);
  out.f2_pprime = static_cast<double>(d.f2pp);
  return out;
}

ContinuityReport horizon_continuity_check(const SpacetimeParams& params,
                                          std::span<const double> epsilons) {
  params.validate();
  ContinuityReport rep;
  rep.horizons = solve_horizons(params);
  rep.at_horizon = closed_form_raw(params, rep.horizons.r_plus);
  const double gap = rep.horizons.gap;

  const auto fields = [](const RicciComponents& c) {
    return std::array<double, 5>{c.r_mumu, c.r_tt, c.r_thth,
                                 c.r_phph_over_sin2, c.scalar};
  };
  const auto target = fields(rep.at_horizon);

  for (const double eps : epsilons) {
    if (!(eps > 0.0 && eps < gap))
      throw DomainError(
          "horizon_continuity_check: epsilon outside (0, r_plus - r_minus)");
    ContinuityRow row;
    row.epsilon = eps;
    row.value = closed_form_raw(params, rep.horizons.r_plus - eps);
    const auto vals = fields(row.value);
    for (int c = 0; c < 5; ++c) {
      const double dev =
          std::abs(vals[c] - target[c]) / std::max(1.0, std::abs(target[c]));
      row.max_norm_dev = std::max(row.max_norm_dev, dev);
    }
    rep.rows.push_back(row);
  }

  // Linear convergence relative to the widest-epsilon row, component by
  // component, with an absolute floor for entries that are exactly constant.
  auto sorted = rep.rows;
  std::sort(sorted.begin(), sorted.end(),
            [](const ContinuityRow& a, const ContinuityRow& b) {
              return a.epsilon > b.epsilon;
            });
  bool ok = !sorted.empty();
  if (ok) {
    const auto base = fields(sorted.front().value);
    for (std::size_t k = 1; k < sorted.size(); ++k) {
      const auto vals = fields(sorted[k].value);
      const double ratio = sorted[k].epsilon / sorted.front().epsilon;
      for (int c = 0; c < 5; ++c) {
        const double scale = std::max(1.0, std::abs(target[c]));
        const double dev0 = std::abs(base[c] - target[c]);
        const double dev = std::abs(vals[c] - target[c]);
        if (dev > 8.0 * dev0 * ratio + 1e-12 * scale) ok = false;
      }
    }
  }
  rep.converges_linearly = ok;
  return rep;
}

} // namespace warped
