#include "warped/spacetime.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "warped/roots.hpp"

namespace warped {

namespace {

constexpr double kExtremalityTol = 1e-12; // on max P / m^2

std::string describe(const SpacetimeParams& p) {
  return "m=" + std::to_string(p.mass) + ", Q^2=" + std::to_string(p.charge_sq) +
         ", lambda=" + std::to_string(p.ads_curvature);
}

// P(r) = r^2 N^2(r) = -lambda r^4 - r^2 + 2 m r - Q^2. Horizons are its
// positive roots; between them P > 0.
double quartic(const SpacetimeParams& p, double r) {
  return ((-p.ads_curvature * r * r - 1.0) * r + 2.0 * p.mass) * r - p.charge_sq;
}

double quartic_deriv(const SpacetimeParams& p, double r) {
  return -4.0 * p.ads_curvature * r * r * r - 2.0 * r + 2.0 * p.mass;
}

// One extended-precision Newton step; with a double-accurate seed this takes
// the residual of P to the long-double rounding floor.
double polish_root(const SpacetimeParams& p, double r) {
  const long double lam = p.ads_curvature;
  const long double m = p.mass;
  const long double q2 = p.charge_sq;
  long double x = r;
  for (int i = 0; i < 2; ++i) {
    const long double val = ((-lam * x * x - 1.0L) * x + 2.0L * m) * x - q2;
    const long double der = -4.0L * lam * x * x * x - 2.0L * x + 2.0L * m;
    if (der == 0.0L) break;
    x -= val / der;
  }
  return static_cast<double>(x);
}

} // namespace

const char* to_string(Family family) {
  switch (family) {
    case Family::RNAdS: return "RNAdS";
    case Family::SchwAdS: return "SchwAdS";
    case Family::RN: return "RN";
    case Family::Schw: return "Schw";
  }
  return "?";
}

std::optional<Family> family_from_string(std::string_view name) {
  if (name == "RNAdS") return Family::RNAdS;
  if (name == "SchwAdS") return Family::SchwAdS;
  if (name == "RN") return Family::RN;
  if (name == "Schw") return Family::Schw;
  return std::nullopt;
}

SpacetimeParams SpacetimeParams::create(double mass, double charge_sq,
                                        double ads_curvature) {
  SpacetimeParams p{mass, charge_sq, ads_curvature};
  p.validate();
  return p;
}

void SpacetimeParams::validate() const {
  if (!std::isfinite(mass) || !std::isfinite(charge_sq) ||
      !std::isfinite(ads_curvature))
    throw std::invalid_argument("SpacetimeParams: parameters must be finite");
  if (mass <= 0.0)
    throw SchemeInapplicable(
        "interior warped-product scheme requires m > 0 (got m=" +
        std::to_string(mass) + "); the lapse has no interior region otherwise");
  if (charge_sq < 0.0)
    throw std::invalid_argument("SpacetimeParams: charge_sq must be >= 0");
  if (ads_curvature < 0.0)
    throw std::invalid_argument("SpacetimeParams: ads_curvature must be >= 0");
}

Family classify(const SpacetimeParams& params) {
  params.validate();
  const bool charged = params.charge_sq != 0.0;
  const bool ads = params.ads_curvature != 0.0;
  if (charged && ads) return Family::RNAdS;
  if (ads) return Family::SchwAdS;
  if (charged) return Family::RN;
  return Family::Schw;
}

double lapse_squared(const SpacetimeParams& params, double r) {
  params.validate();
  if (!(r > 0.0))
    throw DomainError("lapse_squared: r must be positive (got r=" +
                      std::to_string(r) + ")");
  return -1.0 + 2.0 * params.mass / r - params.charge_sq / (r * r) -
         params.ads_curvature * r * r;
}

double lapse_squared_factored(const SpacetimeParams& params,
                              const HorizonData& horizons, double r) {
  params.validate();
  if (!(r > horizons.r_minus && r < horizons.r_plus))
    throw DomainError(
        "lapse_squared_factored: r must lie strictly inside (r_minus, r_plus)");
  const double rp = horizons.r_plus;
  const double rm = horizons.r_minus;
  // g(r) = lambda r^2 + lambda (r_plus + r_minus) r + c0, with c0 fixed by the
  // constant coefficient of P: c0 = Q^2/(r_plus r_minus) when the inner
  // horizon exists, and 2m/r_plus for the uncharged families (r_minus = 0).
  const double c0 =
      rm > 0.0 ? params.charge_sq / (rp * rm) : 2.0 * params.mass / rp;
  const double g = params.ads_curvature * r * r +
                   params.ads_curvature * (rp + rm) * r + c0;
  return (rp - r) * (r - rm) * g / (r * r);
}

HorizonData solve_horizons(const SpacetimeParams& params) {
  params.validate();
  const double m = params.mass;
  const double q2 = params.charge_sq;
  const double lam = params.ads_curvature;

  HorizonData h;

  if (lam == 0.0) {
    if (q2 == 0.0) {
      h.r_minus = 0.0;
      h.r_plus = 2.0 * m;
      h.extremality_margin = 1.0; // P(m) = m^2
    } else {
      const double disc = m * m - q2;
      h.extremality_margin = disc / (m * m);
      if (disc < -kExtremalityTol * m * m)
        throw NakedSingularity("no horizon: Q^2 > m^2 (" + describe(params) + ")");
      if (disc < kExtremalityTol * m * m)
        throw ExtremalConfiguration("coincident horizons: Q^2 = m^2 (" +
                                    describe(params) + ")");
      h.r_plus = m + std::sqrt(disc);
      h.r_minus = polish_root(params, q2 / h.r_plus);
    }
    h.gap = h.r_plus - h.r_minus;
    return h;
  }

  // AdS families: P is strictly concave on r > 0 with P'(0) = 2m > 0 and
  // P'(m) = -4 lambda m^3 < 0, so its unique maximum lies in (0, m).
  const double r_star = newton_bisect<double>(
      [&](double r) { return quartic_deriv(params, r); },
      [&](double r) { return -12.0 * lam * r * r - 2.0; }, 0.0, m, 0.5 * m,
      0.0, 1e-15 * m);
  const double p_max = quartic(params, r_star);
  h.extremality_margin = p_max / (m * m);
  if (p_max < -kExtremalityTol * m * m)
    throw NakedSingularity("no horizon: r^2 N^2 < 0 everywhere (" +
                           describe(params) + ")");
  if (p_max < kExtremalityTol * m * m)
    throw ExtremalConfiguration("coincident horizons (" + describe(params) + ")");

  const auto P = [&](double r) { return quartic(params, r); };
  const auto dP = [&](double r) { return quartic_deriv(params, r); };

  if (q2 == 0.0) {
    h.r_minus = 0.0; // r = 0 is an exact root of P when Q^2 = 0
  } else {
    // P(0) = -Q^2 < 0 < P(r_star)
    const double seed = std::min(q2 / (2.0 * m), 0.5 * r_star);
    h.r_minus = polish_root(
        params, newton_bisect<double>(P, dP, 0.0, r_star, seed, 0.0,
                                      1e-15 * std::max(1.0, r_star)));
  }
  // P(2m) = -16 lambda m^4 - Q^2 < 0, and r_star < m < 2m.
  h.r_plus = polish_root(
      params, newton_bisect<double>(P, dP, r_star, 2.0 * m,
                                    0.5 * (r_star + 2.0 * m), 0.0, 1e-15 * m));
  h.gap = h.r_plus - h.r_minus;
  return h;
}

HorizonInversion params_from_horizons(double r_plus, double r_minus,
                                      double mass) {
  if (!std::isfinite(r_plus) || !std::isfinite(r_minus) || !std::isfinite(mass))
    throw std::invalid_argument("params_from_horizons: inputs must be finite");
  if (mass <= 0.0)
    throw SchemeInapplicable("params_from_horizons: mass must be positive");
  if (!(r_minus > 0.0 && r_plus > r_minus))
    throw DomainError(
        "params_from_horizons: requires 0 < r_minus < r_plus");

  const double sum = r_plus + r_minus;
  const double sq = r_plus * r_plus + r_minus * r_minus;
  const double denom = sum * sq;

  const double q2_num =
      r_plus * r_minus *
      (2.0 * mass * (r_plus * r_plus + r_plus * r_minus + r_minus * r_minus) -
       r_plus * r_minus * sum);
  const double charge_sq = q2_num / denom;
  if (charge_sq < 0.0)
    throw InconsistentHorizons(
        "params_from_horizons: radii imply a negative squared charge");

  // lambda = (2m - r_plus - r_minus) / ((r_plus + r_minus)(r_plus^2 + r_minus^2)).
  // Round-tripped flat-limit horizons satisfy 2m = r_plus + r_minus only up
  // to rounding, so a residual below a few ulps of the operand scale is
  // snapped to lambda = 0 before the sign check.
  double excess = 2.0 * mass - sum;
  const double snap = 32.0 * std::numeric_limits<double>::epsilon() *
                      (2.0 * mass + sum);
  if (std::abs(excess) <= snap) excess = 0.0;
  if (excess < 0.0)
    throw InconsistentHorizons(
        "params_from_horizons: radii imply a negative curvature (2m < r_plus + "
        "r_minus)");
  const double ads_curvature = excess / denom;
  return {charge_sq, ads_curvature};
}

} // namespace warped
