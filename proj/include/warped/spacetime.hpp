#ifndef WARPED_SPACETIME_HPP
#define WARPED_SPACETIME_HPP

#include <optional>
#include <string_view>

#include "warped/errors.hpp"

namespace warped {

/// Which member of the static, spherically symmetric charged/AdS family a
/// parameter set belongs to. Membership is decided by exact zero tests on
/// the squared charge and the AdS curvature: the family is part of the input
/// model, not a numerical accident.
enum class Family { RNAdS, SchwAdS, RN, Schw };

const char* to_string(Family family);
std::optional<Family> family_from_string(std::string_view name);

/// Black-hole parameters in geometric units (G = c = 1).
///
/// The AdS scale is carried as the curvature lambda = 1/l^2 rather than the
/// radius l, so the asymptotically flat limit l -> infinity is the ordinary
/// value lambda = 0 and the whole family is reachable along continuous
/// parameter paths.
struct SpacetimeParams {
  double mass = 1.0;          // m > 0
  double charge_sq = 0.0;     // Q^2 >= 0
  double ads_curvature = 0.0; // lambda = 1/l^2 >= 0

  /// Throws SchemeInapplicable for m <= 0, std::invalid_argument for
  /// negative or non-finite charge_sq / ads_curvature.
  static SpacetimeParams create(double mass, double charge_sq,
                                double ads_curvature);
  void validate() const;
};

Family classify(const SpacetimeParams& params);

/// Inner and outer horizon radii with diagnostics. For the uncharged
/// families r_minus is exactly 0.
struct HorizonData {
  double r_minus = 0.0;
  double r_plus = 0.0;
  double gap = 0.0; // r_plus - r_minus
  /// Normalized maximum of r^2 N^2 between the candidate roots; ~1 far from
  /// extremality, -> 0 as the horizons merge.
  double extremality_margin = 0.0;
};

/// Squared lapse N^2(r) = -1 + 2m/r - Q^2/r^2 - lambda r^2.
/// Positive strictly between the horizons, zero at them.
/// Throws DomainError for r <= 0.
double lapse_squared(const SpacetimeParams& params, double r);

/// The same quantity evaluated through its factorization over the horizon
/// roots, N^2 = (r_plus - r)(r - r_minus) g(r) / r^2 with g the positive
/// quadratic carrying the charge/curvature content. Only defined strictly
/// inside the interior interval; throws DomainError outside it.
double lapse_squared_factored(const SpacetimeParams& params,
                              const HorizonData& horizons, double r);

/// Finds the horizon radii.
///
/// RN uses the closed form m +- sqrt(m^2 - Q^2) (with the inner root taken
/// as Q^2/r_plus to avoid cancellation); Schw is r_plus = 2m exactly. The
/// AdS families locate the maximum of P(r) = r^2 N^2(r) through its
/// derivative cubic and then run safeguarded Newton on each side, with a
/// final extended-precision polish so |N^2(r_pm)| stays below 1e-12.
///
/// Throws ExtremalConfiguration when the interior collapses (max P below
/// 1e-12 m^2), NakedSingularity when P has no positive root, and
/// SchemeInapplicable for m <= 0.
HorizonData solve_horizons(const SpacetimeParams& params);

/// Result of inverting horizon radii back to (Q^2, lambda) at fixed mass.
struct HorizonInversion {
  double charge_sq = 0.0;
  double ads_curvature = 0.0;
};

/// Recovers Q^2 and lambda from 0 < r_minus < r_plus and the mass.
/// When 2m - r_plus - r_minus vanishes (to rounding), lambda is 0: that is
/// the asymptotically flat limit. Radii that would require Q^2 < 0 or
/// lambda < 0 throw InconsistentHorizons.
HorizonInversion params_from_horizons(double r_plus, double r_minus,
                                      double mass);

} // namespace warped

#endif // WARPED_SPACETIME_HPP
