#ifndef WARPED_GEOMETRY_HPP
#define WARPED_GEOMETRY_HPP

#include <optional>
#include <span>
#include <vector>

#include "warped/chart.hpp"
#include "warped/spacetime.hpp"

namespace warped {

/// The two warping functions and their coordinate derivatives at one interior
/// point: f1 scales the (spacelike) t fiber, f2 = r scales the 2-sphere
/// fiber, primes are d/dmu. Satisfies f2_prime = f1 and f1^2 = N^2(r).
struct WarpFrame {
  double mu = 0.0;
  double r = 0.0; // == f2
  double f1 = 0.0;
  double f2 = 0.0;
  double f1_prime = 0.0;
  double f2_prime = 0.0;
  double f1_pprime = 0.0;
  double f2_pprime = 0.0;
};

/// The four nonvanishing Ricci entries of the warped-product metric
/// diag(-1, f1^2, f2^2, f2^2 sin^2(theta)), plus the scalar curvature.
/// The phi-phi entry is stored divided by sin^2(theta), so the table is
/// independent of the polar angle; r_phph_over_sin2 == r_thth identically.
struct RicciComponents {
  double r_mumu = 0.0;
  double r_tt = 0.0;
  double r_thth = 0.0;
  double r_phph_over_sin2 = 0.0;
  double scalar = 0.0;
};

/// An interior evaluation point, addressed by radius or by the chart
/// coordinate (one determines the other through a MuChart), plus the polar
/// angle used only to reconstitute the phi-phi curvature entry.
struct EvaluationPoint {
  std::optional<double> r;
  std::optional<double> mu;
  double theta = 1.5707963267948966; // equator

  static EvaluationPoint at_radius(double r,
                                   double theta = 1.5707963267948966);
  static EvaluationPoint at_mu(double mu, double theta = 1.5707963267948966);
};

/// Evaluates the warp functions and their mu-derivatives at a strictly
/// interior point, using the closed derivative identities
///   f2' = f1,
///   f1' = -m/f2^2 + Q^2/f2^3 - lambda f2,
///   f1'' = -2 f1 f1'/f2 - Q^2 f1/f2^4 - 3 lambda f1,
///   f2'' = f1'.
/// Throws DomainError on or beyond a horizon (where f1 vanishes).
WarpFrame warp_frame(const MuChart& chart, const EvaluationPoint& point);

/// Ricci components of the generic two-fiber warped product:
///   R_mumu   = -f1''/f1 - 2 f2''/f2
///   R_tt     = 2 f1 f1' f2'/f2 + f1 f1''
///   R_thth   = f1' f2 f2'/f1 + f2 f2'' + f2'^2 + 1
///   R_phph   = R_thth sin^2(theta)
/// with the scalar filled in by contract_scalar. Throws DomainError for a
/// singular frame (f1 = 0 or f2 = 0).
RicciComponents ricci_from_frame(const WarpFrame& frame);

/// Family closed forms, one expression for the whole family (charge and
/// curvature terms drop out by evaluating to zero):
///   R_mumu = Q^2/r^4 + 3 lambda,   R_tt = -N^2 (Q^2/r^4 + 3 lambda),
///   R_thth = Q^2/r^2 - 3 lambda r^2,   scalar = -12 lambda.
/// Throws DomainError unless r is strictly interior.
RicciComponents ricci_closed_form(const SpacetimeParams& params, double r);
RicciComponents ricci_closed_form(const SpacetimeParams& params,
                                  const HorizonData& horizons, double r);

/// Trace against diag(-1, f1^2, f2^2, f2^2 sin^2):
///   R = -R_mumu + R_tt/f1^2 + R_thth/f2^2 + R_phph_over_sin2/f2^2.
/// The angle dependence cancels. Throws DomainError for zero warp factors.
double contract_scalar(const RicciComponents& components, double f1,
                       double f2);

/// R_phph at a given polar angle, from the stored angle-free entry.
double reconstitute_r_phph(const RicciComponents& components, double theta);

/// 1e-4 of the interior width: the default finite-difference step.
double default_fd_step(const HorizonData& horizons);

/// Independent derivative oracle: builds f1(mu), f2(mu) purely by inverting
/// the chart integral and sampling the lapse, then forms centered
/// second-order stencils in mu. No closed derivative identity enters.
/// Internally runs in extended precision so the stencil roundoff stays far
/// below the truncation error and second-order convergence is observable.
///
/// Requires min(r - r_minus, r_plus - r) >= 4*step and enough chart room for
/// the stencil; throws DomainError otherwise. With `richardson` set, one
/// extrapolation level is applied to every derivative.
WarpFrame finite_difference_frame(const MuChart& chart, double r, double step,
                                  bool richardson = false);

struct ContinuityRow {
  double epsilon = 0.0;
  RicciComponents value;
  double max_norm_dev = 0.0; // max over components of |dev| / max(1, |target|)
};

/// One-sided approach of the closed-form curvature to the outer horizon.
struct ContinuityReport {
  HorizonData horizons;
  RicciComponents at_horizon; // closed forms evaluated at r_plus (finite)
  std::vector<ContinuityRow> rows;
  bool converges_linearly = false;
};

/// Evaluates the closed forms at r_plus - epsilon for each epsilon and checks
/// that the deviation from the r_plus values shrinks linearly with epsilon.
/// Epsilons must lie in (0, r_plus - r_minus).
ContinuityReport horizon_continuity_check(const SpacetimeParams& params,
                                          std::span<const double> epsilons);

} // namespace warped

#endif // WARPED_GEOMETRY_HPP
