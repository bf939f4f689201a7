#ifndef WARPED_CHART_HPP
#define WARPED_CHART_HPP

#include <vector>

#include "warped/detail/chart_kernel.hpp"
#include "warped/spacetime.hpp"

namespace warped {

struct ChartNode {
  double r = 0.0;
  double mu = 0.0;
};

/// The interior coordinate chart mu = F(r): a tabulated, invertible,
/// strictly monotone correspondence between the area radius r on
/// [r_minus, r_plus] and the proper-distance-like coordinate mu on
/// [0, mu_max]. Immutable after construction; safe to share across threads.
class MuChart {
public:
  static constexpr int kDefaultSamples = 512;
  static constexpr double kDefaultQuadTol = 1e-10;
  static constexpr double kDefaultInvTol = 1e-10;
  static constexpr int kMinSamples = 16;

  const SpacetimeParams& params() const { return params_; }
  const HorizonData& horizons() const { return horizons_; }
  Family family() const { return family_; }
  double mu_max() const { return mu_max_; }
  double quad_tol() const { return quad_tol_; }
  double inv_tol() const { return inv_tol_; }
  /// Monotone (r, mu) pairs at Chebyshev-spaced angle nodes; first row is
  /// (r_minus, 0), last row is (r_plus, mu_max).
  const std::vector<ChartNode>& table() const { return table_; }

  /// F(r). Exact 0 at r_minus and mu_max at r_plus; DomainError outside
  /// [r_minus, r_plus].
  double mu_at(double r) const;

  /// F^{-1}(mu) to |F(r) - mu| <= inv_tol * max(1, mu_max). DomainError
  /// outside [0, mu_max]. For mu within ~sqrt(ulp) of an endpoint the exact
  /// preimage can fall between adjacent representable radii; the closest
  /// representable radius is returned then.
  double r_at(double mu) const;

  /// Rebuilds a chart from serialized parts without redoing the quadrature.
  /// Structural validation only; callers own the provenance of the data.
  static MuChart restore(const SpacetimeParams& params,
                         const HorizonData& horizons, double mu_max,
                         double quad_tol, double inv_tol,
                         std::vector<ChartNode> table);

private:
  MuChart() = default;
  friend MuChart build_chart(const SpacetimeParams&, int, double, double);
  void finalize();

  SpacetimeParams params_;
  HorizonData horizons_;
  Family family_ = Family::Schw;
  double mu_max_ = 0.0;
  double quad_tol_ = kDefaultQuadTol;
  double inv_tol_ = kDefaultInvTol;
  std::vector<ChartNode> table_;

  // derived, not serialized
  std::vector<double> thetas_;
  detail::ChartKernel<double> kernel_;
  double eval_abs_tol_ = 0.0;
  double inv_abs_tol_ = 0.0;
};

/// Solves the horizons and tabulates F at `samples` Chebyshev-spaced angle
/// nodes (clustered toward the horizons, where F bends). Node values come
/// from adaptive Gauss-Kronrod panel sums, so mu_max carries the full
/// quadrature tolerance budget. Requires samples >= MuChart::kMinSamples.
MuChart build_chart(const SpacetimeParams& params,
                    int samples = MuChart::kDefaultSamples,
                    double quad_tol = MuChart::kDefaultQuadTol,
                    double inv_tol = MuChart::kDefaultInvTol);

double mu_of_r(const MuChart& chart, double r);
double r_of_mu(const MuChart& chart, double mu);

/// Closed-form chart for the asymptotically flat charged family,
///
///   F(r) = 2m arccos( sqrt((r_plus - r)/(r_plus - r_minus)) )
///          - sqrt((r_plus - r)(r - r_minus)),
///
/// normalized to F(r_minus) = 0; F(r_plus) = m pi. This is the antiderivative
/// of r / sqrt((r_plus - r)(r - r_minus)), the flat-limit chart integrand,
/// and doubles as the quadrature oracle for that family (r_minus = 0 gives
/// the uncharged case).
double rn_mu_analytic(double m, double r_plus, double r_minus, double r);

/// Nearby closed form with the arccos argument not square-rooted. It matches
/// rn_mu_analytic at both endpoints but does not differentiate to the chart
/// integrand, so it disagrees with the quadrature in between. Kept as a
/// negative control for the validation suite.
double rn_mu_analytic_uncorrected(double m, double r_plus, double r_minus,
                                  double r);

} // namespace warped

#endif // WARPED_CHART_HPP
