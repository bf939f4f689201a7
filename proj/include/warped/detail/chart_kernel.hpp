#ifndef WARPED_DETAIL_CHART_KERNEL_HPP
#define WARPED_DETAIL_CHART_KERNEL_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "warped/quadrature.hpp"
#include "warped/spacetime.hpp"

namespace warped::detail {

// Evaluation core for the interior coordinate integral
//
//   mu(r) = integral over [r_minus, r] of dx / N(x),
//   N^2(x) = (r_plus - x)(x - r_minus) g(x) / x^2,
//   g(x)   = lambda x^2 + lambda (r_plus + r_minus) x + c0,
//
// under the angle substitution x = s + d sin(theta) with s the midpoint and
// d the half-width of the interior interval. The half-power factor
// sqrt((r_plus - x)(x - r_minus)) equals d cos(theta) and cancels against
// dx = d cos(theta) dtheta, so the theta-integrand
//
//   x(theta) / sqrt(g(x(theta)))
//
// is smooth on the closed interval for every family: both inverse-square-root
// endpoint singularities are gone (for the uncharged families the extra
// sqrt(x) behaviour at x = 0 is absorbed the same way).
template <typename Real>
struct ChartKernel {
  Real r_minus = 0;
  Real r_plus = 0;
  Real s = 0;     // interval midpoint
  Real d = 0;     // interval half-width
  Real lam = 0;   // AdS curvature
  Real sigma = 0; // r_plus + r_minus
  Real c0 = 0;    // constant coefficient of g

  static ChartKernel make(const SpacetimeParams& params, const HorizonData& h) {
    ChartKernel k;
    k.r_minus = static_cast<Real>(h.r_minus);
    k.r_plus = static_cast<Real>(h.r_plus);
    k.s = (k.r_plus + k.r_minus) / 2;
    k.d = (k.r_plus - k.r_minus) / 2;
    k.lam = static_cast<Real>(params.ads_curvature);
    k.sigma = k.r_plus + k.r_minus;
    k.c0 = h.r_minus > 0.0
               ? static_cast<Real>(params.charge_sq) / (k.r_plus * k.r_minus)
               : 2 * static_cast<Real>(params.mass) / k.r_plus;
    return k;
  }

  Real x_of_theta(Real theta) const { return s + d * std::sin(theta); }

  Real theta_of_r(Real r) const {
    const Real t = std::clamp<Real>((r - s) / d, Real(-1), Real(1));
    return std::asin(t);
  }

  // g(x); strictly positive on [r_minus, r_plus] for nonextremal parameters.
  Real quad_factor(Real x) const { return (lam * x + lam * sigma) * x + c0; }

  Real integrand(Real theta) const {
    const Real x = x_of_theta(theta);
    return x / std::sqrt(quad_factor(x));
  }

  Real lapse_sq(Real r) const {
    return (r_plus - r) * (r - r_minus) * quad_factor(r) / (r * r);
  }

  // Integral of the theta-integrand over [theta0, theta1], adaptive.
  Real mu_increment(Real theta0, Real theta1, Real rel_tol, Real abs_tol) const {
    auto res = integrate_adaptive<Real>(
        [this](Real t) { return integrand(t); }, theta0, theta1, rel_tol,
        abs_tol);
    if (!res.converged)
      throw std::runtime_error(
          "chart quadrature failed to reach the requested tolerance");
    return res.value;
  }

  // Single fixed-rule pass, for short spans where adaptivity is unnecessary
  // and a branch-free evaluation (smooth in the endpoints) is wanted.
  Real mu_increment_fixed(Real theta0, Real theta1) const {
    Real gauss = 0;
    return detail::GaussKronrod15<Real>::apply(
        [this](Real t) { return integrand(t); }, theta0, theta1, &gauss);
  }
};

} // namespace warped::detail

#endif // WARPED_DETAIL_CHART_KERNEL_HPP
