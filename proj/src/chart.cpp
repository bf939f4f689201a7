#include "warped/chart.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "warped/roots.hpp"

namespace warped {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

} // namespace

void MuChart::finalize() {
  kernel_ = detail::ChartKernel<double>::make(params_, horizons_);
  thetas_.resize(table_.size());
  for (std::size_t k = 0; k < table_.size(); ++k)
    thetas_[k] = kernel_.theta_of_r(table_[k].r);
  thetas_.front() = -kHalfPi;
  thetas_.back() = kHalfPi;
  eval_abs_tol_ = quad_tol_ * std::max(1.0, mu_max_);
  inv_abs_tol_ = inv_tol_ * std::max(1.0, mu_max_);
}

MuChart build_chart(const SpacetimeParams& params, int samples,
                    double quad_tol, double inv_tol) {
  params.validate();
  if (samples < MuChart::kMinSamples)
    throw std::invalid_argument("build_chart: needs at least " +
                                std::to_string(MuChart::kMinSamples) +
                                " samples (got " + std::to_string(samples) +
                                ")");
  if (!(quad_tol > 0.0) || !(inv_tol > 0.0))
    throw std::invalid_argument("build_chart: tolerances must be positive");

  MuChart chart;
  chart.params_ = params;
  chart.horizons_ = solve_horizons(params);
  chart.family_ = classify(params);
  chart.quad_tol_ = quad_tol;
  chart.inv_tol_ = inv_tol;

  const auto kernel =
      detail::ChartKernel<double>::make(params, chart.horizons_);

  // Chebyshev-Lobatto angles: dense near +-pi/2, i.e. near the horizons.
  const int n = samples;
  std::vector<double> thetas(n);
  for (int k = 0; k < n; ++k)
    thetas[k] = -kHalfPi * std::cos(std::numbers::pi * k / (n - 1));
  thetas.front() = -kHalfPi;
  thetas.back() = kHalfPi;

  // Rough magnitude of the whole integral fixes the absolute tolerance
  // budget, split across the panel sums.
  const double rough =
      std::abs(kernel.mu_increment_fixed(-kHalfPi, kHalfPi));
  const double total_abs_tol = quad_tol * std::max(1.0, rough);
  const double panel_abs_tol = total_abs_tol / (n - 1);

  chart.table_.resize(n);
  chart.table_[0] = {chart.horizons_.r_minus, 0.0};
  double mu = 0.0;
  for (int k = 1; k < n; ++k) {
    mu += kernel.mu_increment(thetas[k - 1], thetas[k], quad_tol,
                              panel_abs_tol);
    const double r =
        k == n - 1 ? chart.horizons_.r_plus : kernel.x_of_theta(thetas[k]);
    chart.table_[k] = {r, mu};
    if (!(chart.table_[k].mu > chart.table_[k - 1].mu))
      throw std::runtime_error("build_chart: table lost monotonicity");
  }
  chart.mu_max_ = mu;
  chart.finalize();
  return chart;
}

MuChart MuChart::restore(const SpacetimeParams& params,
                         const HorizonData& horizons, double mu_max,
                         double quad_tol, double inv_tol,
                         std::vector<ChartNode> table) {
  params.validate();
  if (table.size() < static_cast<std::size_t>(kMinSamples))
    throw std::invalid_argument("MuChart::restore: table too small");
  if (!(horizons.r_plus > horizons.r_minus) || horizons.r_minus < 0.0)
    throw std::invalid_argument("MuChart::restore: bad horizon data");
  if (table.front().r != horizons.r_minus || table.front().mu != 0.0 ||
      table.back().r != horizons.r_plus || table.back().mu != mu_max)
    throw std::invalid_argument(
        "MuChart::restore: table endpoints disagree with horizons/mu_max");
  for (std::size_t k = 1; k < table.size(); ++k)
    if (!(table[k].r > table[k - 1].r && table[k].mu > table[k - 1].mu))
      throw std::invalid_argument("MuChart::restore: table not monotone");

  MuChart chart;
  chart.params_ = params;
  chart.horizons_ = horizons;
  chart.family_ = classify(params);
  chart.mu_max_ = mu_max;
  chart.quad_tol_ = quad_tol;
  chart.inv_tol_ = inv_tol;
  chart.table_ = std::move(table);
  chart.finalize();
  return chart;
}

double MuChart::mu_at(double r) const {
  if (!(r >= horizons_.r_minus && r <= horizons_.r_plus))
    throw DomainError("mu_at: r=" + std::to_string(r) +
                      " is outside [r_minus, r_plus]");
  if (r == horizons_.r_minus) return 0.0;
  if (r == horizons_.r_plus) return mu_max_;

  const double theta = kernel_.theta_of_r(r);
  const auto it = std::upper_bound(thetas_.begin(), thetas_.end(), theta);
  const std::size_t k = static_cast<std::size_t>(it - thetas_.begin()) - 1;
  return table_[k].mu +
         kernel_.mu_increment(thetas_[k], theta, quad_tol_, eval_abs_tol_);
}

double MuChart::r_at(double mu) const {
  if (!(mu >= 0.0 && mu <= mu_max_))
    throw DomainError("r_at: mu=" + std::to_string(mu) +
                      " is outside [0, mu_max]");
  if (mu == 0.0) return horizons_.r_minus;
  if (mu == mu_max_) return horizons_.r_plus;

  const auto cmp = [](const ChartNode& node, double value) {
    return node.mu < value;
  };
  const auto it = std::lower_bound(table_.begin(), table_.end(), mu, cmp);
  std::size_t hi_idx = static_cast<std::size_t>(it - table_.begin());
  if (hi_idx == 0) hi_idx = 1;
  const std::size_t lo_idx = hi_idx - 1;
  const ChartNode lo = table_[lo_idx];
  const ChartNode hi = table_[hi_idx];

  // Seed. In the outermost intervals F behaves like a square root of the
  // distance to the horizon, so Newton from a linear guess crawls; the local
  // model F ~ C sqrt(r - r_minus) (and its mirror at r_plus) gives a seed
  // that is already accurate to a few percent there.
  double seed;
  const double gap = horizons_.r_plus - horizons_.r_minus;
  if (lo_idx == 0) {
    if (horizons_.r_minus > 0.0) {
      const double c =
          2.0 * horizons_.r_minus /
          std::sqrt(gap * kernel_.quad_factor(horizons_.r_minus));
      seed = horizons_.r_minus + (mu / c) * (mu / c);
    } else {
      // F ~ (2/3) r^{3/2} / sqrt(r_plus g(0)) when the inner horizon sits
      // at the curvature origin.
      const double scale = horizons_.r_plus * kernel_.quad_factor(0.0);
      seed = std::cbrt(2.25 * mu * mu * scale);
    }
  } else if (hi_idx == table_.size() - 1) {
    const double c = 2.0 * horizons_.r_plus /
                     std::sqrt(gap * kernel_.quad_factor(horizons_.r_plus));
    const double dmu = (mu_max_ - mu) / c;
    seed = horizons_.r_plus - dmu * dmu;
  } else {
    const double t = (mu - lo.mu) / (hi.mu - lo.mu);
    const double theta =
        thetas_[lo_idx] + t * (thetas_[hi_idx] - thetas_[lo_idx]);
    seed = kernel_.x_of_theta(theta);
  }
  seed = std::clamp(seed, lo.r, hi.r);

  const auto f = [&](double r) { return mu_at(r) - mu; };
  const auto df = [&](double r) {
    const double n2 = kernel_.lapse_sq(r);
    return n2 > 0.0 ? 1.0 / std::sqrt(n2) : 0.0; // 0 forces bisection
  };
  return newton_bisect<double>(f, df, lo.r, hi.r, seed, inv_abs_tol_, 0.0,
                               100);
}

double mu_of_r(const MuChart& chart, double r) { return chart.mu_at(r); }
double r_of_mu(const MuChart& chart, double mu) { return chart.r_at(mu); }

double rn_mu_analytic(double m, double r_plus, double r_minus, double r) {
  if (!(m > 0.0) || !(r_plus > r_minus) || r_minus < 0.0)
    throw std::invalid_argument("rn_mu_analytic: bad parameters");
  if (!(r >= r_minus && r <= r_plus))
    throw DomainError("rn_mu_analytic: r outside [r_minus, r_plus]");
  const double u = std::clamp((r_plus - r) / (r_plus - r_minus), 0.0, 1.0);
  return 2.0 * m * std::acos(std::sqrt(u)) -
         std::sqrt((r_plus - r) * (r - r_minus));
}

double rn_mu_analytic_uncorrected(double m, double r_plus, double r_minus,
                                  double r) {
  if (!(m > 0.0) || !(r_plus > r_minus) || r_minus < 0.0)
    throw std::invalid_argument("rn_mu_analytic_uncorrected: bad parameters");
  if (!(r >= r_minus && r <= r_plus))
    throw DomainError("rn_mu_analytic_uncorrected: r outside [r_minus, r_plus]");
  const double u = std::clamp((r_plus - r) / (r_plus - r_minus), 0.0, 1.0);
  return 2.0 * m * std::acos(u) - std::sqrt((r_plus - r) * (r - r_minus));
}

} // namespace warped
