#ifndef WARPED_ROOTS_HPP
#define WARPED_ROOTS_HPP

#include <cmath>
#include <stdexcept>
#include <string>

namespace warped {

/// Safeguarded Newton iteration on a bracket [lo, hi] with f(lo) and f(hi) of
/// opposite sign (either may be zero). Newton steps are taken from `guess`
/// while they stay inside the current bracket; otherwise the step falls back
/// to bisection. The bracket shrinks monotonically, so the iteration cannot
/// escape or cycle.
///
/// Stops when |f| <= f_tol or the bracket width drops below x_tol. If the
/// bracket collapses to two adjacent representable values before reaching
/// f_tol, the endpoint with the smaller residual is returned: no further
/// progress is representable. Throws std::runtime_error after max_iter
/// iterations without convergence.
template <typename Real, typename F, typename DF>
Real newton_bisect(F&& f, DF&& df, Real lo, Real hi, Real guess, Real f_tol,
                   Real x_tol, int max_iter = 100) {
  Real flo = f(lo);
  Real fhi = f(hi);
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  if ((flo > 0) == (fhi > 0))
    throw std::runtime_error("newton_bisect: endpoints do not bracket a root");
  if (std::abs(flo) <= f_tol || std::abs(fhi) <= f_tol)
    return std::abs(flo) <= std::abs(fhi) ? lo : hi;

  Real x = guess;
  if (!(x > lo && x < hi)) x = lo + (hi - lo) / 2;

  for (int it = 0; it < max_iter; ++it) {
    const Real fx = f(x);
    if (std::abs(fx) <= f_tol) return x;
    // Maintain the bracket around the sign change.
    if ((fx > 0) == (fhi > 0)) {
      hi = x;
      fhi = fx;
    } else {
      lo = x;
      flo = fx;
    }
    if (hi - lo <= x_tol) return lo + (hi - lo) / 2;
    const Real mid = lo + (hi - lo) / 2;
    if (!(mid > lo && mid < hi))
      return std::abs(flo) <= std::abs(fhi) ? lo : hi;

    const Real d = df(x);
    Real next = d != 0 ? x - fx / d : mid;
    if (!(next > lo && next < hi) || !std::isfinite(static_cast<double>(next)))
      next = mid;
    x = next;
  }
  throw std::runtime_error("newton_bisect: no convergence in " +
                           std::to_string(max_iter) + " iterations");
}

} // namespace warped

#endif // WARPED_ROOTS_HPP
