#pragma once

#include <cmath>
#include <limits>
#include <utility>

namespace dyndet::detail {

/// Solves f(x) = target for increasing f on [lo, hi] with f(lo) <= target <= f(hi).
/// `fn(x)` returns {f(x), f'(x)}. Newton steps are accepted while they stay
/// inside the current bracket; otherwise the bracket is bisected. Converges to
/// the last representable double.
template <typename Real, typename Fn>
Real solve_increasing(Fn&& fn, Real target, Real lo, Real hi, Real x) {
  if (!(x > lo && x < hi))
    x = lo + (hi - lo) / 2;
  for (int iter = 0; iter < 200; ++iter) {
    const auto [f, df] = fn(x);
    const Real r = f - target;
    if (r == 0)
      return x;
    if (r < 0)
      lo = x;
    else
      hi = x;
    Real next = x - r / df;
    if (!(next > lo && next < hi) || !std::isfinite(next))
      next = lo + (hi - lo) / 2;
    if (next == x || next == lo || next == hi) {
      // Bracket exhausted at double resolution: pick the side with smaller residual.
      const Real rl = std::fabs(fn(lo).first - target);
      const Real rh = std::fabs(fn(hi).first - target);
      const Real rx = std::fabs(r);
      if (rl <= rh && rl <= rx)
        return lo;
      if (rh <= rx)
        return hi;
      return x;
    }
    const Real step = std::fabs(next - x);
    x = next;
    if (step <= 2 * std::numeric_limits<Real>::epsilon() * std::fmax(Real(1), std::fabs(x))) {
      // One more Newton step lands on the limiting double.
      const auto [f2, df2] = fn(x);
      const Real last = x - (f2 - target) / df2;
      return (last >= lo && last <= hi) ? last : x;
    }
  }
  return x;
}

} // namespace dyndet::detail
