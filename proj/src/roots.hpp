#pragma once

#include <cmath>

#include "swarm/error.hpp"

namespace swarm::detail {

/// Bisection for a sign change of f on [lo, hi]; stops once the bracket is
/// narrower than `tol` or after 300 halvings.
template <class F>
double bisect(F&& f, double lo, double hi, double tol) {
  double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if (std::signbit(f_lo) == std::signbit(f_hi))
    throw Error(ErrorCode::bracket_failure, "root is not bracketed");
  for (int i = 0; i < 300 && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if (std::signbit(f_mid) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace swarm::detail
