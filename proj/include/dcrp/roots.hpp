#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "dcrp/error.hpp"

namespace dcrp::roots {

struct Bracket {
  double lo;
  double hi;
};

/// Bisection on a bracket with a sign change. Iterates until the interval is
/// below x_tol (absolute) or stops shrinking in floating point.
template <typename F>
double bisect(F&& f, double lo, double hi, double x_tol = 0.0, int max_iter = 400) {
  double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo < 0.0) == (f_hi < 0.0)) {
    throw Error(ErrorKind::NoBracket, "no sign change on [" + std::to_string(lo) + ", " +
                                          std::to_string(hi) + "]");
  }
  for (int i = 0; i < max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi || hi - lo <= x_tol) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Grow hi geometrically from a fixed lo until f changes sign.
template <typename F>
std::optional<Bracket> expand_upward(F&& f, double lo, double hi, double factor = 2.0,
                                     int max_steps = 200) {
  const bool neg_lo = f(lo) < 0.0;
  for (int i = 0; i < max_steps; ++i) {
    const double f_hi = f(hi);
    if (f_hi == 0.0 || (f_hi < 0.0) != neg_lo) return Bracket{lo, hi};
    lo = hi;
    hi *= factor;
  }
  return std::nullopt;
}

}  // namespace dcrp::roots
