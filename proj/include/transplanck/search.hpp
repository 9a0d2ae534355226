#pragma once

#include <cmath>
#include <utility>

namespace transplanck::search {

/// Golden-section search for the maximum of a unimodal f on [lo, hi].
/// Stops when the bracket is narrower than rel_tol * |centre|; returns the
/// best abscissa seen.
template <class F>
double golden_section_max(F&& f, double lo, double hi, double rel_tol,
                          int max_iter = 400) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < max_iter; ++i) {
    if (b - a <= rel_tol * std::fabs(0.5 * (a + b))) break;
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? c : d;
}

/// Bisection for g(x) = 0 given g(lo) and g(hi) of opposite sign (or zero).
/// Terminates when hi - lo <= rel_tol * max(|lo|, |hi|) or the bracket stops
/// shrinking in floating point.
template <class G>
double bisect(G&& g, double lo, double hi, double rel_tol) {
  double glo = g(lo);
  if (glo == 0.0) return lo;
  if (g(hi) == 0.0) return hi;
  for (int i = 0; i < 2000; ++i) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (hi - lo <= rel_tol * std::fmax(std::fabs(lo), std::fabs(hi))) break;
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if ((gm < 0.0) == (glo < 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return lo + 0.5 * (hi - lo);
}

}  // namespace transplanck::search
