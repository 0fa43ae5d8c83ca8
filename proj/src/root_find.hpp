#pragma once

// Internal bisection helpers shared by the two stationarity solvers.

#include <cmath>
#include <functional>
#include <vector>

namespace fadesplit::detail {

// Root of f on [lo, hi] given f(lo) and f(hi) of opposite sign (either
// may be zero). Stops when the bracket shrinks below xtol relative to
// its magnitude or |f| <= ftol, whichever first.
inline double bisect(const std::function<double(double)>& f, double lo,
                     double hi, double flo, double fhi, double xtol,
                     double ftol) {
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (hi - lo <= xtol * std::max(std::abs(mid), 1e-300)) return mid;
    double fm = f(mid);
    if (fm == 0.0 || std::abs(fm) <= ftol) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// All roots of f on [lo, hi]: uniform scan bracketing every sign change,
// then bisection per bracket. Grid nodes where f is exactly zero count
// as roots.
inline std::vector<double> scan_roots(const std::function<double(double)>& f,
                                      double lo, double hi, int points,
                                      double xtol, double ftol) {
  std::vector<double> roots;
  if (!(hi > lo)) {
    if (hi == lo && std::abs(f(lo)) <= ftol) roots.push_back(lo);
    return roots;
  }
  double step = (hi - lo) / (points - 1);
  double prev_x = lo;
  double prev_f = f(lo);
  if (prev_f == 0.0) roots.push_back(lo);
  for (int k = 1; k < points; ++k) {
    double x = (k == points - 1) ? hi : lo + k * step;
    double fx = f(x);
    if (fx == 0.0) {
      roots.push_back(x);
    } else if (prev_f != 0.0 && (fx > 0.0) != (prev_f > 0.0)) {
      roots.push_back(bisect(f, prev_x, x, prev_f, fx, xtol, ftol));
    }
    prev_x = x;
    prev_f = fx;
  }
  return roots;
}

}  // namespace fadesplit::detail
