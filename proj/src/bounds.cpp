#include "fadesplit/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "fadesplit/special.hpp"

namespace fadesplit {

namespace {

constexpr double kLn2 = 0.69314718055994530942;
constexpr double kUnderflowExponent = -745.0;

// lam ln(1 + rho/(1+lam)) - lam R ln2; concave in lam on [0, 1].
double gallager_exponent(double lam, double R, double rho) {
  return lam * std::log1p(rho / (1.0 + lam)) - lam * R * kLn2;
}

// Golden-section maximum to 1e-10 in lam, then endpoint checks.
double max_exponent(double R, double rho) {
  constexpr double invphi = 0.61803398874989484820;
  double a = 0.0, b = 1.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = gallager_exponent(c, R, rho);
  double fd = gallager_exponent(d, R, rho);
  while (b - a > 1e-10) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = gallager_exponent(c, R, rho);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = gallager_exponent(d, R, rho);
    }
  }
  double best = std::max(fc, fd);
  best = std::max(best, 0.0);  // lam = 0 endpoint
  best = std::max(best, gallager_exponent(1.0, R, rho));
  return best;
}

}  // namespace

double capacity(double rho) { return std::log2(1.0 + rho); }

double v_tot(double rho) {
  constexpr double log2e = 1.0 / kLn2;
  return log2e * log2e * 2.0 * rho / (1.0 + rho);
}

double err_exp(double n, double R, double rho) {
  double e = -n * max_exponent(R, rho);
  if (e < kUnderflowExponent) return 0.0;
  return std::min(1.0, std::exp(e));
}

double err_nor(double n, double R, double rho) {
  double slack = 2.0 / std::sqrt(n);
  if (slack >= 1.0) return 1.0;
  double v = v_tot(rho);
  if (v <= 0.0) return 1.0;
  double arg =
      (std::sqrt(n) * (R - capacity(rho)) + std::log2(n) / (2.0 * std::sqrt(n))) /
      std::sqrt(v);
  return std::min(1.0, std_normal_cdf(arg) + slack);
}

double err_bound(double n, double R, double rho) {
  if (n <= 0.0 || rho <= 0.0) return 1.0;
  return std::min(err_nor(n, R, rho), err_exp(n, R, rho));
}

}  // namespace fadesplit
