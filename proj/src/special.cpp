#include "fadesplit/special.hpp"

#include <cmath>
#include <stdexcept>

namespace fadesplit {

const double psi_max = 4.0 * std::exp(-2.0);

namespace {

constexpr double kInvE = 0.36787944117144232160;  // 1/e
constexpr double kBranchSlack = 1e-14;

// Series about the branch point x = -1/e in p = sqrt(2(1 + e x)):
// W0  = -1 + p - p^2/3 + 11 p^3/72 - ...
// W-1 = -1 - p - p^2/3 - 11 p^3/72 - ...
double branch_series(double p, bool principal) {
  double s = principal ? 1.0 : -1.0;
  return -1.0 + s * p - p * p / 3.0 + s * (11.0 / 72.0) * p * p * p;
}

// Halley iteration on f(w) = w e^w - x; cubically convergent.
double halley(double w, double x) {
  for (int it = 0; it < 50; ++it) {
    double ew = std::exp(w);
    double f = w * ew - x;
    double wp1 = w + 1.0;
    double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    double dw = f / denom;
    w -= dw;
    if (dw == 0.0 || std::abs(dw) <= 1e-14 * std::abs(w)) break;
  }
  return w;
}

// Monotone fallback: f is increasing on [-1, 0] and decreasing on
// (-inf, -1], so plain bisection is safe on either branch.
double bisect_branch(double x, double lo, double hi, bool increasing) {
  for (int it = 0; it < 200 && hi - lo > 1e-17 * (1.0 + std::abs(lo)); ++it) {
    double mid = 0.5 * (lo + hi);
    double f = mid * std::exp(mid) - x;
    bool go_right = increasing ? (f < 0.0) : (f > 0.0);
    (go_right ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double checked_domain(double x, const char* name) {
  if (std::isnan(x) || x >= 0.0 || x < -kInvE - kBranchSlack)
    throw std::domain_error(std::string(name) + ": argument outside [-1/e, 0)");
  return x < -kInvE ? -kInvE : x;
}

bool residual_ok(double w, double x) {
  return std::abs(w * std::exp(w) - x) <= 1e-13 * std::abs(x);
}

}  // namespace

double lambert_w0(double x) {
  x = checked_domain(x, "lambert_w0");
  double p2 = 2.0 * (1.0 + M_E * x);
  if (p2 <= 0.0) return -1.0;
  double p = std::sqrt(p2);
  if (p < 1e-4) return branch_series(p, true);
  double w = x > -0.18 ? x * (1.0 - x * (1.0 - 1.5 * x))
                       : branch_series(p, true);
  w = halley(w, x);
  if (!(w >= -1.0 && w < 0.0) || !residual_ok(w, x))
    w = bisect_branch(x, -1.0, 0.0, true);
  return w;
}

double lambert_wm1(double x) {
  x = checked_domain(x, "lambert_wm1");
  double p2 = 2.0 * (1.0 + M_E * x);
  if (p2 <= 0.0) return -1.0;
  double p = std::sqrt(p2);
  if (p < 1e-4) return branch_series(p, false);
  double w;
  if (x < -0.32) {
    w = branch_series(p, false);
  } else {
    double l1 = std::log(-x);
    double l2 = std::log(-l1);
    w = l1 - l2 + l2 / l1;
  }
  w = halley(w, x);
  if (!(w <= -1.0) || !residual_ok(w, x))
    w = bisect_branch(x, -746.0, -1.0, false);
  return w;
}

double psi(double y) {
  if (!(y > 0.0)) throw std::domain_error("psi: argument must be positive");
  if (std::isinf(y)) return 0.0;  // y^2 e^{-y} would produce inf * 0
  return y * y * std::exp(-y);
}

namespace {

double checked_psi_level(double c, const char* name) {
  if (!(c > 0.0) || c > psi_max + 1e-12)
    throw std::domain_error(std::string(name) + ": level outside (0, 4e^-2]");
  return c > psi_max ? psi_max : c;
}

}  // namespace

double psi_inv_lower(double c) {
  c = checked_psi_level(c, "psi_inv_lower");
  return -2.0 * lambert_w0(-0.5 * std::sqrt(c));
}

double psi_inv_upper(double c) {
  c = checked_psi_level(c, "psi_inv_upper");
  return -2.0 * lambert_wm1(-0.5 * std::sqrt(c));
}

double std_normal_cdf(double z) {
  return 0.5 * std::erfc(-z * M_SQRT1_2);
}

}  // namespace fadesplit
