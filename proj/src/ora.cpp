#include "fadesplit/ora.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "root_find.hpp"

namespace fadesplit::ora {

namespace {

constexpr double kLn2 = 0.69314718055994530942;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Exponent of t(v): -theta (2^{R/v} - 1)/(2^R - 1), computed via expm1
// so that marginal v stays finite as long as 2^{R/v} does.
double t_exponent(double v, double R, double theta) {
  double a = (R / v) * kLn2;
  return -theta * std::expm1(a) / (std::exp2(R) - 1.0);
}

void check_inputs(double theta, double R, const std::vector<double>& d) {
  if (!(theta > 0.0) || !(R > 0.0))
    throw std::invalid_argument("ora: theta and R must be positive");
  if (d.size() < 2) throw std::invalid_argument("ora: need at least 2 blocks");
}

// N(v) = R ln2 (theta 2^{R/v}/(2^R - 1) - 1) - 2v; strictly decreasing,
// +inf at v -> 0+, negative at 1 iff theta < theta_crit. Its sign is the
// sign of U'.
double stationarity_gap(double v, double R, double theta) {
  double a = (R / v) * kLn2;
  double growth = theta * std::exp(a) / (std::exp2(R) - 1.0);
  return R * kLn2 * (growth - 1.0) - 2.0 * v;
}

// Monotone Newton/bisection hybrid for u_log(v) = lnC on [lo, hi].
// flo/fhi are the signs of u_log - lnC at the ends (either may be
// infinite); du/dv = U'/U = N(v)/v^2.
double invert_u_log(double lnC, double lo, double hi, double flo, double fhi,
                    double R, double theta) {
  bool increasing = fhi > flo;
  double v = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    double f = u_log(v, R, theta) - lnC;
    if (std::abs(f) <= 1e-12) return v;
    if ((f < 0.0) == increasing)
      lo = v;
    else
      hi = v;
    if (hi - lo <= 1e-15 * std::max(hi, 1e-300)) break;
    double slope = stationarity_gap(v, R, theta) / (v * v);
    double step = slope != 0.0 && std::isfinite(slope) ? f / slope : 0.0;
    double vn = v - step;
    v = (vn > lo && vn < hi) ? vn : 0.5 * (lo + hi);
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double t_scalar(double v, double R, double theta) {
  if (v <= 0.0) return 0.0;
  double e = t_exponent(v, R, theta);
  return e < -745.0 ? 0.0 : std::exp(e);
}

double t_prime(double v, double R, double theta) {
  if (v <= 0.0) return 0.0;
  double a = (R / v) * kLn2;
  double ln_tp = std::log(theta * R * kLn2 / (std::exp2(R) - 1.0)) + a -
                 2.0 * std::log(v) + t_exponent(v, R, theta);
  return ln_tp < -745.0 ? 0.0 : std::exp(ln_tp);
}

double objective(const std::vector<double>& v, const std::vector<double>& d,
                 double R, double theta) {
  if (v.size() != d.size())
    throw std::invalid_argument("objective: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    s += d[i] * t_scalar(v[i], R, theta);
  return s;
}

double theta_crit(double R) {
  double twoR = std::exp2(R);
  return (twoR - 1.0) / twoR * (2.0 / (R * kLn2) + 1.0);
}

double u_log(double v, double R, double theta) {
  if (v <= 0.0) return kNegInf;
  double a = (R / v) * kLn2;
  return a - 2.0 * std::log(v) + t_exponent(v, R, theta);
}

double u_fn(double v, double R, double theta) {
  double l = u_log(v, R, theta);
  return l < -745.0 ? 0.0 : std::exp(l);
}

Peak u_peak(double R, double theta) {
  if (!(theta < theta_crit(R)))
    throw std::domain_error("u_peak: no interior peak at this theta");
  double lo = 1e-12, hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    (stationarity_gap(mid, R, theta) > 0.0 ? lo : hi) = mid;
  }
  double v_int = 0.5 * (lo + hi);
  return Peak{v_int, u_fn(v_int, R, theta)};
}

namespace {

// Clamps C into [U(1), m_int] with 1e-12 relative slack.
double clamp_level(double C, double floor_, double ceil_) {
  if (C < floor_) {
    if (C < floor_ * (1.0 - 1e-12))
      throw std::domain_error("u inverse: level below U(1)");
    return floor_;
  }
  if (C > ceil_) {
    if (C > ceil_ * (1.0 + 1e-12))
      throw std::domain_error("u inverse: level above the peak");
    return ceil_;
  }
  return C;
}

}  // namespace

double v_plus(double C, double R, double theta, const Peak& pk) {
  double floor_ = std::exp2(R) * std::exp(-theta);
  C = clamp_level(C, floor_, pk.m_int);
  if (C == floor_) return 1.0;
  if (C == pk.m_int) return pk.v_int;
  double lnC = std::log(C);
  return invert_u_log(lnC, pk.v_int, 1.0, std::log(pk.m_int) - lnC,
                      std::log(floor_) - lnC, R, theta);
}

double v_minus(double C, double R, double theta, const Peak& pk) {
  double floor_ = std::exp2(R) * std::exp(-theta);
  C = clamp_level(C, floor_, pk.m_int);
  if (C == pk.m_int) return pk.v_int;
  double lnC = std::log(C);
  return invert_u_log(lnC, 0.0, pk.v_int, kNegInf, std::log(pk.m_int) - lnC,
                      R, theta);
}

int max_layers(double theta, double R, const std::vector<double>& d) {
  check_inputs(theta, R, d);
  if (theta >= theta_crit(R)) return 1;
  Peak pk = u_peak(R, theta);
  double ratio = std::exp2(R) * std::exp(-theta) / pk.m_int;
  int ell = 1;
  for (int i = 2; i <= (int)d.size(); ++i) {
    if (d[i - 1] >= ratio * d[0])
      ell = i;
    else
      break;
  }
  return ell;
}

namespace {

struct Instance {
  double theta;
  double R;
  const std::vector<double>& d;
  Peak pk;
  double lam_scale;  // (2^R - 1)/(theta R ln2)
  double lam_low;

  Instance(double theta_, double R_, const std::vector<double>& d_)
      : theta(theta_), R(R_), d(d_), pk(u_peak(R_, theta_)),
        lam_scale((std::exp2(R_) - 1.0) / (theta_ * R_ * kLn2)),
        lam_low(std::exp2(R_) * std::exp(-theta_) * d_[0] / lam_scale) {}

  double lam_upp(int ell) const { return pk.m_int * d[ell - 1] / lam_scale; }
  double level(int i, double lam) const { return lam * lam_scale / d[i - 1]; }
  double s_plus(int ell, double lam) const {
    double s = 0.0;
    for (int i = 1; i <= ell; ++i)
      s += v_plus(level(i, lam), R, theta, pk);
    return s;
  }
  double s_mixed(int ell, double lam) const {
    double s = v_minus(level(ell, lam), R, theta, pk);
    for (int i = 1; i < ell; ++i)
      s += v_plus(level(i, lam), R, theta, pk);
    return s;
  }

  Solution make_candidate(int ell, double lam, bool last_lower) const {
    std::vector<double> v(d.size(), 0.0);
    for (int i = 1; i < ell; ++i) v[i - 1] = v_plus(level(i, lam), R, theta, pk);
    v[ell - 1] = last_lower ? v_minus(level(ell, lam), R, theta, pk)
                            : v_plus(level(ell, lam), R, theta, pk);
    double s = 0.0;
    for (int i = 0; i < ell; ++i) s += v[i];
    for (int i = 0; i < ell; ++i) v[i] /= s;
    Solution sol;
    sol.split = std::move(v);
    sol.ell = ell;
    sol.lambda = lam;
    sol.value = objective(sol.split, d, R, theta);
    return sol;
  }
};

Solution single_layer(double theta, const std::vector<double>& d) {
  std::vector<double> v(d.size(), 0.0);
  v[0] = 1.0;
  Solution sol;
  sol.split = std::move(v);
  sol.ell = 1;
  sol.value = d[0] * std::exp(-theta);
  return sol;
}

Solution pick_best(const std::vector<Solution>& candidates) {
  const Solution* best = &candidates.front();
  for (const auto& c : candidates)
    if (c.value > best->value) best = &c;
  return *best;
}

}  // namespace

CandidateSet local_candidates(double theta, double R,
                              const std::vector<double>& d,
                              const SolverOptions& opt) {
  check_inputs(theta, R, d);
  CandidateSet out;
  if (theta >= theta_crit(R)) {
    out.single_layer_only = true;
    return out;
  }
  Instance ins(theta, R, d);
  out.candidates.push_back(single_layer(theta, d));
  int lmax = max_layers(theta, R, d);
  for (int ell = 2; ell <= lmax; ++ell) {
    double lo = ins.lam_low, hi = ins.lam_upp(ell);
    if (!(lo <= hi)) continue;
    double flo = ins.s_plus(ell, lo) - 1.0;
    double fhi = ins.s_plus(ell, hi) - 1.0;
    if (!(flo >= 0.0 && fhi <= 0.0)) continue;
    double lam = detail::bisect([&](double l) { return ins.s_plus(ell, l) - 1.0; },
                                lo, hi, flo, fhi, opt.lambda_tol, opt.lambda_tol);
    out.candidates.push_back(ins.make_candidate(ell, lam, false));
  }
  return out;
}

Solution solve_local(double theta, double R, const std::vector<double>& d,
                     const SolverOptions& opt) {
  auto cs = local_candidates(theta, R, d, opt);
  if (cs.single_layer_only) return single_layer(theta, d);
  return pick_best(cs.candidates);
}

Solution solve_global(double theta, double R, const std::vector<double>& d,
                      const SolverOptions& opt) {
  check_inputs(theta, R, d);
  if (theta >= theta_crit(R)) return single_layer(theta, d);
  Instance ins(theta, R, d);
  std::vector<Solution> candidates{single_layer(theta, d)};
  int lmax = max_layers(theta, R, d);
  for (int ell = 2; ell <= lmax; ++ell) {
    double lo = ins.lam_low, hi = ins.lam_upp(ell);
    if (!(lo <= hi)) continue;
    double flo = ins.s_plus(ell, lo) - 1.0;
    if (!(flo >= 0.0)) continue;
    double fhi = ins.s_plus(ell, hi) - 1.0;
    if (fhi <= 0.0) {
      double lam =
          detail::bisect([&](double l) { return ins.s_plus(ell, l) - 1.0; },
                         lo, hi, flo, fhi, opt.lambda_tol, opt.lambda_tol);
      candidates.push_back(ins.make_candidate(ell, lam, false));
    }
    auto roots =
        detail::scan_roots([&](double l) { return ins.s_mixed(ell, l) - 1.0; },
                           lo, hi, opt.scan_points, opt.lambda_tol, 0.0);
    for (double lam : roots)
      candidates.push_back(ins.make_candidate(ell, lam, true));
  }
  return pick_best(candidates);
}

}  // namespace fadesplit::ora
