#include "fadesplit/pds.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "fadesplit/special.hpp"
#include "root_find.hpp"

namespace fadesplit::pds {

namespace {

std::vector<double> simplex_weights(int K, double R) {
  std::vector<double> w(K);
  for (int i = 0; i < K; ++i) w[i] = std::exp2(R * i);
  return w;
}

// Shared state of one (theta, R, d) instance. Indices are 1-based to
// match the layer numbering.
struct Instance {
  double theta;
  double R;
  const std::vector<double>& d;
  std::vector<double> w2;  // 2^{R(i-1)}
  double lam_min;

  Instance(double theta_, double R_, const std::vector<double>& d_)
      : theta(theta_), R(R_), d(d_), w2(simplex_weights((int)d_.size(), R_)),
        lam_min(d_[0] * theta_ * std::exp(-theta_)) {}

  double lam_max(int ell) const {
    return psi_max * d[ell - 1] / (theta * w2[ell - 1]);
  }
  double c(int i, double lam) const {
    return lam * theta * w2[i - 1] / d[i - 1];
  }
  double x_minus(int i, double lam) const {
    return theta / psi_inv_lower(c(i, lam));
  }
  double x_plus(int i, double lam) const {
    return theta / psi_inv_upper(c(i, lam));
  }
  double h_minus(int ell, double lam) const {
    double s = 0.0;
    for (int i = 1; i <= ell; ++i) s += w2[i - 1] * x_minus(i, lam);
    return s;
  }
  double h_plus(int ell, double lam) const {
    double s = w2[ell - 1] * x_plus(ell, lam);
    for (int i = 1; i < ell; ++i) s += w2[i - 1] * x_minus(i, lam);
    return s;
  }

  // Split with entries x_i^-(lam) for i < ell, the ell-th entry from the
  // requested branch, zeros beyond; renormalized onto the constraint.
  Solution make_candidate(int ell, double lam, bool last_upper) const {
    std::vector<double> x(d.size(), 0.0);
    for (int i = 1; i < ell; ++i) x[i - 1] = x_minus(i, lam);
    x[ell - 1] = last_upper ? x_plus(ell, lam) : x_minus(ell, lam);
    double s = 0.0;
    for (int i = 0; i < ell; ++i) s += w2[i] * x[i];
    for (int i = 0; i < ell; ++i) x[i] /= s;
    Solution sol;
    sol.split = std::move(x);
    sol.ell = ell;
    sol.lambda = lam;
    sol.value = objective(sol.split, d, theta);
    return sol;
  }

  Solution single_layer() const {
    std::vector<double> x(d.size(), 0.0);
    x[0] = 1.0;
    Solution sol;
    sol.split = std::move(x);
    sol.ell = 1;
    sol.value = d[0] * std::exp(-theta);
    return sol;
  }
};

// Candidates are generated in layer-count order, within a layer count
// in ascending multiplier order (descending first coordinate), so
// keeping the first strict maximum realizes the tie-break: smallest
// layer count, then largest x_1.
Solution pick_best(const std::vector<Solution>& candidates) {
  const Solution* best = &candidates.front();
  for (const auto& c : candidates)
    if (c.value > best->value) best = &c;
  return *best;
}

void check_inputs(double theta, double R, const std::vector<double>& d) {
  if (!(theta > 0.0) || !(R > 0.0))
    throw std::invalid_argument("pds: theta and R must be positive");
  if (d.size() < 2) throw std::invalid_argument("pds: need at least 2 blocks");
}

}  // namespace

double g_scalar(double x, double theta) {
  if (x <= 0.0) return 0.0;
  return std::exp(-theta / x);
}

double objective(const std::vector<double>& x, const std::vector<double>& d,
                 double theta) {
  if (x.size() != d.size())
    throw std::invalid_argument("objective: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += d[i] * g_scalar(x[i], theta);
  return s;
}

std::vector<double> x_from_alpha(const std::vector<double>& alpha, double R) {
  int K = (int)alpha.size();
  std::vector<double> x(K);
  double beta = 0.0;  // sum of alpha_j beyond the current index
  double gain = std::exp2(R) - 1.0;
  for (int i = K - 1; i >= 0; --i) {
    x[i] = alpha[i] - gain * beta;
    if (x[i] < 0.0) {
      if (x[i] < -1e-12)
        throw std::domain_error("x_from_alpha: layer " + std::to_string(i + 1) +
                                " has negative margin");
      x[i] = 0.0;
    }
    beta += alpha[i];
  }
  return x;
}

std::vector<double> alpha_from_x(const std::vector<double>& x, double R) {
  int K = (int)x.size();
  auto w2 = simplex_weights(K, R);
  double s = 0.0;
  for (int i = 0; i < K; ++i) {
    if (x[i] < -1e-12)
      throw std::domain_error("alpha_from_x: negative entry");
    s += w2[i] * x[i];
  }
  if (std::abs(s - 1.0) > 1e-10)
    throw std::domain_error("alpha_from_x: weighted sum is not 1");
  double gain = std::exp2(R) - 1.0;
  std::vector<double> alpha(K);
  double beta = 0.0;
  for (int i = K - 1; i >= 0; --i) {
    alpha[i] = std::max(x[i], 0.0) + gain * beta;
    beta += alpha[i];
  }
  return alpha;
}

int max_layers(double theta, double R, const std::vector<double>& d) {
  check_inputs(theta, R, d);
  if (theta >= 2.0) return 1;
  int K = (int)d.size();
  double bound = (std::exp2(R) / d[0]) * psi_max / psi(theta);
  int ell = 1;
  for (int i = 2; i <= K; ++i) {
    if (std::exp2(i * R) / d[i - 1] <= bound)
      ell = i;
    else
      break;
  }
  return ell;
}

double single_layer_threshold(double R, const std::vector<double>& d) {
  double arg = -std::sqrt(d[1] / (std::exp2(R) * d[0])) / M_E;
  return -2.0 * lambert_w0(arg);
}

CandidateSet local_candidates(double theta, double R,
                              const std::vector<double>& d,
                              const SolverOptions& opt) {
  check_inputs(theta, R, d);
  CandidateSet out;
  if (theta > single_layer_threshold(R, d)) {
    out.single_layer_only = true;
    return out;
  }
  Instance ins(theta, R, d);
  out.candidates.push_back(ins.single_layer());
  int lmax = max_layers(theta, R, d);
  for (int ell = 2; ell <= lmax; ++ell) {
    double lo = ins.lam_min, hi = ins.lam_max(ell);
    if (!(lo <= hi)) continue;
    double flo = ins.h_minus(ell, lo) - 1.0;
    double fhi = ins.h_minus(ell, hi) - 1.0;
    if (!(flo >= 0.0 && fhi <= 0.0)) continue;
    double lam = detail::bisect([&](double l) { return ins.h_minus(ell, l) - 1.0; },
                                lo, hi, flo, fhi, opt.lambda_tol, opt.lambda_tol);
    out.candidates.push_back(ins.make_candidate(ell, lam, false));
  }
  return out;
}

Solution solve_local(double theta, double R, const std::vector<double>& d,
                     const SolverOptions& opt) {
  auto cs = local_candidates(theta, R, d, opt);
  if (cs.single_layer_only) return Instance(theta, R, d).single_layer();
  return pick_best(cs.candidates);
}

Solution solve_global(double theta, double R, const std::vector<double>& d,
                      const SolverOptions& opt) {
  check_inputs(theta, R, d);
  Instance ins(theta, R, d);
  if (theta > single_layer_threshold(R, d)) return ins.single_layer();
  std::vector<Solution> candidates{ins.single_layer()};
  int lmax = max_layers(theta, R, d);
  for (int ell = 2; ell <= lmax; ++ell) {
    double lo = ins.lam_min, hi = ins.lam_max(ell);
    if (!(lo <= hi)) continue;
    double flo = ins.h_minus(ell, lo) - 1.0;
    if (!(flo >= 0.0)) continue;
    double fhi = ins.h_minus(ell, hi) - 1.0;
    if (fhi <= 0.0) {
      double lam =
          detail::bisect([&](double l) { return ins.h_minus(ell, l) - 1.0; },
                         lo, hi, flo, fhi, opt.lambda_tol, opt.lambda_tol);
      candidates.push_back(ins.make_candidate(ell, lam, false));
    }
    auto roots =
        detail::scan_roots([&](double l) { return ins.h_plus(ell, l) - 1.0; },
                           lo, hi, opt.scan_points, opt.lambda_tol, 0.0);
    for (double lam : roots)
      candidates.push_back(ins.make_candidate(ell, lam, true));
  }
  return pick_best(candidates);
}

TwoLayer solve_two_layer(double theta, double R, double d1, double d2) {
  if (!(d1 > d2) || !(d2 > 0.0))
    throw std::invalid_argument("solve_two_layer: need d1 > d2 > 0");
  if (!(theta > 0.0) || !(R > 0.0))
    throw std::invalid_argument("solve_two_layer: theta, R must be positive");
  double twoR = std::exp2(R);
  auto value_at = [&](double alpha1) {
    double x1 = alpha1 - (twoR - 1.0) * (1.0 - alpha1);
    double x2 = 1.0 - alpha1;
    return d1 * g_scalar(x1, theta) + d2 * g_scalar(x2, theta);
  };
  TwoLayer one{1.0, value_at(1.0)};
  double half = std::exp2(-R / 2.0);
  if (theta >= half) return one;
  double disc = std::sqrt(1.0 - twoR * theta * theta);
  double xi = theta / half / (1.0 + disc);
  xi = xi * xi * std::exp(theta * (twoR - 1.0) + 2.0 * disc);
  double r = d2 / d1;
  if (r <= xi) return one;
  // r > xi: the stationarity curve crosses r exactly once between the
  // two turning points of q, where it is strictly decreasing.
  double q_lo = 1.0 / theta - disc / theta;
  double q_hi = 1.0 / theta + disc / theta;
  auto f = [&](double q) {
    return twoR / (q * q) *
               std::exp(theta * (q + twoR - 1.0 - twoR / q)) -
           r;
  };
  double q0 = detail::bisect(f, q_lo, q_hi, f(q_lo), f(q_hi), 1e-12, 0.0);
  if (std::exp(-theta * twoR / q0) * (1.0 + twoR / (q0 * q0)) <= 1.0)
    return one;
  double alpha1 = (q0 + twoR - 1.0) / (q0 + twoR);
  return TwoLayer{alpha1, value_at(alpha1)};
}

}  // namespace fadesplit::pds
