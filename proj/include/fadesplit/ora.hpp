#pragma once

#include <vector>

#include "fadesplit/types.hpp"

// Asymptotic solver for the orthogonal (time-sharing) scheme: maximize
// T(v) = sum_i d_i t(v_i) over the standard simplex, where
// t(v) = exp(-theta (2^{R/v} - 1)/(2^R - 1)).
//
// The stationarity machinery runs through the unimodal map
// U(v) = (2^{R/v}/v^2) t(v): for theta below theta_crit, U rises to an
// interior peak (v_int, m_int) and falls back; V+/V- invert it on
// either side of the peak.

namespace fadesplit::ora {

// t(v) with the convention t(0) = 0; evaluated in log space so that
// 2^{R/v} never overflows.
double t_scalar(double v, double R, double theta);

// dt/dv = theta R ln2 * 2^{R/v} t(v) / ((2^R - 1) v^2), 0 at v = 0.
double t_prime(double v, double R, double theta);

// T(v) = sum_i d_i t(v_i).
double objective(const std::vector<double>& v, const std::vector<double>& d,
                 double R, double theta);

// ((2^R - 1)/2^R)(2/(R ln2) + 1); at or above this theta the
// single-layer split is optimal and U is increasing on [0, 1].
double theta_crit(double R);

// U(v) with U(0) = 0, U(1) = 2^R e^{-theta}.
double u_fn(double v, double R, double theta);

// ln U(v); -inf at v = 0. Shared by the inverse searches.
double u_log(double v, double R, double theta);

// Interior peak of U. Requires theta < theta_crit(R); the peak location
// solves N(v) = R ln2 (theta 2^{R/v}/(2^R - 1) - 1) - 2v = 0, N being
// strictly decreasing with N(0+) = +inf.
struct Peak {
  double v_int;
  double m_int;
};
Peak u_peak(double R, double theta);

// Inverse of U on [v_int, 1] (v_plus) and on [0, v_int] (v_minus), for
// C in [2^R e^{-theta}, m_int]; C within 1e-12 relative outside that
// range is clamped, beyond that throws std::domain_error. Residual
// |U(v) - C| <= 1e-10 C.
double v_plus(double C, double R, double theta, const Peak& pk);
double v_minus(double C, double R, double theta, const Peak& pk);

// Upper bound on active layers: largest i with
// d_i >= (2^R e^{-theta} / m_int) d_1; equals 1 when theta >= theta_crit.
int max_layers(double theta, double R, const std::vector<double>& d);

// V+-only stationarity candidates, one per feasible layer count
// (single-layer split included). single_layer_only is set when
// theta >= theta_crit, in which case candidates is empty.
struct CandidateSet {
  bool single_layer_only = false;
  std::vector<Solution> candidates;
};
CandidateSet local_candidates(double theta, double R,
                              const std::vector<double>& d,
                              const SolverOptions& opt = {});

// Global maximizer of T: both V+ and V- candidate families per layer
// count, ties broken toward the smallest layer count then the largest
// first coordinate.
Solution solve_global(double theta, double R, const std::vector<double>& d,
                      const SolverOptions& opt = {});

// V+-only search; a strict local maximizer that empirically matches
// solve_global.
Solution solve_local(double theta, double R, const std::vector<double>& d,
                     const SolverOptions& opt = {});

}  // namespace fadesplit::ora
