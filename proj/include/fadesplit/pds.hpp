#pragma once

#include <vector>

#include "fadesplit/types.hpp"

// Asymptotic solver for the power-domain superposition scheme: maximize
// G(x) = sum_i d_i exp(-theta/x_i) over the weighted simplex
// S_K = {x >= 0 : sum_i 2^{R(i-1)} x_i = 1}, the image of the feasible
// power splits alpha under x_i = alpha_i - (2^R - 1) beta_i with
// beta_i = sum_{j>i} alpha_j.

namespace fadesplit::pds {

// exp(-theta/x) with the convention g(0) = 0.
double g_scalar(double x, double theta);

// G(x) = sum_i d_i g(x_i). Requires x and d of equal length.
double objective(const std::vector<double>& x, const std::vector<double>& d,
                 double theta);

// Power fractions -> transformed split. Throws std::domain_error naming
// the first index where alpha_i - (2^R - 1) beta_i < 0.
std::vector<double> x_from_alpha(const std::vector<double>& alpha, double R);

// Transformed split -> power fractions, by backward recursion
// alpha_K = x_K; alpha_i = x_i + (2^R - 1) beta_i. Throws
// std::domain_error if x is not in S_K (weighted sum within 1e-10).
std::vector<double> alpha_from_x(const std::vector<double>& x, double R);

// Upper bound on the number of active layers of any optimal split:
// 1 when theta >= 2, otherwise the largest i with
// 2^{iR}/d_i <= (2^R/d_1) * psi_max / (theta^2 e^{-theta}).
int max_layers(double theta, double R, const std::vector<double>& d);

// theta above this value forces the single-layer optimum (1,0,...,0):
// -2 W0(-(1/e) sqrt(d_2 / (2^R d_1))).
double single_layer_threshold(double R, const std::vector<double>& d);

// Stationarity-equation candidates restricted to the principal Lambert
// branch, one per feasible active-layer count (the single-layer split
// included). single_layer_only is set when theta exceeds
// single_layer_threshold, in which case candidates is empty.
struct CandidateSet {
  bool single_layer_only = false;
  std::vector<Solution> candidates;
};
CandidateSet local_candidates(double theta, double R,
                              const std::vector<double>& d,
                              const SolverOptions& opt = {});

// Global maximizer of G over S_K: enumerates both Lambert-branch
// candidate families for every feasible layer count and returns the
// best, ties broken toward the smallest layer count then the largest
// first coordinate.
Solution solve_global(double theta, double R, const std::vector<double>& d,
                      const SolverOptions& opt = {});

// Principal-branch-only candidate search; a strict local maximizer that
// empirically matches solve_global.
Solution solve_local(double theta, double R, const std::vector<double>& d,
                     const SolverOptions& opt = {});

// Closed-form two-block solution. Returns the optimal first-layer power
// fraction and the objective value; requires d1 > d2 > 0 (only the
// ratio d2/d1 matters).
struct TwoLayer {
  double alpha1;
  double value;
};
TwoLayer solve_two_layer(double theta, double R, double d1, double d2);

}  // namespace fadesplit::pds
