#pragma once

#include <optional>
#include <vector>

namespace fadesplit {

// Channel parameterization. theta = (2^R - 1)/(P * sigma2) is the
// threshold-to-average-SNR ratio; small theta means a good channel.
struct Channel {
  double R;       // per-block rate, bits per channel use
  double P;       // power budget
  double sigma2;  // mean channel power gain
  double theta;   // derived, stored exactly as (2^R - 1)/(P * sigma2)

  static Channel from_power(double R, double P, double sigma2);
  // Fixes P = 1 and sigma2 = (2^R - 1)/theta.
  static Channel from_theta(double R, double theta);
};

// Validates an importance vector: d_1 > ... > d_K > 0 with successive
// gaps > 1e-12, sum within 1e-12 of 1 (renormalized when within 1e-9,
// rejected otherwise). Throws std::invalid_argument on violation.
std::vector<double> validate_importance(std::vector<double> d);

// A solved allocation: the split (x for power-domain, v for
// time-sharing), its objective value, the active layer count, and the
// constraint multiplier when the solution came from a stationarity
// equation (absent for the single-layer split).
struct Solution {
  std::vector<double> split;
  double value = 0.0;
  int ell = 0;
  std::optional<double> lambda;
};

// Solver tuning knobs. lambda_tol is the bisection tolerance on the
// multiplier (relative in lambda, absolute in the constraint residual);
// scan_points is the grid density of the secondary-branch root scan.
struct SolverOptions {
  double lambda_tol = 1e-12;
  int scan_points = 2000;
};

int count_active(const std::vector<double>& split);

}  // namespace fadesplit
