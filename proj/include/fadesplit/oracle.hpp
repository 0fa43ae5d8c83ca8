#pragma once

#include <stdexcept>
#include <vector>

// Brute-force validators, independent of the solver code paths: dense
// simplex grid search with local refinement for the asymptotic
// objectives at small K. Slower than the solvers but free of
// convergence pathologies; used as the trust anchor in tests.

namespace fadesplit::oracle {

struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GridSpec {
  int resolution = 100;   // points per simplex edge, >= 10
  int refine_rounds = 3;  // local pattern refinements, halving the cell
  long budget = 10'000'000;
};

// 400 for K <= 2, 100 for K = 3, 40 beyond.
int default_resolution(int K);

struct GridResult {
  std::vector<double> arg;
  double value;
};

// Max of G over the weighted simplex, enumerated through the
// substitution z_i = 2^{R(i-1)} x_i on the standard simplex grid.
// Throws BudgetError when the grid exceeds the configured budget.
GridResult grid_max_pds(double theta, double R, const std::vector<double>& d,
                        const GridSpec& grid);

// Max of T over the standard simplex.
GridResult grid_max_ora(double theta, double R, const std::vector<double>& d,
                        const GridSpec& grid);

}  // namespace fadesplit::oracle
