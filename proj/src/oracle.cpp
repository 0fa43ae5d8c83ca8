#include "fadesplit/oracle.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "fadesplit/ora.hpp"
#include "fadesplit/pds.hpp"

namespace fadesplit::oracle {

namespace {

double composition_count(int m, int K) {
  // C(m + K - 1, K - 1) in floating point; fine for any size we accept.
  double c = 1.0;
  for (int i = 1; i < K; ++i) c *= static_cast<double>(m + i) / i;
  return c;
}

// Visits every z on the simplex grid {k/m : sum k_i = m} in lexicographic
// order, so argmax ties resolve to the lowest index deterministically.
void for_each_composition(int K, int m,
                          const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> k(K, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == K - 1) {
      k[pos] = left;
      fn(k);
      return;
    }
    for (int c = left; c >= 0; --c) {
      k[pos] = c;
      rec(pos + 1, left - c);
    }
  };
  rec(0, m);
}

// Shared grid + local-refinement driver over the standard simplex in z;
// `value(z)` defines the scheme-specific objective.
GridResult simplex_search(int K, const GridSpec& grid,
                          const std::function<double(const std::vector<double>&)>& value) {
  if (grid.resolution < 10)
    throw std::invalid_argument("grid resolution must be >= 10");
  if (composition_count(grid.resolution, K) > static_cast<double>(grid.budget))
    throw BudgetError("simplex grid of " +
                      std::to_string(composition_count(grid.resolution, K)) +
                      " points exceeds budget " + std::to_string(grid.budget));
  int m = grid.resolution;
  std::vector<double> z(K), best_z;
  double best = -1.0;
  for_each_composition(K, m, [&](const std::vector<int>& k) {
    for (int i = 0; i < K; ++i) z[i] = static_cast<double>(k[i]) / m;
    double val = value(z);
    if (val > best) {
      best = val;
      best_z = z;
    }
  });

  // Pattern refinement: re-grid the two-cell neighborhood of the best
  // point at half the cell size each round; zero-sum moves stay on the
  // simplex, and the identity move makes each round monotone.
  if (std::pow(5.0, K) <= 2e6) {
    std::vector<int> delta(K, 0);
    double h = 1.0 / m;
    for (int round = 0; round < grid.refine_rounds; ++round) {
      h *= 0.5;
      std::vector<double> center = best_z;
      std::function<void(int, int)> rec = [&](int pos, int sum) {
        if (pos == K - 1) {
          if (sum < -2 || sum > 2) return;
          delta[pos] = -sum;
          std::vector<double> cand(K);
          for (int i = 0; i < K; ++i) {
            cand[i] = center[i] + h * delta[i];
            if (cand[i] < 0.0) return;
          }
          double val = value(cand);
          if (val > best) {
            best = val;
            best_z = cand;
          }
          return;
        }
        for (int c = -2; c <= 2; ++c) {
          delta[pos] = c;
          rec(pos + 1, sum + c);
        }
      };
      rec(0, 0);
    }
  }
  return GridResult{std::move(best_z), best};
}

}  // namespace

int default_resolution(int K) { return K <= 2 ? 400 : K == 3 ? 100 : 40; }

GridResult grid_max_pds(double theta, double R, const std::vector<double>& d,
                        const GridSpec& grid) {
  int K = static_cast<int>(d.size());
  std::vector<double> w2(K);
  for (int i = 0; i < K; ++i) w2[i] = std::exp2(R * i);
  auto value = [&](const std::vector<double>& z) {
    double s = 0.0;
    for (int i = 0; i < K; ++i)
      s += d[i] * pds::g_scalar(z[i] / w2[i], theta);
    return s;
  };
  GridResult res = simplex_search(K, grid, value);
  for (int i = 0; i < K; ++i) res.arg[i] /= w2[i];
  return res;
}

GridResult grid_max_ora(double theta, double R, const std::vector<double>& d,
                        const GridSpec& grid) {
  int K = static_cast<int>(d.size());
  auto value = [&](const std::vector<double>& z) {
    double s = 0.0;
    for (int i = 0; i < K; ++i) s += d[i] * ora::t_scalar(z[i], R, theta);
    return s;
  };
  return simplex_search(K, grid, value);
}

}  // namespace fadesplit::oracle
