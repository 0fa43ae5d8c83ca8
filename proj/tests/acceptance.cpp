// Acceptance gate. Each criterion is a self-contained numerical check
// with a pinned tolerance and a wall-clock budget; exceeding the budget
// fails the criterion even when the numbers agree. Run with a criterion
// number 1..11 as the only argument, or with no argument to run all.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fadesplit/bounds.hpp"
#include "fadesplit/fbl.hpp"
#include "fadesplit/ora.hpp"
#include "fadesplit/oracle.hpp"
#include "fadesplit/pds.hpp"
#include "fadesplit/presets.hpp"
#include "fadesplit/quadrature.hpp"
#include "fadesplit/special.hpp"
#include "fadesplit/types.hpp"

namespace {

using namespace fadesplit;

struct Check {
  bool ok = false;
  std::string detail;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

double urand(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Strictly decreasing importance weights: stacked tail sums of positive
// increments, normalized. Gaps stay well above the validation floor.
std::vector<double> random_importance(std::mt19937_64& rng, int K) {
  std::vector<double> inc(K);
  for (double& g : inc) g = urand(rng, 0.1, 1.0);
  std::vector<double> d(K);
  double tail = 0.0;
  for (int i = K - 1; i >= 0; --i) {
    tail += inc[i];
    d[i] = tail;
  }
  double sum = 0.0;
  for (double v : d) sum += v;
  for (double& v : d) v /= sum;
  return d;
}

std::vector<double> random_simplex(std::mt19937_64& rng, int K) {
  std::vector<double> v(K);
  double sum = 0.0;
  for (double& x : v) {
    x = urand(rng, 0.05, 1.0);
    sum += x;
  }
  for (double& x : v) x /= sum;
  return v;
}

// Prefix support with strictly decreasing positive entries, zeros after.
std::string structure_error(const std::vector<double>& split, int ell) {
  if (ell < 1 || ell > static_cast<int>(split.size())) return "bad ell";
  for (int i = 0; i < static_cast<int>(split.size()); ++i) {
    if (i < ell && !(split[i] > 0.0)) return "zero inside support";
    if (i >= ell && split[i] != 0.0) return "support not a prefix";
    if (i + 1 < ell && !(split[i] > split[i + 1]))
      return "prefix not strictly decreasing";
  }
  return {};
}

// --- criterion 1: Lambert branches and psi inversion ---------------------

Check crit1() {
  std::mt19937_64 rng(101);
  double worst_w = 0.0, worst_psi = 0.0;
  for (int i = 0; i < 1000; ++i) {
    double x = -urand(rng, 1e-12, 1.0 - 1e-12) / M_E;
    double w0 = lambert_w0(x);
    double wm = lambert_wm1(x);
    worst_w = std::max(worst_w, std::abs(w0 * std::exp(w0) - x) / std::abs(x));
    worst_w = std::max(worst_w, std::abs(wm * std::exp(wm) - x) / std::abs(x));
    double c = urand(rng, 1e-12, 1.0 - 1e-12) * psi_max;
    worst_psi = std::max(worst_psi, std::abs(psi(psi_inv_lower(c)) - c) / c);
    worst_psi = std::max(worst_psi, std::abs(psi(psi_inv_upper(c)) - c) / c);
  }
  Check c;
  c.ok = worst_w <= 1e-12 && worst_psi <= 1e-10;
  c.detail = "lambert residual " + fmt(worst_w) + ", psi round-trip " +
             fmt(worst_psi);
  return c;
}

// --- criteria 2/3: global search agrees with the local construction ------

Check sweep_agreement(bool power_domain) {
  SolverOptions opt;
  double worst = 0.0;
  for (const char* name : {"fig2", "fig3"}) {
    Preset p = preset(name);
    for (int k = 1; k <= 99; ++k) {
      double theta = 0.01 * k;
      double g = power_domain ? pds::solve_global(theta, p.R, p.d, opt).value
                              : ora::solve_global(theta, p.R, p.d, opt).value;
      double l = power_domain ? pds::solve_local(theta, p.R, p.d, opt).value
                              : ora::solve_local(theta, p.R, p.d, opt).value;
      worst = std::max(worst, std::abs(g - l));
    }
  }
  Check c;
  c.ok = worst <= 1e-9;
  c.detail = "max objective gap " + fmt(worst);
  return c;
}

Check crit2() { return sweep_agreement(true); }
Check crit3() { return sweep_agreement(false); }

// --- criterion 4: two-layer closed form vs solver vs grid ----------------

Check crit4() {
  std::mt19937_64 rng(404);
  SolverOptions opt;
  oracle::GridSpec grid;
  grid.resolution = 400;
  grid.refine_rounds = 3;
  double worst_solver = 0.0, worst_grid = 0.0;
  for (int i = 0; i < 50; ++i) {
    double theta = urand(rng, 0.01, 1.5);
    double R = urand(rng, 0.05, 1.0);
    double d1 = urand(rng, 0.55, 0.9);
    std::vector<double> d{d1, 1.0 - d1};
    double closed = pds::solve_two_layer(theta, R, d1, 1.0 - d1).value;
    double local = pds::solve_local(theta, R, d, opt).value;
    double coarse = oracle::grid_max_pds(theta, R, d, grid).value;
    worst_solver = std::max(worst_solver, std::abs(closed - local));
    worst_grid = std::max(worst_grid, std::abs(closed - coarse));
  }
  Check c;
  c.ok = worst_solver <= 1e-9 && worst_grid <= 1e-4;
  c.detail = "closed-vs-solver " + fmt(worst_solver) + ", closed-vs-grid " +
             fmt(worst_grid);
  return c;
}

// --- criterion 5: three-layer solvers dominate the grid ------------------

Check crit5() {
  std::mt19937_64 rng(505);
  SolverOptions opt;
  oracle::GridSpec grid;
  grid.resolution = 100;
  grid.refine_rounds = 3;
  double worst_margin = 0.0;  // most negative value of solver - grid
  for (int scheme = 0; scheme < 2; ++scheme) {
    for (int i = 0; i < 20; ++i) {
      std::vector<double> d = random_importance(rng, 3);
      double theta = urand(rng, 0.02, 1.2);
      double R = urand(rng, 0.05, 1.0);
      double sol, ref;
      if (scheme == 0) {
        sol = pds::solve_global(theta, R, d, opt).value;
        ref = oracle::grid_max_pds(theta, R, d, grid).value;
      } else {
        sol = ora::solve_global(theta, R, d, opt).value;
        ref = oracle::grid_max_ora(theta, R, d, grid).value;
      }
      worst_margin = std::min(worst_margin, sol - ref);
    }
  }
  Check c;
  c.ok = worst_margin >= -1e-4;
  c.detail = "worst solver-minus-grid margin " + fmt(worst_margin);
  return c;
}

// --- criterion 6: structure and stationarity of every solution -----------

Check crit6() {
  SolverOptions opt;
  double worst_resid = 0.0;
  std::string fail;
  auto inspect = [&](const Solution& sol, bool power_domain, double theta,
                     double R, const std::vector<double>& d) {
    std::string err = structure_error(sol.split, sol.ell);
    int lmax = power_domain ? pds::max_layers(theta, R, d)
                            : ora::max_layers(theta, R, d);
    if (err.empty() && sol.ell > lmax) err = "ell exceeds layer cap";
    if (err.empty() && sol.ell >= 2 && !sol.lambda)
      err = "multi-layer solution without multiplier";
    if (!err.empty() && fail.empty())
      fail = err + " at theta=" + fmt(theta);
    if (!sol.lambda) return;
    for (int i = 0; i < sol.ell; ++i) {
      double grad;
      if (power_domain) {
        double x = sol.split[i];
        grad = d[i] * theta / (x * x) * std::exp(-theta / x) -
               *sol.lambda * std::exp2(R * i);
      } else {
        grad = d[i] * ora::t_prime(sol.split[i], R, theta) - *sol.lambda;
      }
      worst_resid = std::max(worst_resid, std::abs(grad));
    }
  };
  for (const char* name : {"fig2", "fig3"}) {
    Preset p = preset(name);
    for (int k = 1; k <= 99; ++k) {
      double theta = 0.01 * k;
      inspect(pds::solve_global(theta, p.R, p.d, opt), true, theta, p.R, p.d);
      inspect(pds::solve_local(theta, p.R, p.d, opt), true, theta, p.R, p.d);
      inspect(ora::solve_global(theta, p.R, p.d, opt), false, theta, p.R, p.d);
      inspect(ora::solve_local(theta, p.R, p.d, opt), false, theta, p.R, p.d);
    }
  }
  Check c;
  c.ok = fail.empty() && worst_resid <= 1e-8;
  c.detail = fail.empty() ? "stationarity residual " + fmt(worst_resid)
                          : fail;
  return c;
}

// --- criterion 7: asymptotic time-sharing stays within 2% ----------------

Check crit7() {
  Preset p = preset("fig3");
  SolverOptions opt;
  double rmin = 1e9, rmax = 0.0;
  for (int k = 2; k <= 99; ++k) {
    double theta = 0.01 * k;
    double np = pds::solve_global(theta, p.R, p.d, opt).value;
    double no = ora::solve_global(theta, p.R, p.d, opt).value;
    double r = no / np;
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
  }
  Check c;
  c.ok = rmin >= 0.98 && rmax <= 1.0 + 1e-6;
  c.detail = "ratio range [" + fmt(rmin) + ", " + fmt(rmax) + "]";
  return c;
}

// --- criterion 8: finite-blocklength values track the asymptote ----------

Check crit8() {
  Preset p = preset("fig3");
  SolverOptions opt;
  QuadSpec q = QuadSpec::parse("gl:200");
  double r65_min = 1e9, r65_max = 0.0;
  double r52_1k = 1e9, r64_1k = 1e9, r52_5k = 1e9, r64_5k = 1e9;
  for (int k = 0; k < 20; ++k) {
    double theta = 0.02 + 0.05 * k;
    Channel ch = Channel::from_theta(p.R, theta);
    double n2 = pds::solve_global(theta, p.R, p.d, opt).value;
    double n4 = ora::solve_global(theta, p.R, p.d, opt).value;
    for (long n : {1000L, 5000L}) {
      double n5 = fbl::best_pds(ch, p.d, n, q).value;
      double n6 = fbl::best_ora(ch, p.d, n, q).value;
      if (n == 1000) {
        r65_min = std::min(r65_min, n6 / n5);
        r65_max = std::max(r65_max, n6 / n5);
        r52_1k = std::min(r52_1k, n5 / n2);
        r64_1k = std::min(r64_1k, n6 / n4);
      } else {
        r52_5k = std::min(r52_5k, n5 / n2);
        r64_5k = std::min(r64_5k, n6 / n4);
      }
    }
  }
  Check c;
  c.ok = r65_min >= 0.98 && r65_max <= 1.02 && r52_1k >= 0.89 &&
         r64_1k >= 0.89 && r52_5k >= 0.97 && r64_5k >= 0.96;
  c.detail = "n=1000: time/power [" + fmt(r65_min) + ", " + fmt(r65_max) +
             "], vs asym power " + fmt(r52_1k) + " time " + fmt(r64_1k) +
             "; n=5000: power " + fmt(r52_5k) + " time " + fmt(r64_5k);
  return c;
}

// --- criterion 9: deterministic quadrature matches Monte Carlo -----------

Check crit9() {
  std::mt19937_64 rng(909);
  QuadSpec gl = QuadSpec::parse("gl:200");
  double worst_g = 0.0, worst_t = 0.0;
  for (int i = 0; i < 10; ++i) {
    int K = 2 + i % 3;
    long n = 500 + static_cast<long>(urand(rng, 0.0, 4500.0));
    double R = urand(rng, 0.1, 0.5);
    double theta = urand(rng, 0.05, 1.0);
    std::vector<double> d = random_importance(rng, K);
    std::vector<double> alpha = random_simplex(rng, K);
    fbl::Quantized w = fbl::round_to_grid(random_simplex(rng, K), n);
    Channel ch = Channel::from_theta(R, theta);
    QuadSpec mc = QuadSpec::parse("mc:1000000:" + std::to_string(1000 + i));
    worst_g = std::max(worst_g, std::abs(fbl::g_n(alpha, d, n, ch, gl) -
                                         fbl::g_n(alpha, d, n, ch, mc)));
    worst_t = std::max(worst_t, std::abs(fbl::t_n(w, d, ch, gl) -
                                         fbl::t_n(w, d, ch, mc)));
  }
  Check c;
  c.ok = worst_g <= 5e-3 && worst_t <= 5e-3;
  c.detail = "power gap " + fmt(worst_g) + ", time gap " + fmt(worst_t);
  return c;
}

// --- criterion 10: finite-blocklength gap shrinks with n ------------------

Check crit10() {
  Preset p = preset("fig2");
  SolverOptions opt;
  QuadSpec q = QuadSpec::parse("gl:200");
  double theta = 0.2;
  Channel ch = Channel::from_theta(p.R, theta);
  double n2 = pds::solve_global(theta, p.R, p.d, opt).value;
  double n4 = ora::solve_global(theta, p.R, p.d, opt).value;
  std::vector<double> gap_p, gap_t;
  for (long n : {1000L, 5000L, 20000L}) {
    gap_p.push_back(std::abs(fbl::best_pds(ch, p.d, n, q).value - n2));
    gap_t.push_back(std::abs(fbl::best_ora(ch, p.d, n, q).value - n4));
  }
  bool shrink = gap_p[0] > gap_p[1] && gap_p[1] > gap_p[2] &&
                gap_t[0] > gap_t[1] && gap_t[1] > gap_t[2];
  Check c;
  c.ok = shrink && gap_p[2] <= 0.01 && gap_t[2] <= 0.01;
  c.detail = "power gaps " + fmt(gap_p[0]) + "/" + fmt(gap_p[1]) + "/" +
             fmt(gap_p[2]) + ", time gaps " + fmt(gap_t[0]) + "/" +
             fmt(gap_t[1]) + "/" + fmt(gap_t[2]);
  return c;
}

// --- criterion 11: error-bound crossover and limits -----------------------

Check crit11() {
  double n = 1e4, rho = 3.0;
  double C = capacity(rho);
  bool low_exp = true, high_nor = true;
  int crossings = 0;
  int prev_sign = 0;
  for (int k = 0; k < 100; ++k) {
    double f = 0.01 + (1.0 - 0.01) * k / 99.0;
    double e = err_exp(n, f * C, rho);
    double o = err_nor(n, f * C, rho);
    int sign = e < o ? -1 : (e > o ? 1 : 0);
    if (k == 0) low_exp = sign < 0;
    if (k == 99) high_nor = sign > 0;
    if (sign != 0 && prev_sign != 0 && sign != prev_sign) ++crossings;
    if (sign != 0) prev_sign = sign;
  }
  double below = 1.0;
  for (double m : {1e3, 1e4, 1e5, 1e6})
    below = std::min(below, err_bound(m, 0.8 * C, rho));
  double above = 1.0;
  for (double m : {1e4, 1e5, 1e6})
    above = std::min(above, err_bound(m, 1.2 * C, rho));
  Check c;
  c.ok = low_exp && high_nor && crossings >= 1 && below <= 0.01 &&
         above >= 0.99;
  c.detail = std::string("crossings ") + std::to_string(crossings) +
             ", bound below capacity " + fmt(below) + ", above " + fmt(above);
  return c;
}

constexpr int kBudgetSec[11] = {1, 120, 120, 60, 300, 60, 120, 1800, 300,
                                1200, 60};

}  // namespace

int main(int argc, char** argv) {
  using Runner = Check (*)();
  const Runner runners[11] = {crit1, crit2, crit3, crit4,  crit5, crit6,
                              crit7, crit8, crit9, crit10, crit11};
  int which = 0;
  if (argc > 1) {
    which = std::atoi(argv[1]);
    if (which < 1 || which > 11) {
      std::fprintf(stderr, "usage: %s [criterion 1-11]\n", argv[0]);
      return 2;
    }
  }
  bool all_ok = true;
  for (int k = 1; k <= 11; ++k) {
    if (which != 0 && which != k) continue;
    auto t0 = std::chrono::steady_clock::now();
    Check c;
    try {
      c = runners[k - 1]();
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    bool within = secs <= kBudgetSec[k - 1];
    bool pass = c.ok && within;
    std::printf("criterion %d: %s (%s; %.1fs of %ds budget)\n", k,
                pass ? "PASS" : "FAIL", c.detail.c_str(), secs,
                kBudgetSec[k - 1]);
    if (!within && c.ok) std::printf("criterion %d: over time budget\n", k);
    all_ok = all_ok && pass;
  }
  return all_ok ? 0 : 1;
}
