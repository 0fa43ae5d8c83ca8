#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "fadesplit/fbl.hpp"
#include "fadesplit/pds.hpp"
#include "fadesplit/presets.hpp"
#include "fadesplit/types.hpp"

using namespace fadesplit;

namespace {
QuadSpec gl(long order) {
  QuadSpec q;
  q.scheme = QuadSpec::Scheme::gauss_laguerre;
  q.order_or_samples = order;
  return q;
}
}  // namespace

TEST_CASE("rounding onto the frame grid") {
  auto q = fbl::round_to_grid({0.5, 0.5}, 3);
  CHECK(q.counts == std::vector<long>{2, 1});  // tie goes to the earlier block
  CHECK(q.n == 3);
  CHECK(q.fractions()[0] == doctest::Approx(2.0 / 3.0));

  q = fbl::round_to_grid({0.65, 0.35, 0.0}, 10);
  CHECK(q.counts == std::vector<long>{7, 3, 0});

  q = fbl::round_to_grid({1.0 / 3, 1.0 / 3, 1.0 / 3}, 10);
  CHECK(std::accumulate(q.counts.begin(), q.counts.end(), 0L) == 10);
  CHECK(q.counts == std::vector<long>{4, 3, 3});

  // Rounded shares stay within one slot of the request; zeros are kept.
  std::vector<double> v{0.437, 0.293, 0.17, 0.1, 0.0};
  for (long n : {7L, 99L, 1000L}) {
    auto r = fbl::round_to_grid(v, n);
    CHECK(std::accumulate(r.counts.begin(), r.counts.end(), 0L) == n);
    for (std::size_t i = 0; i < v.size(); ++i) {
      CHECK(std::abs(r.fractions()[i] - v[i]) < 1.0 / static_cast<double>(n));
      if (v[i] == 0.0) CHECK(r.counts[i] == 0);
    }
  }

  CHECK_THROWS_AS(fbl::round_to_grid({0.5, 0.5}, 0), std::invalid_argument);
  CHECK_THROWS_AS(fbl::round_to_grid({0.9, 0.9}, 10), std::invalid_argument);
}

TEST_CASE("zero blocklength means certain failure") {
  Channel ch = Channel::from_theta(0.3, 0.5);
  CHECK(fbl::g_n({0.7, 0.3}, {0.6, 0.4}, 0, ch, gl(96)) == 0.0);
}

TEST_CASE("single block: power and time formulations coincide") {
  Channel ch = Channel::from_theta(0.4, 0.25);
  for (long n : {300L, 2000L}) {
    double g = fbl::g_n({1.0}, {1.0}, n, ch, gl(200));
    fbl::Quantized w;
    w.counts = {n};
    w.n = n;
    double t = fbl::t_n(w, {1.0}, ch, gl(200));
    CHECK(g == doctest::Approx(t).epsilon(1e-14));
    CHECK(g > 0.0);
    CHECK(g < 1.0);
  }
}

TEST_CASE("finite-n value approaches the asymptotic objective") {
  Preset p = preset("fig2");
  double th = 0.2;
  Channel ch = Channel::from_theta(p.R, th);
  auto sol = pds::solve_local(th, p.R, p.d);
  auto alpha = pds::alpha_from_x(sol.split, p.R);
  double gap_small = std::abs(fbl::g_n(alpha, p.d, 400, ch, gl(200)) - sol.value);
  double gap_large =
      std::abs(fbl::g_n(alpha, p.d, 20000, ch, gl(200)) - sol.value);
  CHECK(gap_large < gap_small);
  CHECK(gap_large <= 0.02);
}

TEST_CASE("starting points are feasible prefix splits") {
  Preset p = preset("fig3");
  auto xs = fbl::heuristic_x_inits(p.d, p.R);
  auto vs = fbl::heuristic_v_inits(p.d);
  REQUIRE(xs.size() == p.d.size());
  REQUIRE(vs.size() == p.d.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double wsum = 0.0, vsum = 0.0;
    for (std::size_t j = 0; j < xs[i].size(); ++j) {
      wsum += std::exp2(p.R * static_cast<double>(j)) * xs[i][j];
      vsum += vs[i][j];
      bool active = j <= i;
      CHECK((xs[i][j] > 0.0) == active);
      CHECK((vs[i][j] > 0.0) == active);
    }
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(vsum == doctest::Approx(1.0).epsilon(1e-12));
    // Power thresholds can feed the fraction conversion directly.
    CHECK_NOTHROW(pds::alpha_from_x(xs[i], p.R));
  }
}

TEST_CASE("best split beats every starting point it considered") {
  Preset p = preset("fig2");
  Channel ch = Channel::from_theta(p.R, 0.25);
  long n = 500;
  auto best_p = fbl::best_pds(ch, p.d, n, gl(96));
  for (const auto& x : fbl::heuristic_x_inits(p.d, p.R)) {
    auto alpha = pds::alpha_from_x(x, p.R);
    CHECK(best_p.value >= fbl::g_n(alpha, p.d, n, ch, gl(96)) - 1e-12);
  }
  double asum = 0.0;
  for (double a : best_p.alpha) asum += a;
  CHECK(asum == doctest::Approx(1.0).epsilon(1e-10));

  auto best_o = fbl::best_ora(ch, p.d, n, gl(96));
  CHECK(std::accumulate(best_o.w.counts.begin(), best_o.w.counts.end(), 0L) ==
        n);
  for (const auto& v : fbl::heuristic_v_inits(p.d)) {
    auto w = fbl::round_to_grid(v, n);
    CHECK(best_o.value >= fbl::t_n(w, p.d, ch, gl(96)) - 1e-12);
  }
}

TEST_CASE("input validation") {
  Channel ch = Channel::from_theta(0.3, 0.5);
  CHECK_THROWS_AS(fbl::g_n({1.0}, {0.6, 0.4}, 100, ch, gl(96)),
                  std::invalid_argument);
  fbl::Quantized w;
  w.counts = {50, 50};
  w.n = 100;
  CHECK_THROWS_AS(fbl::t_n(w, {1.0}, ch, gl(96)), std::invalid_argument);
}
