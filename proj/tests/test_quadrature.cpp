#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "fadesplit/quadrature.hpp"

using namespace fadesplit;

TEST_CASE("laguerre rule integrates exponential moments") {
  for (int order : {8, 32, 200}) {
    const auto& rule = gauss_laguerre(order);
    REQUIRE(rule.nodes.size() == static_cast<std::size_t>(order));
    double s0 = 0.0, s1 = 0.0, s2 = 0.0;
    for (int i = 0; i < order; ++i) {
      CHECK(rule.nodes[i] > 0.0);
      if (i) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
      s0 += rule.weights[i];
      s1 += rule.weights[i] * rule.nodes[i];
      s2 += rule.weights[i] * rule.nodes[i] * rule.nodes[i];
    }
    CHECK(std::abs(s0 - 1.0) <= 5e-11);
    CHECK(std::abs(s1 - 1.0) <= 5e-11);
    CHECK(std::abs(s2 - 2.0) <= 2e-10);
  }
}

TEST_CASE("legendre rule integrates unit-interval polynomials") {
  const auto& rule = gauss_legendre(16);
  double s0 = 0.0, s1 = 0.0, s25 = 0.0, se = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    CHECK(rule.nodes[i] > 0.0);
    CHECK(rule.nodes[i] < 1.0);
    s0 += rule.weights[i];
    s1 += rule.weights[i] * rule.nodes[i];
    s25 += rule.weights[i] * std::pow(rule.nodes[i], 25.0);
    se += rule.weights[i] * std::exp(rule.nodes[i]);
  }
  CHECK(std::abs(s0 - 1.0) <= 1e-14);
  CHECK(std::abs(s1 - 0.5) <= 1e-14);
  CHECK(std::abs(s25 - 1.0 / 26.0) <= 1e-14);
  CHECK(std::abs(se - (std::exp(1.0) - 1.0)) <= 1e-13);
}

TEST_CASE("counter stream is deterministic and in range") {
  double a = counter_uniform(42, 7);
  CHECK(counter_uniform(42, 7) == a);
  CHECK(counter_uniform(43, 7) != a);
  CHECK(counter_uniform(42, 8) != a);
  double mean = 0.0;
  const int n = 100000;
  for (int k = 0; k < n; ++k) {
    double u = counter_uniform(9, k);
    CHECK(u > 0.0);
    CHECK(u < 1.0);
    mean += u;
  }
  mean /= n;
  CHECK(std::abs(mean - 0.5) <= 4.0 / std::sqrt(12.0 * n));
}

TEST_CASE("monte carlo expectation basics") {
  auto c = mc_expectation([](double) { return 3.5; }, 2.0, 10000, 1);
  CHECK(c.mean == 3.5);
  CHECK(c.stderr_ == 0.0);
  CHECK_THROWS_AS(mc_expectation([](double) { return 1.0; }, 2.0, 0, 1),
                  std::invalid_argument);
  // E[gamma] = sigma2, with a consistent error estimate.
  auto m = mc_expectation([](double g) { return g; }, 1.7, 400000, 5);
  CHECK(std::abs(m.mean - 1.7) <= 5.0 * m.stderr_);
  CHECK(m.stderr_ < 0.01);
}

TEST_CASE("plain expectation against closed forms") {
  QuadSpec gl;
  gl.scheme = QuadSpec::Scheme::gauss_laguerre;
  gl.order_or_samples = 200;
  double sigma2 = 0.9;
  CHECK(std::abs(exp_expectation([](double g) { return g; }, sigma2, gl) -
                 sigma2) <= 1e-10);
  // E[e^{-gamma}] = 1/(1+sigma2).
  double got = exp_expectation([](double g) { return std::exp(-g); }, sigma2, gl);
  CHECK(std::abs(got - 1.0 / (1.0 + sigma2)) <= 1e-9);
  CHECK_THROWS_AS(exp_expectation([](double) { return 1.0; }, 0.0, gl),
                  std::invalid_argument);
}

TEST_CASE("transition hints resolve a step the plain rule cannot") {
  QuadSpec gl;
  gl.scheme = QuadSpec::Scheme::gauss_laguerre;
  gl.order_or_samples = 200;
  double sigma2 = 1.3, cut = 1.04;
  auto step = [&](double g) { return g > cut ? 1.0 : 0.0; };
  double exact = std::exp(-cut / sigma2);
  double plain = exp_expectation(step, sigma2, gl);
  double panel = exp_expectation(step, sigma2, gl, {{cut, 1e-6}});
  CHECK(std::abs(panel - exact) <= 1e-5);
  CHECK(std::abs(panel - exact) < std::abs(plain - exact));

  // On a smooth integrand both paths agree.
  auto smooth = [](double g) { return g / (1.0 + g); };
  double a = exp_expectation(smooth, sigma2, gl);
  double b = exp_expectation(smooth, sigma2, gl, {{0.7, 0.25}});
  CHECK(std::abs(a - b) <= 1e-6);

  // Degenerate hints fall back to the plain rule; MC ignores hints.
  double inf = std::numeric_limits<double>::infinity();
  CHECK(exp_expectation(smooth, sigma2, gl, {{-1.0, 0.1}, {inf, 1.0}}) == a);
  QuadSpec mc;
  mc.scheme = QuadSpec::Scheme::monte_carlo;
  mc.order_or_samples = 50000;
  mc.seed = 3;
  CHECK(exp_expectation(step, sigma2, mc, {{cut, 1e-6}}) ==
        exp_expectation(step, sigma2, mc));
}

TEST_CASE("spec parsing round-trips and rejects junk") {
  QuadSpec a = QuadSpec::parse("gl:200");
  CHECK(a.scheme == QuadSpec::Scheme::gauss_laguerre);
  CHECK(a.order_or_samples == 200);
  CHECK(a.to_string() == "gl:200");
  QuadSpec b = QuadSpec::parse("mc:1000000:42");
  CHECK(b.scheme == QuadSpec::Scheme::monte_carlo);
  CHECK(b.order_or_samples == 1000000);
  CHECK(b.seed == 42);
  CHECK(b.to_string() == "mc:1000000:42");
  for (const char* bad : {"", "gl", "gl:", "gl:0", "gl:12x", "mc:100",
                          "mc:100:", "mc::7", "mc:1:2:3", "laguerre:5"}) {
    CHECK_THROWS_AS(QuadSpec::parse(bad), std::invalid_argument);
  }
}
