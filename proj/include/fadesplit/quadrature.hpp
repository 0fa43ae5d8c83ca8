#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

// Expectation over an exponentially distributed channel gain
// gamma ~ Exp(mean sigma2), either by Gauss-Laguerre quadrature after
// the substitution gamma = sigma2 * u, or by Monte Carlo over a
// counter-based uniform stream (seed-deterministic regardless of how
// the sample range is partitioned across workers).

namespace fadesplit {

struct QuadSpec {
  enum class Scheme { gauss_laguerre, monte_carlo };
  Scheme scheme = Scheme::gauss_laguerre;
  long order_or_samples = 200;
  std::uint64_t seed = 0;

  // Parses "gl:ORDER" or "mc:SAMPLES:SEED"; throws std::invalid_argument.
  static QuadSpec parse(const std::string& text);
  std::string to_string() const;
};

// Nodes and weights for integral_0^inf f(u) e^{-u} du; cached per order.
struct GaussLaguerre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussLaguerre& gauss_laguerre(int order);

// Nodes and weights for integral_0^1 f(u) du; cached per order.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussLegendre& gauss_legendre(int order);

// k-th uniform variate in (0, 1) of the stream identified by seed.
double counter_uniform(std::uint64_t seed, std::uint64_t k);

// E[f(gamma)] under the given spec. Suitable for integrands that are
// smooth on the scale of the exponential weight.
double exp_expectation(const std::function<double(double)>& f, double sigma2,
                       const QuadSpec& spec);

// A localized steep feature of an integrand: f swings over
// [center - halfwidth, center + halfwidth] (gamma units).
struct Transition {
  double center;
  double halfwidth;
};

// E[f(gamma)] for integrands with known sharp transitions (the decode
// thresholds of the finite-blocklength bounds, whose width shrinks like
// 1/sqrt(n) and defeats any fixed global rule). The deterministic path
// integrates Gauss-Legendre panels clustered around each transition
// plus a Gauss-Laguerre tail; order_or_samples sets the per-panel
// density. The Monte Carlo path ignores the hints.
double exp_expectation(const std::function<double(double)>& f, double sigma2,
                       const QuadSpec& spec,
                       const std::vector<Transition>& sharp);

// Monte Carlo mean and standard error over gamma = -sigma2 ln(U).
struct McStats {
  double mean;
  double stderr_;
};
McStats mc_expectation(const std::function<double(double)>& f, double sigma2,
                       long samples, std::uint64_t seed);

}  // namespace fadesplit
