#include "fadesplit/fbl.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fadesplit/bounds.hpp"
#include "fadesplit/ora.hpp"
#include "fadesplit/pds.hpp"

namespace fadesplit::fbl {

namespace {

constexpr double kLog2e = 1.4426950408889634;

// One-sigma width (in SNR units) of the decode transition of a length-m
// block whose capacity threshold sits at rho_star: the normal-approximation
// argument changes by one over sqrt(V)/(sqrt(m) C').  Only the scale
// matters; the quadrature brackets a generous multiple of it.
double threshold_halfwidth(double m, double rho_star) {
  double cprime = kLog2e / (1.0 + rho_star);
  return std::sqrt(v_tot(rho_star)) / (std::sqrt(m) * cprime);
}

}  // namespace

std::vector<double> Quantized::fractions() const {
  std::vector<double> out(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i)
    out[i] = static_cast<double>(counts[i]) / static_cast<double>(n);
  return out;
}

Quantized round_to_grid(const std::vector<double>& v, long n) {
  if (n <= 0) throw std::invalid_argument("round_to_grid: n must be positive");
  std::size_t K = v.size();
  Quantized q;
  q.n = n;
  q.counts.resize(K);
  std::vector<double> frac(K);
  long assigned = 0;
  for (std::size_t i = 0; i < K; ++i) {
    double scaled = v[i] * static_cast<double>(n);
    q.counts[i] = static_cast<long>(std::floor(scaled));
    frac[i] = scaled - static_cast<double>(q.counts[i]);
    assigned += q.counts[i];
  }
  long r = n - assigned;
  if (r < 0 || r > static_cast<long>(K))
    throw std::invalid_argument("round_to_grid: split does not sum to 1");
  std::vector<std::size_t> order(K);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return frac[a] > frac[b]; });
  for (long k = 0; k < r; ++k) ++q.counts[order[k]];
  return q;
}

double g_n(const std::vector<double>& alpha, const std::vector<double>& d,
           long n, const Channel& ch, const QuadSpec& spec) {
  if (alpha.size() != d.size())
    throw std::invalid_argument("g_n: size mismatch");
  std::size_t K = d.size();
  std::vector<double> beta(K);  // power assigned after layer i
  double tail = 0.0;
  for (std::size_t i = K; i-- > 0;) {
    beta[i] = tail;
    tail += alpha[i];
  }
  auto integrand = [&](double gamma) {
    double prod = 1.0, s = 0.0;
    for (std::size_t i = 0; i < K; ++i) {
      double sinr = gamma * alpha[i] * ch.P / (1.0 + gamma * ch.P * beta[i]);
      prod *= 1.0 - err_bound(static_cast<double>(n), ch.R, sinr);
      s += d[i] * prod;
    }
    return s;
  };
  std::vector<Transition> sharp;
  if (n >= 1) {
    double rho_star = std::exp2(ch.R) - 1.0;
    for (std::size_t j = 0; j < K; ++j) {
      double a = alpha[j] * ch.P, b = beta[j] * ch.P;
      // Layers whose SINR saturates below the threshold never decode and
      // vary smoothly; they need no panels.
      if (!(a > rho_star * b)) continue;
      double gs = rho_star / (a - rho_star * b);
      double slope = a / ((1.0 + b * gs) * (1.0 + b * gs));
      double hw = threshold_halfwidth(static_cast<double>(n), rho_star);
      sharp.push_back({gs, hw / slope});
    }
  }
  return exp_expectation(integrand, ch.sigma2, spec, sharp);
}

double t_n(const Quantized& w, const std::vector<double>& d, const Channel& ch,
           const QuadSpec& spec) {
  if (w.counts.size() != d.size())
    throw std::invalid_argument("t_n: size mismatch");
  std::size_t K = d.size();
  auto integrand = [&](double gamma) {
    double s = 0.0;
    double prev_m = -1.0, prev_term = 0.0;  // counts are sorted in practice
    for (std::size_t i = 0; i < K; ++i) {
      if (w.counts[i] == 0) continue;
      double m = static_cast<double>(w.counts[i]);
      if (m != prev_m) {
        double rate = ch.R * static_cast<double>(w.n) / m;
        prev_term = 1.0 - err_bound(m, rate, gamma * ch.P);
        prev_m = m;
      }
      s += d[i] * prev_term;
    }
    return s;
  };
  std::vector<Transition> sharp;
  double pm = -1.0;
  for (std::size_t i = 0; i < K; ++i) {
    if (w.counts[i] == 0) continue;
    double m = static_cast<double>(w.counts[i]);
    if (m == pm) continue;
    pm = m;
    double rate = ch.R * static_cast<double>(w.n) / m;
    double rho_star = std::exp2(rate) - 1.0;
    if (!std::isfinite(rho_star)) continue;  // block can never decode
    sharp.push_back({rho_star / ch.P, threshold_halfwidth(m, rho_star) / ch.P});
  }
  return exp_expectation(integrand, ch.sigma2, spec, sharp);
}

std::vector<std::vector<double>> heuristic_x_inits(const std::vector<double>& d,
                                                   double R) {
  std::size_t K = d.size();
  std::vector<std::vector<double>> out(K, std::vector<double>(K, 0.0));
  double head = 0.0;
  for (std::size_t i = 0; i < K; ++i) {
    head += d[i];
    for (std::size_t j = 0; j <= i; ++j)
      out[i][j] = d[j] / (head * std::exp2(R * static_cast<double>(j)));
  }
  return out;
}

std::vector<std::vector<double>> heuristic_v_inits(
    const std::vector<double>& d) {
  std::size_t K = d.size();
  std::vector<std::vector<double>> out(K, std::vector<double>(K, 0.0));
  double head = 0.0;
  for (std::size_t i = 0; i < K; ++i) {
    head += d[i];
    for (std::size_t j = 0; j <= i; ++j) out[i][j] = d[j] / head;
  }
  return out;
}

PdsResult best_pds(const Channel& ch, const std::vector<double>& d, long n,
                   const QuadSpec& spec, const SolverOptions& opt) {
  std::vector<std::vector<double>> xs = heuristic_x_inits(d, ch.R);
  if (d.size() >= 2) {
    auto cs = pds::local_candidates(ch.theta, ch.R, d, opt);
    if (!cs.single_layer_only)
      for (auto& c : cs.candidates) xs.push_back(c.split);
  }
  PdsResult best{{}, -1.0};
  for (const auto& x : xs) {
    std::vector<double> alpha = pds::alpha_from_x(x, ch.R);
    double val = g_n(alpha, d, n, ch, spec);
    if (val > best.value) best = {std::move(alpha), val};
  }
  return best;
}

OraResult best_ora(const Channel& ch, const std::vector<double>& d, long n,
                   const QuadSpec& spec, const SolverOptions& opt) {
  std::vector<std::vector<double>> vs = heuristic_v_inits(d);
  if (d.size() >= 2) {
    auto cs = ora::local_candidates(ch.theta, ch.R, d, opt);
    if (!cs.single_layer_only)
      for (auto& c : cs.candidates) vs.push_back(c.split);
  }
  OraResult best{{}, -1.0};
  for (const auto& v : vs) {
    Quantized w = round_to_grid(v, n);
    double val = t_n(w, d, ch, spec);
    if (val > best.value) best = {std::move(w), val};
  }
  return best;
}

}  // namespace fadesplit::fbl
