#include "fadesplit/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>

namespace fadesplit {

namespace {

// Laguerre recurrence up to L_n; rescales when the magnitude passes 1e100
// so order-200 evaluations stay finite.  Common log-scale is returned; the
// Newton ratio L_n/L_n' is scale-free.
struct LagEval {
  double pn;    // L_n(z), scaled
  double pnm1;  // L_{n-1}(z), scaled
  double log_scale;
};

LagEval laguerre_eval(int n, double z) {
  double p0 = 1.0, p1 = 1.0 - z, ls = 0.0;
  for (int k = 1; k < n; ++k) {
    double p2 = ((2.0 * k + 1.0 - z) * p1 - k * p0) / (k + 1.0);
    p0 = p1;
    p1 = p2;
    if (std::abs(p1) > 1e100) {
      p0 *= 1e-100;
      p1 *= 1e-100;
      ls += 100.0 * 2.30258509299404568402;
    }
  }
  return {p1, p0, ls};
}

GaussLaguerre build_gauss_laguerre(int order) {
  if (order < 1) throw std::invalid_argument("gauss_laguerre: order >= 1");
  GaussLaguerre rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  double z = 0.0;
  for (int i = 0; i < order; ++i) {
    if (i == 0) {
      z = 3.0 / (1.0 + 2.4 * order);
    } else if (i == 1) {
      z += 15.0 / (1.0 + 2.5 * order);
    } else {
      double ai = i - 1;
      z += (1.0 + 2.55 * ai) / (1.9 * ai) * (z - rule.nodes[i - 2]);
    }
    for (int it = 0; it < 100; ++it) {
      LagEval nv = laguerre_eval(order, z);
      double deriv = order * (nv.pn - nv.pnm1) / z;
      double dz = nv.pn / deriv;
      z -= dz;
      if (std::abs(dz) <= 1e-14 * z) break;
    }
    rule.nodes[i] = z;
    LagEval ev = laguerre_eval(order, z);
    double pnp1 =
        ((2.0 * order + 1.0 - z) * ev.pn - order * ev.pnm1) / (order + 1.0);
    double log_w = std::log(z) -
                   2.0 * (std::log(std::abs(pnp1)) + ev.log_scale +
                          std::log(order + 1.0));
    rule.weights[i] = log_w < -745.0 ? 0.0 : std::exp(log_w);
  }
  return rule;
}

GaussLegendre build_gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order >= 1");
  GaussLegendre rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (order + 0.5));
    double deriv = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 1; k < order; ++k) {
        double p2 = ((2.0 * k + 1.0) * z * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
      }
      deriv = order * (z * p1 - p0) / (z * z - 1.0);
      double dz = p1 / deriv;
      z -= dz;
      if (std::abs(dz) <= 1e-15) break;
    }
    double w = 2.0 / ((1.0 - z * z) * deriv * deriv);
    // Mapped onto [0,1]; the pair (i, order-1-i) collapses to the same
    // slot for the middle root of an odd order.
    rule.nodes[i] = 0.5 * (1.0 - z);
    rule.weights[i] = 0.5 * w;
    rule.nodes[order - 1 - i] = 0.5 * (1.0 + z);
    rule.weights[order - 1 - i] = 0.5 * w;
  }
  return rule;
}

}  // namespace

const GaussLaguerre& gauss_laguerre(int order) {
  static std::mutex mtx;
  static std::map<int, GaussLaguerre> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(order);
  if (it == cache.end())
    it = cache.emplace(order, build_gauss_laguerre(order)).first;
  return it->second;
}

const GaussLegendre& gauss_legendre(int order) {
  static std::mutex mtx;
  static std::map<int, GaussLegendre> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(order);
  if (it == cache.end())
    it = cache.emplace(order, build_gauss_legendre(order)).first;
  return it->second;
}

double counter_uniform(std::uint64_t seed, std::uint64_t k) {
  std::uint64_t x = seed + 0x9E3779B97F4A7C15ULL * (k + 1);
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  // (0,1): the offset keeps log() finite at both ends.
  return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
}

McStats mc_expectation(const std::function<double(double)>& f, double sigma2,
                       long samples, std::uint64_t seed) {
  if (samples <= 0) throw std::invalid_argument("mc_expectation: no samples");
  constexpr std::uint64_t kBlock = 4096;
  std::uint64_t total = static_cast<std::uint64_t>(samples);
  double sum = 0.0, sum_sq = 0.0;
  for (std::uint64_t base = 0; base < total; base += kBlock) {
    std::uint64_t end = std::min(total, base + kBlock);
    double bs = 0.0, bs2 = 0.0;
    for (std::uint64_t k = base; k < end; ++k) {
      double gamma = -sigma2 * std::log(counter_uniform(seed, k));
      double v = f(gamma);
      bs += v;
      bs2 += v * v;
    }
    sum += bs;
    sum_sq += bs2;
  }
  double mean = sum / samples;
  double var = std::max(0.0, sum_sq / samples - mean * mean);
  McStats st;
  st.mean = mean;
  st.stderr_ = std::sqrt(var / samples);
  return st;
}

double exp_expectation(const std::function<double(double)>& f, double sigma2,
                       const QuadSpec& spec) {
  if (!(sigma2 > 0.0))
    throw std::invalid_argument("exp_expectation: sigma2 must be positive");
  if (spec.scheme == QuadSpec::Scheme::gauss_laguerre) {
    const auto& rule = gauss_laguerre(static_cast<int>(spec.order_or_samples));
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      s += rule.weights[i] * f(sigma2 * rule.nodes[i]);
    return s;
  }
  return mc_expectation(f, sigma2, spec.order_or_samples, spec.seed).mean;
}

double exp_expectation(const std::function<double(double)>& f, double sigma2,
                       const QuadSpec& spec,
                       const std::vector<Transition>& sharp) {
  if (spec.scheme == QuadSpec::Scheme::monte_carlo || sharp.empty())
    return exp_expectation(f, sigma2, spec);
  if (!(sigma2 > 0.0))
    throw std::invalid_argument("exp_expectation: sigma2 must be positive");

  // Panel edges in u = gamma/sigma2 units.  halfwidth is the one-sigma
  // scale of the swing, so each transition gets a dense core [c-2w, c+2w],
  // shoulders out to 6w, and wide flanks to 20w that absorb the slower
  // exponent-bound swing and the crossover kinks of the two bounds.
  // Features buried past e^{-60} of the weight cannot move the result and
  // are dropped.  A Gauss-Laguerre rule picks up the saturated tail.
  std::vector<double> edges{0.0};
  double u_hi = 0.0;
  for (const Transition& tr : sharp) {
    double c = tr.center / sigma2;
    if (!(c > 0.0) || !std::isfinite(c)) continue;
    double w = tr.halfwidth / sigma2;
    if (!std::isfinite(w)) continue;
    w = std::max(w, 1e-12 * std::max(c, 1.0));
    if (c - 20.0 * w > 60.0) continue;
    for (double m : {-20.0, -6.0, -2.0, 2.0, 6.0, 20.0}) {
      double e = c + m * w;
      if (e > 0.0) edges.push_back(e);
    }
    u_hi = std::max(u_hi, c + 20.0 * w);
  }
  if (!(u_hi > 0.0)) return exp_expectation(f, sigma2, spec);

  std::sort(edges.begin(), edges.end());
  std::vector<double> clean{0.0};
  for (double e : edges)
    if (e > clean.back() && e < u_hi) clean.push_back(e);
  clean.push_back(u_hi);

  long order = spec.order_or_samples;
  int per_panel = static_cast<int>(std::min<long>(64, std::max<long>(8, order / 12)));
  const GaussLegendre& pan = gauss_legendre(per_panel);
  double total = 0.0;
  for (std::size_t p = 0; p + 1 < clean.size(); ++p) {
    // The e^{-u} factor itself limits the usable panel width.
    int pieces = static_cast<int>(std::ceil((clean[p + 1] - clean[p]) / 2.0));
    if (pieces < 1) pieces = 1;
    double h = (clean[p + 1] - clean[p]) / pieces;
    for (int q = 0; q < pieces; ++q) {
      double a0 = clean[p] + q * h;
      for (std::size_t i = 0; i < pan.nodes.size(); ++i) {
        double u = a0 + h * pan.nodes[i];
        double wt = h * pan.weights[i] * std::exp(-u);
        if (wt > 0.0) total += wt * f(sigma2 * u);
      }
    }
  }
  double tail_scale = std::exp(-u_hi);
  if (tail_scale > 0.0) {
    const GaussLaguerre& tail = gauss_laguerre(32);
    double s = 0.0;
    for (std::size_t i = 0; i < tail.nodes.size(); ++i)
      s += tail.weights[i] * f(sigma2 * (u_hi + tail.nodes[i]));
    total += tail_scale * s;
  }
  return total;
}

QuadSpec QuadSpec::parse(const std::string& text) {
  QuadSpec spec;
  auto bad = [&] {
    throw std::invalid_argument("quadrature spec must be gl:ORDER or mc:SAMPLES:SEED, got '" +
                                text + "'");
  };
  auto parse_u64 = [&](const std::string& s) -> std::uint64_t {
    if (s.empty() || s.size() > 18 ||
        s.find_first_not_of("0123456789") != std::string::npos)
      bad();
    return std::stoull(s);
  };
  auto colon = text.find(':');
  if (colon == std::string::npos) bad();
  std::string kind = text.substr(0, colon);
  std::string rest = text.substr(colon + 1);
  if (kind == "gl") {
    spec.scheme = Scheme::gauss_laguerre;
    spec.order_or_samples = static_cast<long>(parse_u64(rest));
    if (spec.order_or_samples == 0) bad();
  } else if (kind == "mc") {
    auto colon2 = rest.find(':');
    if (colon2 == std::string::npos) bad();
    spec.scheme = Scheme::monte_carlo;
    spec.order_or_samples = static_cast<long>(parse_u64(rest.substr(0, colon2)));
    spec.seed = parse_u64(rest.substr(colon2 + 1));
    if (spec.order_or_samples == 0) bad();
  } else {
    bad();
  }
  return spec;
}

std::string QuadSpec::to_string() const {
  if (scheme == Scheme::gauss_laguerre)
    return "gl:" + std::to_string(order_or_samples);
  return "mc:" + std::to_string(order_or_samples) + ":" + std::to_string(seed);
}

}  // namespace fadesplit
