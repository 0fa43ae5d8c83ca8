#pragma once

#include <vector>

#include "fadesplit/quadrature.hpp"
#include "fadesplit/types.hpp"

// Finite-blocklength objectives for both schemes, the integer rounding
// of a time split, the heuristic initial splits, and the two
// best-candidate searches that approximate the (intractable) exact
// finite-blocklength maximizations.

namespace fadesplit::fbl {

// Time split quantized to the blocklength grid: fraction i is
// counts[i]/n channel uses.
struct Quantized {
  std::vector<long> counts;
  long n = 0;

  std::vector<double> fractions() const;
};

// Largest-fractional-part rounding of v onto multiples of 1/n; ties
// prefer the smaller index. Preserves zeros and |v_i - w_i| < 1/n.
Quantized round_to_grid(const std::vector<double>& v, long n);

// Expected weighted sum of successfully decoded prefixes under
// power-domain superposition at blocklength n: layer j is received at
// SINR gamma alpha_j P / (1 + gamma P beta_j), decoded layers are
// subtracted in order, and block i counts when layers 1..i all decode.
double g_n(const std::vector<double>& alpha, const std::vector<double>& d,
           long n, const Channel& ch, const QuadSpec& spec);

// Expected weighted sum of decoded blocks under time sharing: block i
// gets counts[i] channel uses at rate R n / counts[i] and SNR gamma P.
double t_n(const Quantized& w, const std::vector<double>& d,
           const Channel& ch, const QuadSpec& spec);

// K transformed splits with support sizes 1..K, entry j of the i-th
// split proportional to d_j / 2^{R(j-1)} over the first i blocks.
std::vector<std::vector<double>> heuristic_x_inits(
    const std::vector<double>& d, double R);

// K time splits with support sizes 1..K, entry j of the i-th split
// d_j / sum_{m<=i} d_m.
std::vector<std::vector<double>> heuristic_v_inits(
    const std::vector<double>& d);

// Best finite-blocklength PDS candidate: evaluates g_n over the
// asymptotic stationarity candidates (when theta does not force the
// single-layer split) together with the heuristic splits, and returns
// the winning power split with its value.
struct PdsResult {
  std::vector<double> alpha;
  double value;
};
PdsResult best_pds(const Channel& ch, const std::vector<double>& d, long n,
                   const QuadSpec& spec, const SolverOptions& opt = {});

// ORA counterpart: evaluates t_n over the rounded asymptotic candidates
// and rounded heuristic splits.
struct OraResult {
  Quantized w;
  double value;
};
OraResult best_ora(const Channel& ch, const std::vector<double>& d, long n,
                   const QuadSpec& spec, const SolverOptions& opt = {});

}  // namespace fadesplit::fbl
