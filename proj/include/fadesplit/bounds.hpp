#pragma once

// AWGN capacity, total information-density variance, and the
// finite-blocklength block error upper bounds: an error-exponent bound,
// a normal-approximation bound, and their pointwise minimum.
//
// Blocklength n may be any real >= 0; err_bound(0, R, rho) = 1 and
// err_bound(n, R, 0) = 1 by continuous extension.

namespace fadesplit {

// log2(1 + rho).
double capacity(double rho);

// (log2 e)^2 * 2 rho / (1 + rho).
double v_tot(double rho);

// exp(-n * max_{lam in [0,1]} [lam ln(1 + rho/(1+lam)) - lam R ln 2]).
// The inner maximum is found by golden-section search (tolerance 1e-10
// in lam) plus endpoint checks; exponents below -745 underflow to 0.
// Requires n > 0.
double err_exp(double n, double R, double rho);

// min{1, Phi((sqrt(n)(R - C(rho)) + log2(n)/(2 sqrt(n))) / sqrt(V_tot))
//        + 2/sqrt(n)}.
// Requires n > 0; returns 1 whenever 2/sqrt(n) >= 1 or rho = 0.
double err_nor(double n, double R, double rho);

// min of the two bounds, with the n = 0 and rho = 0 conventions above.
double err_bound(double n, double R, double rho);

}  // namespace fadesplit
