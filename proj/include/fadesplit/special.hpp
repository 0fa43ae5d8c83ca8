#pragma once

// Scalar kernels: the two real Lambert W branches, the unimodal map
// psi(y) = y^2 e^{-y} with its two-sided inversion, and the standard
// normal CDF. All functions are pure and thread-safe.

namespace fadesplit {

// 4 e^{-2}, the maximum of psi (attained at y = 2).
extern const double psi_max;

// Principal branch on [-1/e, 0), range [-1, 0).
// Residual |w e^w - x| <= 1e-12 relative. Arguments within 1e-14 below
// -1/e are clamped to -1/e; anything else outside the domain throws
// std::domain_error.
double lambert_w0(double x);

// Secondary branch on [-1/e, 0), range (-inf, -1].
double lambert_wm1(double x);

// psi(y) = y^2 e^{-y} for y > 0; tends to 0 as y -> inf.
double psi(double y);

// Smaller root of psi(y) = c in (0, 2], for c in (0, psi_max].
// Values of c within 1e-12 above psi_max are clamped (rounding slack);
// anything else out of range throws std::domain_error.
double psi_inv_lower(double c);

// Larger root of psi(y) = c in [2, inf).
double psi_inv_upper(double c);

// Phi(z) via erfc; absolute error <= 1e-10 including deep tails.
double std_normal_cdf(double z);

}  // namespace fadesplit
