// Copyright (c) 2026 NLRSim Developers.
// SPDX-License-Identifier: Apache-2.0
#ifndef NLR_AAA_HPP
#define NLR_AAA_HPP

#include <vector>

#include "nlr/types.hpp"

namespace nlr {

// Rational approximation of the thermal Bose factor,
//   coth(z) ~ 1/z + sum_n 2 z r_n / (z^2 + z_n^2),   z = hbar w / (2 kB T),
// fitted on [-z_max, z_max] by a symmetrized AAA iteration (support points
// inserted in +/- pairs with shared weights, which makes the barycentric
// interpolant odd by construction).
struct CothFit {
  double kbt = 1.0;        // k_B T / hbar in inverse base time
  double cutoff = 0.0;     // Omega, rad per base time
  double tolerance = 0.0;  // absolute, on coth values
  double achieved_error = 0.0;
  std::vector<double> z_poles;     // z_n > 0, ascending
  std::vector<double> z_residues;  // r_n > 0

  int pairs() const { return static_cast<int>(z_poles.size()); }
  double z_max() const { return cutoff / (2.0 * kbt); }

  // Fluctuation-pole frequencies omega_n^f = 2 kbt z_n and weights
  // r_n^f = 2 kbt r_n in circuit units.
  std::vector<double> omega_f() const;
  std::vector<double> r_f() const;

  // Fitted coth(z) including the 1/z term.
  Complex eval_z(Complex z) const;
  // Fitted coth(hbar w / 2 kB T) at (complex) circuit frequency.
  Complex eval_omega(Complex omega) const;
  // Pole-subtracted smooth part, fit(z) - 1/z; stable near z = 0.
  Complex eval_smooth_z(Complex z) const;
};

// Error on the uniform 2001-point verification grid against the exact coth,
// evaluated through the pole-subtracted parts for |z| < z_max * 1e-6.
double coth_fit_max_error(const CothFit& fit, int grid_points = 2001);

// Dimensionless fit on [-z_max, z_max]; throws Error(Numerics) carrying the
// best achieved error when tol cannot be reached within max_pairs.
CothFit aaa_coth_fit_dimensionless(double z_max, double tol, int max_pairs);

// Fit in circuit units for bath temperature kbt and cutoff Omega.
CothFit aaa_coth_fit(double kbt, double cutoff, double tol, int max_pairs);

// Exact coth with a series fallback near zero (and the smooth part).
double coth_exact(double z);
double coth_smooth_exact(double z);  // coth(z) - 1/z

}  // namespace nlr

#endif  // NLR_AAA_HPP
