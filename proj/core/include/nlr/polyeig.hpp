// Copyright (c) 2026 NLRSim Developers.
// SPDX-License-Identifier: Apache-2.0
#ifndef NLR_POLYEIG_HPP
#define NLR_POLYEIG_HPP

#include <vector>

#include "nlr/matpoly.hpp"

namespace nlr {

// Finite eigenvalues of the matrix polynomial T(w) = T0 + T1 w + T2 w^2,
// i.e. roots of det T(w) = 0, via companion linearization and the QZ
// factorization (LAPACK zggev). Eigenvalues with |beta| ~ 0 (at infinity)
// and outliers beyond infinite_cutoff * median|w| are discarded.
std::vector<Complex> polyeig_quadratic(const MatPoly& t, double infinite_cutoff = 1e8);

// Generalized eigenvalues of (A, B): lambda B x = A x. Infinite eigenvalues
// are returned as such only when keep_infinite is true.
std::vector<Complex> generalized_eigenvalues(const MatrixXc& a, const MatrixXc& b,
                                             bool keep_infinite = false);

}  // namespace nlr

#endif  // NLR_POLYEIG_HPP
