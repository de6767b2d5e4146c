// Copyright (c) 2026 NLRSim Developers.
// SPDX-License-Identifier: Apache-2.0
#ifndef NLR_CIRCUIT_HPP
#define NLR_CIRCUIT_HPP

#include <vector>

#include "nlr/matpoly.hpp"
#include "nlr/units.hpp"

namespace nlr {

// Keldysh self-energy of all linear elements and ports over node fluxes and
// port fields. Row index space of the retarded block is the quantum side
// (phi_q[1..N], eta[1..K]) and the column space the classical side
// (phi_c[1..N], v[1..K]). Sign conventions follow the action form in which a
// port contributes the block [[-i w/Z, -2/Z], [i w, 1]] on its
// (node, field) pair and the reactive elements contribute 1/L - w^2 C on the
// node block.
struct CircuitBlocks {
  int nodes = 0;    // N (ground excluded)
  int n_ports = 0;  // K
  double kbt = 0.0;
  MatPoly sigma_r;         // degree 2, (N+K) x (N+K)
  MatPoly keldysh_factor;  // degree 1, Sigma^K(w) = coth(w / (2 kbt)) * F(w)

  MatrixXc eval_retarded(Complex omega) const { return sigma_r.eval(omega); }
  MatrixXc eval_advanced(Complex omega) const {
    return sigma_r.eval(std::conj(omega)).adjoint();
  }
  MatrixXc eval_keldysh(Complex omega) const;
};

CircuitBlocks assemble_circuit_self_energy(const ScaledCircuit& circuit);

// Unimodular change of variables phi = Q [psi; psi'] separating the junction
// flux differences (core) from the leftover linear coordinates (interface).
struct CoreSplit {
  MatrixXi q;          // N x N, |det Q| = 1
  MatrixXi q_inverse;  // integer as well
  int n_core = 0;
  // Integer expansion of every junction's flux difference over the core
  // coordinates psi_1..psi_ncore (row per junction in netlist order).
  MatrixXi junction_weights;
};

CoreSplit choose_core_split(const ScaledCircuit& circuit);

// Core self-energy after eliminating the interface by a Schur complement.
// The "c" index space is (psi_c[1..n_core], v[1..K]) against
// (psi_q[1..n_core], eta[1..K]); m = n_core + K below.
class CoreSelfEnergy {
 public:
  int n_core = 0;
  int n_ports = 0;
  int n_interface = 0;
  double kbt = 0.0;
  double eps_sep = 0.0;  // minimal admissible pole separation
  MatrixXi q;

  // Transformed circuit blocks, kept for exact evaluation and for the
  // pole/residue machinery. Interface blocks are empty when n_interface = 0.
  MatPoly cc_r, ci_r, ic_r, ii_r;  // retarded
  MatPoly cc_f, ci_f, ic_f, ii_f;  // Keldysh factor

  // Rational decompositions (poles strictly in the lower half-plane for the
  // retarded part; the Keldysh factor carries both half-planes).
  RationalMatrixFunction retarded;
  RationalMatrixFunction advanced;
  RationalMatrixFunction keldysh_factor;

  int dim() const { return n_core + n_ports; }

  // Exact evaluation through block linear solves, independent of the
  // rational decomposition. Retarded/advanced parts are m x m.
  MatrixXc eval_retarded(Complex omega) const;
  MatrixXc eval_advanced(Complex omega) const;
  MatrixXc eval_keldysh_factor(Complex omega) const;
  MatrixXc eval_keldysh(Complex omega) const;  // coth(w/2kbt) * F(w)
};

// Schur-complement reduction of the transformed blocks. Builds the rational
// decompositions (dynamical poles, residues, polynomial parts).
// eps_sep_rel scales the pole-simplicity threshold by the largest pole
// magnitude.
CoreSelfEnergy reduce_to_core(const CircuitBlocks& blocks, const CoreSplit& split,
                              double eps_sep_rel = 1e-6);

// Convenience: assemble + split + reduce.
CoreSelfEnergy core_self_energy_of(const ScaledCircuit& circuit, double eps_sep_rel = 1e-6);

}  // namespace nlr

#endif  // NLR_CIRCUIT_HPP
