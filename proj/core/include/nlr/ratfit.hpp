// Copyright (c) 2026 NLRSim Developers.
// SPDX-License-Identifier: Apache-2.0
#ifndef NLR_RATFIT_HPP
#define NLR_RATFIT_HPP

#include <string>
#include <vector>

#include "nlr/aaa.hpp"
#include "nlr/circuit.hpp"

namespace nlr {

// Auxiliary bosonic mode with complex frequency and factored coupling
// vectors. Dynamical modes couple the quantum row block [psi_q; eta] through
// u and the full column block [psi_c; v; psi_q; eta] through v (length 2m);
// fluctuation modes couple [psi_q; eta] on both sides (v of length m).
struct AuxMode {
  enum class Kind { Dynamical, Fluctuation };
  Kind kind = Kind::Dynamical;
  Complex frequency{0.0, 0.0};
  VectorXc u;
  VectorXc v;
};

// Causal (retarded-only) half of the core self-energy in unraveled form:
// rectangular polynomial part plus one simple pole per auxiliary mode.
struct AuxModeSet {
  int n_core = 0;
  int n_ports = 0;
  double kbt = 0.0;
  double cutoff = 0.0;
  double fit_tolerance = 0.0;
  std::string netlist_hash;

  MatrixXc pt0, pt1, pt2;  // m x 2m, [P_k^R, P_k^K / 2]
  std::vector<AuxMode> modes;

  int dim() const { return n_core + n_ports; }
  int count_dynamical() const;
  int count_fluctuation() const;

  // m x 2m causal half P~(w) + sum_k u_k v_k^T / (w - w_k).
  MatrixXc eval_causal_half(Complex omega) const;
};

// Dynamical pole with its rank-one retarded residue and the residue of the
// Keldysh factor F at the same pole.
struct DynamicalResidue {
  Complex omega;
  MatrixXc retarded;        // m x m
  MatrixXc keldysh_factor;  // m x m, residue of F
};

// Finite roots of det Sigma~_ii^R, Im < 0, sorted by |Re|; removable roots
// carry no residue and are dropped upstream.
std::vector<Complex> find_dynamical_poles(const CoreSelfEnergy& core);

std::vector<DynamicalResidue> compute_residues(const CoreSelfEnergy& core);

// Rectangular residues [R^dR, R^dK] with R^dK = c_fit(omega_k) * Res F.
std::vector<MatrixXc> assemble_residue_blocks(const CoreSelfEnergy& core, const CothFit& fit);

// R~_n^f = r_n^f F(-i omega_n^f) for every fluctuation pole of the fit, with
// the collision guard against dynamical poles.
struct FluctuationResidue {
  double omega_f = 0.0;  // positive
  MatrixXc residue;      // m x m
  int rank = 0;
};
std::vector<FluctuationResidue> fluctuation_residues(const CoreSelfEnergy& core,
                                                     const CothFit& fit);

AuxModeSet build_aux_mode_set(const CoreSelfEnergy& core, const CothFit& fit,
                              const std::string& netlist_hash = "");

std::string aux_mode_set_to_json(const AuxModeSet& set);
AuxModeSet aux_mode_set_from_json(const std::string& text);

// Default rational-fit cutoff: 20x the largest |Re| among dynamical poles
// (or 20x the largest |pole| for purely imaginary spectra).
double default_cutoff(const CoreSelfEnergy& core);

}  // namespace nlr

#endif  // NLR_RATFIT_HPP
