// Copyright (c) 2026 NLRSim Developers.
// SPDX-License-Identifier: Apache-2.0
#ifndef NLR_UNITS_HPP
#define NLR_UNITS_HPP

#include <vector>

#include "nlr/constants.hpp"
#include "nlr/netlist.hpp"

namespace nlr {

// Internal unit system with hbar = 1, base time 1 ns and base impedance
// 1 kOhm. The derived scales keep circuit matrix entries within a few
// orders of magnitude of unity for typical superconducting parameters:
// capacitances land at 1e-3..1, E_J/hbar and k_B T/hbar at 1..1e2 rad/ns.
struct UnitSystem {
  double time = 1e-9;                    // s
  double impedance = 1e3;                // ohm
  double capacitance() const { return time / impedance; }          // F
  double inductance() const { return time * impedance; }           // H
  double energy() const { return HBAR / time; }                    // J
  double angular_frequency() const { return 1.0 / time; }          // rad/s
  double flux() const { return std::sqrt(HBAR * impedance); }      // Wb
  double charge() const { return std::sqrt(HBAR / impedance); }    // C
  double voltage() const { return flux() / time; }                 // V

  double flux_quantum() const { return PHI0 / flux(); }            // dimensionless
  double resistance_quantum() const { return R_QUANTUM / impedance; }
};

// Netlist with all values divided by the unit scales. `kbt` is k_B T / hbar
// in rad per base time; junction energies are E_J / hbar likewise.
struct ScaledCircuit {
  UnitSystem units;
  int nodes = 0;
  std::vector<TwoNodeElement> capacitors;  // value in units.capacitance()
  std::vector<TwoNodeElement> inductors;   // value in units.inductance()
  std::vector<Junction> junctions;         // energy in units.energy(), bias in units.flux()
  std::vector<TwoNodeElement> resistors;   // value in units.impedance()
  std::vector<Port> ports;                 // impedance in units.impedance()
  double kbt = 0.0;                        // k_B T / hbar, rad per base time
  double phi0 = 0.0;                       // flux quantum in units.flux()

  int num_ports() const { return static_cast<int>(ports.size()); }
};

ScaledCircuit scale_circuit(const CircuitNetlist& netlist, const UnitSystem& units = {});

// Inverse map, used by the round-trip consistency test.
CircuitNetlist unscale_circuit(const ScaledCircuit& scaled);

}  // namespace nlr

#endif  // NLR_UNITS_HPP
