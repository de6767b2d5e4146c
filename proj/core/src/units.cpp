// Copyright (c) 2026 NLRSim Developers.
// SPDX-License-Identifier: Apache-2.0
#include "nlr/units.hpp"

namespace nlr {

ScaledCircuit scale_circuit(const CircuitNetlist& nl, const UnitSystem& units) {
  ScaledCircuit sc;
  sc.units = units;
  sc.nodes = nl.nodes;
  for (const auto& e : nl.capacitors)
    sc.capacitors.push_back({e.k, e.kprime, e.value / units.capacitance()});
  for (const auto& e : nl.inductors)
    sc.inductors.push_back({e.k, e.kprime, e.value / units.inductance()});
  for (const auto& e : nl.resistors)
    sc.resistors.push_back({e.k, e.kprime, e.value / units.impedance});
  for (const auto& j : nl.junctions) {
    Junction s = j;
    s.energy = j.energy / units.energy();
    s.flux_bias = j.flux_bias / units.flux();
    sc.junctions.push_back(s);
  }
  for (const auto& p : nl.ports) sc.ports.push_back({p.node, p.impedance / units.impedance, p.role});
  sc.kbt = K_BOLTZMANN * nl.temperature / units.energy();
  sc.phi0 = units.flux_quantum();
  return sc;
}

CircuitNetlist unscale_circuit(const ScaledCircuit& sc) {
  CircuitNetlist nl;
  const UnitSystem& units = sc.units;
  nl.nodes = sc.nodes;
  for (const auto& e : sc.capacitors)
    nl.capacitors.push_back({e.k, e.kprime, e.value * units.capacitance()});
  for (const auto& e : sc.inductors)
    nl.inductors.push_back({e.k, e.kprime, e.value * units.inductance()});
  for (const auto& e : sc.resistors)
    nl.resistors.push_back({e.k, e.kprime, e.value * units.impedance});
  for (const auto& j : sc.junctions) {
    Junction s = j;
    s.energy = j.energy * units.energy();
    s.flux_bias = j.flux_bias * units.flux();
    nl.junctions.push_back(s);
  }
  for (const auto& p : sc.ports) nl.ports.push_back({p.node, p.impedance * units.impedance, p.role});
  nl.temperature = sc.kbt * units.energy() / K_BOLTZMANN;
  return nl;
}

}  // namespace nlr
