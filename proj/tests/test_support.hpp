// Copyright (c) 2026 NLRSim Developers.
// SPDX-License-Identifier: Apache-2.0
#ifndef NLRSIM_TESTS_TEST_SUPPORT_HPP
#define NLRSIM_TESTS_TEST_SUPPORT_HPP

#include <random>
#include <sstream>
#include <string>

#include "nlr/netlist.hpp"
#include "nlr/units.hpp"

namespace nlrtest {

// Readout circuit: transmon (node 1) capacitively coupled to a lumped
// resonator (node 2) which couples through node 3 to a drive line and a
// measurement line, both of 50 Ohm.
inline std::string transmon_netlist_json(double temperature_kelvin) {
  std::ostringstream os;
  os << R"({
  "nlr_netlist": 1,
  "nodes": 3,
  "capacitors": [
    {"k": 0, "kprime": 1, "value": "80fF"},
    {"k": 1, "kprime": 2, "value": "40fF"},
    {"k": 0, "kprime": 2, "value": "570fF"},
    {"k": 2, "kprime": 3, "value": "15fF"}
  ],
  "inductors": [
    {"k": 0, "kprime": 2, "value": "0.7nH"}
  ],
  "junctions": [
    {"k": 0, "kprime": 1, "value": "12.5GHz"}
  ],
  "resistors": [],
  "ports": [
    {"node": 3, "impedance_ohm": 50, "role": "drive"},
    {"node": 3, "impedance_ohm": 50, "role": "measure"}
  ],
  "temperature_K": )"
     << temperature_kelvin << "\n}";
  return os.str();
}

// Single junction + shunt capacitor behind one transmission line.
inline std::string rsj_netlist_json(double impedance_ohm, double temperature_kelvin,
                                    double c_ff = 1.43, double ej_ghz = 2.5) {
  std::ostringstream os;
  os << R"({
  "nlr_netlist": 1,
  "nodes": 1,
  "capacitors": [{"k": 0, "kprime": 1, "value": ")"
     << c_ff << R"(fF"}],
  "junctions": [{"k": 0, "kprime": 1, "value": ")" << ej_ghz << R"(GHz"}],
  "ports": [{"node": 1, "impedance_ohm": )"
     << impedance_ohm << R"(, "role": "both"}],
  "temperature_K": )"
     << temperature_kelvin << "\n}";
  return os.str();
}

inline nlr::ScaledCircuit scaled_transmon(double temperature_kelvin) {
  return nlr::scale_circuit(nlr::parse_netlist(transmon_netlist_json(temperature_kelvin)));
}

inline nlr::ScaledCircuit scaled_rsj(double impedance_ohm, double temperature_kelvin) {
  return nlr::scale_circuit(
      nlr::parse_netlist(rsj_netlist_json(impedance_ohm, temperature_kelvin)));
}

// Random passive netlist: a capacitor ladder with random extra couplings,
// one junction, and at least one dissipative element.
inline nlr::CircuitNetlist random_netlist(std::mt19937_64& rng, int nodes = 5) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  auto logu = [&](double lo, double hi) {
    return lo * std::pow(hi / lo, unif(rng));
  };
  nlr::CircuitNetlist nl;
  nl.nodes = nodes;
  for (int k = 1; k <= nodes; ++k)
    nl.capacitors.push_back({k - 1, k, logu(5e-15, 500e-15)});
  for (int k = 1; k <= nodes; ++k)
    if (unif(rng) < 0.5) nl.inductors.push_back({0, k, logu(0.1e-9, 30e-9)});
  // A few random long-range capacitors.
  for (int k = 1; k + 1 < nodes; ++k)
    if (unif(rng) < 0.4) nl.capacitors.push_back({k, nodes, logu(1e-15, 50e-15)});
  nl.junctions.push_back({0, 1, 10e9 * 6.62607015e-34, 0.0});
  // Dissipation must reach the interface (nodes 2..N): a core-only shunt
  // leaves the interface block lossless with marginally stable real roots.
  int port_node = 2 + static_cast<int>(unif(rng) * (nodes - 1));
  port_node = std::min(port_node, nodes);
  nl.ports.push_back({port_node, logu(20.0, 500.0), nlr::PortRole::Both});
  if (unif(rng) < 0.5) {
    int rk = 2 + static_cast<int>(unif(rng) * (nodes - 1));
    nl.resistors.push_back({0, std::min(rk, nodes), logu(100.0, 1e5)});
  }
  nl.temperature = logu(0.01, 0.3);
  nlr::validate_netlist(nl);
  return nl;
}

}  // namespace nlrtest

#endif  // NLRSIM_TESTS_TEST_SUPPORT_HPP
