// Copyright (c) 2026 NLRSim Developers.
// SPDX-License-Identifier: Apache-2.0
#ifndef NLR_NETLIST_HPP
#define NLR_NETLIST_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "nlr/types.hpp"

namespace nlr {

enum class PortRole { Drive, Measure, Both };

struct TwoNodeElement {
  int k = 0;
  int kprime = 0;
  double value = 0.0;  // SI
};

struct Junction {
  int k = 0;
  int kprime = 0;
  double energy = 0.0;     // E_J in joules
  double flux_bias = 0.0;  // webers
};

struct Port {
  int node = 0;
  double impedance = 0.0;  // ohms
  PortRole role = PortRole::Both;
};

// Lumped-element circuit with transmission-line ports, all values in SI.
// Node 0 is ground and implicit; node indices run over [0, nodes].
struct CircuitNetlist {
  int nodes = 0;
  std::vector<TwoNodeElement> capacitors;
  std::vector<TwoNodeElement> inductors;
  std::vector<Junction> junctions;
  std::vector<TwoNodeElement> resistors;
  std::vector<Port> ports;
  double temperature = 0.0;  // kelvin

  std::vector<std::string> diagnostics;  // parse/validate warnings

  int num_ports() const { return static_cast<int>(ports.size()); }
};

// Parses the versioned JSON netlist document (schema key `nlr_netlist: 1`).
// Numeric values are accepted either as plain SI numbers or as
// engineering-suffixed strings such as "80fF" or "12.5GHz".
CircuitNetlist parse_netlist(const std::string& text);

// Validates topology and element values; throws Error on violation.
void validate_netlist(const CircuitNetlist& netlist);

std::string netlist_to_json(const CircuitNetlist& netlist);

// FNV-1a content hash of the canonicalized netlist, for output provenance.
std::string netlist_hash(const CircuitNetlist& netlist);

// Parses "80fF", "0.7nH", "50", "2.5GHz" into an SI value. `dimension` is one
// of F, H, Ohm, J, Hz, K, Wb and selects which suffixes are meaningful. A
// frequency given for an energy is converted through h*f.
double parse_engineering_value(const std::string& text, const std::string& dimension);

PortRole parse_port_role(const std::string& role);
std::string port_role_name(PortRole role);

}  // namespace nlr

#endif  // NLR_NETLIST_HPP
