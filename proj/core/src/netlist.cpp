// Copyright (c) 2026 NLRSim Developers.
// SPDX-License-Identifier: Apache-2.0
#include "nlr/netlist.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "nlr/constants.hpp"

namespace nlr {

using nlohmann::json;

namespace {

const std::map<std::string, double>& si_prefixes() {
  static const std::map<std::string, double> table = {
      {"y", 1e-24}, {"z", 1e-21}, {"a", 1e-18}, {"f", 1e-15}, {"p", 1e-12},
      {"n", 1e-9},  {"u", 1e-6},  {"m", 1e-3},  {"", 1.0},    {"k", 1e3},
      {"M", 1e6},   {"G", 1e9},   {"T", 1e12},
  };
  return table;
}

struct UnitSpec {
  double factor = 1.0;   // multiplier on top of the prefix
  bool is_frequency = false;  // value is interpreted as E/h when dimension == "J"
};

// Returns the base-unit token ("F", "H", ...) consumed from the end of `s`.
bool split_unit(const std::string& s, const std::string& dimension, std::string* prefix,
                UnitSpec* spec) {
  struct Alias {
    const char* name;
    const char* dimension;
    bool frequency;
  };
  static const Alias aliases[] = {
      {"F", "F", false},    {"H", "H", false},   {"Ohm", "Ohm", false},
      {"ohm", "Ohm", false}, {"R", "Ohm", false}, {"J", "J", false},
      {"Hz", "Hz", true},   {"K", "K", false},   {"Wb", "Wb", false},
      {"V", "V", false},    {"s", "s", false},
  };
  for (const Alias& a : aliases) {
    std::string name = a.name;
    if (s.size() >= name.size() && s.compare(s.size() - name.size(), name.size(), name) == 0) {
      std::string dim = a.dimension;
      bool ok = dim == dimension || (a.frequency && dimension == "J") ||
                (a.frequency && dimension == "Hz");
      if (!ok) continue;
      *prefix = s.substr(0, s.size() - name.size());
      spec->is_frequency = a.frequency;
      spec->factor = 1.0;
      return true;
    }
  }
  return false;
}

double element_value(const json& entry, const std::string& dimension, const std::string& where) {
  if (!entry.contains("value")) throw config_error(where + ": missing 'value'");
  const json& v = entry.at("value");
  std::string text;
  if (v.is_number()) {
    double num = v.get<double>();
    if (entry.contains("unit")) {
      text = std::to_string(num) + entry.at("unit").get<std::string>();
    } else {
      return num;  // plain SI
    }
  } else if (v.is_string()) {
    text = v.get<std::string>();
  } else {
    throw config_error(where + ": 'value' must be a number or string");
  }
  try {
    return parse_engineering_value(text, dimension);
  } catch (const Error& e) {
    throw config_error(where + ": " + e.what());
  }
}

TwoNodeElement parse_two_node(const json& entry, const std::string& dimension,
                              const std::string& where) {
  TwoNodeElement e;
  if (!entry.contains("k") || !entry.contains("kprime"))
    throw config_error(where + ": missing node indices 'k'/'kprime'");
  e.k = entry.at("k").get<int>();
  e.kprime = entry.at("kprime").get<int>();
  e.value = element_value(entry, dimension, where);
  return e;
}

std::string element_where(const char* kind, size_t i) {
  std::ostringstream os;
  os << kind << "[" << i << "]";
  return os.str();
}

}  // namespace

double parse_engineering_value(const std::string& text, const std::string& dimension) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw config_error("empty numeric value");

  // Longest numeric prefix.
  size_t pos = 0;
  {
    std::istringstream is(s);
    double dummy;
    is >> dummy;
    if (is.fail()) throw config_error("cannot parse number from '" + text + "'");
    pos = is.eof() ? s.size() : static_cast<size_t>(is.tellg());
  }
  double number = std::stod(s.substr(0, pos));
  std::string suffix = s.substr(pos);
  if (suffix.empty()) return number;

  std::string prefix;
  UnitSpec spec;
  if (!split_unit(suffix, dimension, &prefix, &spec))
    throw config_error("unit '" + suffix + "' not valid for dimension " + dimension);
  auto it = si_prefixes().find(prefix);
  if (it == si_prefixes().end())
    throw config_error("unknown SI prefix '" + prefix + "' in '" + text + "'");
  double value = number * it->second * spec.factor;
  if (spec.is_frequency && dimension == "J") value *= PLANCK_H;  // E = h f
  return value;
}

PortRole parse_port_role(const std::string& role) {
  if (role == "drive") return PortRole::Drive;
  if (role == "measure") return PortRole::Measure;
  if (role == "both") return PortRole::Both;
  throw config_error("port role must be drive|measure|both, got '" + role + "'");
}

std::string port_role_name(PortRole role) {
  switch (role) {
    case PortRole::Drive: return "drive";
    case PortRole::Measure: return "measure";
    case PortRole::Both: return "both";
  }
  return "both";
}

CircuitNetlist parse_netlist(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw config_error(std::string("netlist JSON syntax error: ") + e.what());
  }
  if (!doc.contains("nlr_netlist") || doc.at("nlr_netlist").get<int>() != 1)
    throw config_error("netlist document must carry schema key 'nlr_netlist': 1");

  CircuitNetlist nl;
  nl.nodes = doc.value("nodes", 0);

  auto read_array = [&](const char* key, const std::string& dim,
                        std::vector<TwoNodeElement>* out) {
    if (!doc.contains(key)) return;
    size_t i = 0;
    for (const json& entry : doc.at(key)) {
      out->push_back(parse_two_node(entry, dim, element_where(key, i)));
      ++i;
    }
  };
  read_array("capacitors", "F", &nl.capacitors);
  read_array("inductors", "H", &nl.inductors);
  read_array("resistors", "Ohm", &nl.resistors);

  if (doc.contains("junctions")) {
    size_t i = 0;
    for (const json& entry : doc.at("junctions")) {
      std::string where = element_where("junctions", i);
      Junction j;
      j.k = entry.at("k").get<int>();
      j.kprime = entry.at("kprime").get<int>();
      j.energy = element_value(entry, "J", where);
      if (entry.contains("flux_bias")) {
        const json& b = entry.at("flux_bias");
        j.flux_bias = b.is_string() ? parse_engineering_value(b.get<std::string>(), "Wb")
                                    : b.get<double>();
      }
      nl.junctions.push_back(j);
      ++i;
    }
  }
  if (doc.contains("ports")) {
    size_t i = 0;
    for (const json& entry : doc.at("ports")) {
      std::string where = element_where("ports", i);
      Port p;
      if (!entry.contains("node")) throw config_error(where + ": missing 'node'");
      p.node = entry.at("node").get<int>();
      const json& z = entry.at("impedance_ohm");
      p.impedance = z.is_string() ? parse_engineering_value(z.get<std::string>(), "Ohm")
                                  : z.get<double>();
      p.role = parse_port_role(entry.value("role", "both"));
      nl.ports.push_back(p);
      ++i;
    }
  }
  if (!doc.contains("temperature_K")) throw config_error("netlist: missing 'temperature_K'");
  {
    const json& t = doc.at("temperature_K");
    nl.temperature =
        t.is_string() ? parse_engineering_value(t.get<std::string>(), "K") : t.get<double>();
  }

  validate_netlist(nl);
  return nl;
}

void validate_netlist(const CircuitNetlist& nl) {
  if (nl.nodes < 1) throw config_error("netlist must declare at least one non-ground node");
  auto check_node = [&](int k, const std::string& where) {
    if (k < 0 || k > nl.nodes)
      throw config_error(where + ": node index " + std::to_string(k) + " outside [0, " +
                         std::to_string(nl.nodes) + "]");
  };
  auto check_pairs = [&](auto const& list, const char* kind, bool positive) {
    std::set<std::pair<int, int>> seen;
    size_t i = 0;
    for (const auto& e : list) {
      std::string where = element_where(kind, i);
      check_node(e.k, where);
      check_node(e.kprime, where);
      if (e.k == e.kprime) throw config_error(where + ": element connects a node to itself");
      double value;
      if constexpr (std::is_same_v<std::decay_t<decltype(e)>, Junction>)
        value = e.energy;
      else
        value = e.value;
      if (positive && !(value > 0.0))
        throw config_error(where + ": nonpositive element value");
      auto key = std::minmax(e.k, e.kprime);
      if (!seen.insert({key.first, key.second}).second)
        throw config_error(where + ": duplicate element between nodes " + std::to_string(e.k) +
                           " and " + std::to_string(e.kprime));
      ++i;
    }
  };
  check_pairs(nl.capacitors, "capacitors", true);
  check_pairs(nl.inductors, "inductors", true);
  check_pairs(nl.resistors, "resistors", true);
  check_pairs(nl.junctions, "junctions", true);
  size_t i = 0;
  for (const Port& p : nl.ports) {
    std::string where = element_where("ports", i);
    check_node(p.node, where);
    if (p.node == 0) throw config_error(where + ": port cannot terminate on ground");
    if (!(p.impedance > 0.0)) throw config_error(where + ": nonpositive element value");
    ++i;
  }
  if (nl.ports.empty() && nl.resistors.empty())
    throw config_error("circuit is dissipation-free: needs at least one port or resistor");
  if (nl.junctions.empty())
    throw config_error("circuit has no Josephson junction: the nonlinear core is empty");
  if (!(nl.temperature > 0.0)) throw config_error("temperature_K must be positive");
}

std::string netlist_to_json(const CircuitNetlist& nl) {
  json doc;
  doc["nlr_netlist"] = 1;
  doc["nodes"] = nl.nodes;
  auto two_node = [](const TwoNodeElement& e) {
    return json{{"k", e.k}, {"kprime", e.kprime}, {"value", e.value}};
  };
  doc["capacitors"] = json::array();
  for (const auto& e : nl.capacitors) doc["capacitors"].push_back(two_node(e));
  doc["inductors"] = json::array();
  for (const auto& e : nl.inductors) doc["inductors"].push_back(two_node(e));
  doc["resistors"] = json::array();
  for (const auto& e : nl.resistors) doc["resistors"].push_back(two_node(e));
  doc["junctions"] = json::array();
  for (const auto& j : nl.junctions)
    doc["junctions"].push_back(
        json{{"k", j.k}, {"kprime", j.kprime}, {"value", j.energy}, {"flux_bias", j.flux_bias}});
  doc["ports"] = json::array();
  for (const auto& p : nl.ports)
    doc["ports"].push_back(json{
        {"node", p.node}, {"impedance_ohm", p.impedance}, {"role", port_role_name(p.role)}});
  doc["temperature_K"] = nl.temperature;
  return doc.dump(2);
}

std::string netlist_hash(const CircuitNetlist& nl) {
  std::string canon = netlist_to_json(nl);
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace nlr
