// Copyright (c) 2026 NLRSim Developers.
// SPDX-License-Identifier: Apache-2.0
#include "nlr/ratfit.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <json.hpp>

namespace nlr {

using nlohmann::json;

int AuxModeSet::count_dynamical() const {
  int n = 0;
  for (const auto& m : modes) n += m.kind == AuxMode::Kind::Dynamical;
  return n;
}

int AuxModeSet::count_fluctuation() const {
  int n = 0;
  for (const auto& m : modes) n += m.kind == AuxMode::Kind::Fluctuation;
  return n;
}

MatrixXc AuxModeSet::eval_causal_half(Complex omega) const {
  const int m = dim();
  MatrixXc out = pt0 + omega * pt1 + omega * omega * pt2;
  for (const AuxMode& mode : modes) {
    if (mode.kind == AuxMode::Kind::Dynamical) {
      out += mode.u * mode.v.transpose() / (omega - mode.frequency);
    } else {
      out.rightCols(m) += mode.u * mode.v.transpose() / (omega - mode.frequency);
    }
  }
  return out;
}

std::vector<Complex> find_dynamical_poles(const CoreSelfEnergy& core) {
  std::vector<Complex> poles;
  for (const auto& p : core.retarded.poles) poles.push_back(p.omega);
  return poles;
}

std::vector<DynamicalResidue> compute_residues(const CoreSelfEnergy& core) {
  std::vector<DynamicalResidue> out;
  for (const auto& p : core.retarded.poles) {
    DynamicalResidue dr;
    dr.omega = p.omega;
    dr.retarded = p.residue;
    bool found = false;
    for (const auto& f : core.keldysh_factor.poles) {
      if (std::abs(f.omega - p.omega) < 0.5 * core.eps_sep) {
        dr.keldysh_factor = f.residue;
        found = true;
        break;
      }
    }
    if (!found) throw numerics_error("missing Keldysh-factor residue at a dynamical pole");
    // Unit-rank sanity on the retarded residue.
    Eigen::JacobiSVD<MatrixXc> svd(dr.retarded);
    const auto& s = svd.singularValues();
    if (s.size() > 1 && s(1) > 1e-8 * s(0))
      throw physics_error("dynamical-pole residue of rank > 1 violates the unraveling");
    out.push_back(std::move(dr));
  }
  return out;
}

std::vector<MatrixXc> assemble_residue_blocks(const CoreSelfEnergy& core, const CothFit& fit) {
  std::vector<MatrixXc> out;
  for (const DynamicalResidue& dr : compute_residues(core)) {
    MatrixXc block(core.dim(), 2 * core.dim());
    block.leftCols(core.dim()) = dr.retarded;
    block.rightCols(core.dim()) = fit.eval_omega(dr.omega) * dr.keldysh_factor;
    out.push_back(std::move(block));
  }
  return out;
}

std::vector<FluctuationResidue> fluctuation_residues(const CoreSelfEnergy& core,
                                                     const CothFit& fit) {
  std::vector<FluctuationResidue> out;
  std::vector<double> omegas = fit.omega_f();
  std::vector<double> weights = fit.r_f();
  for (size_t n = 0; n < omegas.size(); ++n) {
    Complex pole(0.0, -omegas[n]);
    for (const auto& p : core.retarded.poles)
      if (std::abs(p.omega - pole) < core.eps_sep)
        throw physics_error(
            "fluctuation pole collides with a dynamical pole; change the fit cutoff");
    FluctuationResidue fr;
    fr.omega_f = omegas[n];
    fr.residue = weights[n] * core.eval_keldysh_factor(pole);
    Eigen::JacobiSVD<MatrixXc> svd(fr.residue);
    const auto& s = svd.singularValues();
    fr.rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) > 1e-10 * s(0)) ++fr.rank;
    out.push_back(std::move(fr));
  }
  return out;
}

namespace {

// Deterministic balanced rank-one factor pair of sigma * x y^T.
void balanced_factor(const VectorXc& left, const VectorXc& right, double sigma, VectorXc* u,
                     VectorXc* v) {
  double root = std::sqrt(sigma);
  VectorXc uu = root * left;
  VectorXc vv = root * right;
  // Gauge: first component of u above threshold made real positive.
  Complex phase(1.0, 0.0);
  for (Eigen::Index i = 0; i < uu.size(); ++i) {
    if (std::abs(uu(i)) > 1e-14 * root) {
      phase = uu(i) / std::abs(uu(i));
      break;
    }
  }
  *u = uu / phase;
  *v = vv * phase;
}

}  // namespace

AuxModeSet build_aux_mode_set(const CoreSelfEnergy& core, const CothFit& fit,
                              const std::string& netlist_hash) {
  const int m = core.dim();
  AuxModeSet set;
  set.n_core = core.n_core;
  set.n_ports = core.n_ports;
  set.kbt = core.kbt;
  set.cutoff = fit.cutoff;
  set.fit_tolerance = fit.tolerance;
  set.netlist_hash = netlist_hash;

  // Polynomial halves: full retarded part, half Keldysh constant.
  double sum_r = 0.0;
  for (double r : fit.r_f()) sum_r += r;
  MatrixXc p0k = (2.0 * core.kbt + 2.0 * sum_r) * core.keldysh_factor.p1;
  set.pt0 = MatrixXc::Zero(m, 2 * m);
  set.pt1 = MatrixXc::Zero(m, 2 * m);
  set.pt2 = MatrixXc::Zero(m, 2 * m);
  set.pt0.leftCols(m) = core.retarded.p0;
  set.pt1.leftCols(m) = core.retarded.p1;
  set.pt2.leftCols(m) = core.retarded.p2;
  set.pt0.rightCols(m) = 0.5 * p0k;

  for (const MatrixXc& block : assemble_residue_blocks(core, fit)) {
    Eigen::JacobiSVD<MatrixXc> svd(block, Eigen::ComputeThinU | Eigen::ComputeThinV);
    AuxMode mode;
    mode.kind = AuxMode::Kind::Dynamical;
    balanced_factor(svd.matrixU().col(0), svd.matrixV().col(0).conjugate(),
                    svd.singularValues()(0), &mode.u, &mode.v);
    mode.frequency = 0.0;  // set below
    set.modes.push_back(std::move(mode));
  }
  {
    auto residues = compute_residues(core);
    for (size_t k = 0; k < residues.size(); ++k) set.modes[k].frequency = residues[k].omega;
  }
  for (const FluctuationResidue& fr : fluctuation_residues(core, fit)) {
    Eigen::JacobiSVD<MatrixXc> svd(fr.residue, Eigen::ComputeThinU | Eigen::ComputeThinV);
    for (int r = 0; r < fr.rank; ++r) {
      AuxMode mode;
      mode.kind = AuxMode::Kind::Fluctuation;
      mode.frequency = Complex(0.0, -fr.omega_f);
      balanced_factor(svd.matrixU().col(r), svd.matrixV().col(r).conjugate(),
                      svd.singularValues()(r), &mode.u, &mode.v);
      set.modes.push_back(std::move(mode));
    }
  }
  return set;
}

double default_cutoff(const CoreSelfEnergy& core) {
  double max_re = 0.0, max_abs = 0.0;
  for (const auto& p : core.retarded.poles) {
    max_re = std::max(max_re, std::abs(p.omega.real()));
    max_abs = std::max(max_abs, std::abs(p.omega));
  }
  double base = max_re > 0.0 ? max_re : max_abs;
  if (base == 0.0) base = 10.0 * core.kbt;
  return 20.0 * base;
}

namespace {

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }
Complex complex_from_json(const json& j) { return Complex(j.at(0), j.at(1)); }

json matrix_to_json(const MatrixXc& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

MatrixXc matrix_from_json(const json& j) {
  if (j.empty()) return MatrixXc(0, 0);
  MatrixXc m(j.size(), j.at(0).size());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(i, c) = complex_from_json(j.at(i).at(c));
  return m;
}

json vector_to_json(const VectorXc& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(complex_to_json(v(i)));
  return arr;
}

VectorXc vector_from_json(const json& j) {
  VectorXc v(j.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = complex_from_json(j.at(i));
  return v;
}

}  // namespace

std::string aux_mode_set_to_json(const AuxModeSet& set) {
  json doc;
  doc["nlr_modes"] = 1;
  doc["n_core"] = set.n_core;
  doc["n_ports"] = set.n_ports;
  doc["provenance"] = {{"netlist_hash", set.netlist_hash},
                       {"kbt", set.kbt},
                       {"cutoff", set.cutoff},
                       {"fit_tolerance", set.fit_tolerance}};
  doc["pt0"] = matrix_to_json(set.pt0);
  doc["pt1"] = matrix_to_json(set.pt1);
  doc["pt2"] = matrix_to_json(set.pt2);
  doc["modes"] = json::array();
  for (const AuxMode& m : set.modes) {
    doc["modes"].push_back(
        json{{"kind", m.kind == AuxMode::Kind::Dynamical ? "dynamical" : "fluctuation"},
             {"frequency", complex_to_json(m.frequency)},
             {"u", vector_to_json(m.u)},
             {"v", vector_to_json(m.v)}});
  }
  return doc.dump(2);
}

AuxModeSet aux_mode_set_from_json(const std::string& text) {
  json doc = json::parse(text);
  if (!doc.contains("nlr_modes") || doc.at("nlr_modes").get<int>() != 1)
    throw config_error("mode-set document must carry schema key 'nlr_modes': 1");
  AuxModeSet set;
  set.n_core = doc.at("n_core").get<int>();
  set.n_ports = doc.at("n_ports").get<int>();
  const json& prov = doc.at("provenance");
  set.netlist_hash = prov.value("netlist_hash", "");
  set.kbt = prov.value("kbt", 0.0);
  set.cutoff = prov.value("cutoff", 0.0);
  set.fit_tolerance = prov.value("fit_tolerance", 0.0);
  set.pt0 = matrix_from_json(doc.at("pt0"));
  set.pt1 = matrix_from_json(doc.at("pt1"));
  set.pt2 = matrix_from_json(doc.at("pt2"));
  for (const json& jm : doc.at("modes")) {
    AuxMode m;
    m.kind = jm.at("kind").get<std::string>() == "dynamical" ? AuxMode::Kind::Dynamical
                                                             : AuxMode::Kind::Fluctuation;
    m.frequency = complex_from_json(jm.at("frequency"));
    m.u = vector_from_json(jm.at("u"));
    m.v = vector_from_json(jm.at("v"));
    set.modes.push_back(std::move(m));
  }
  return set;
}

}  // namespace nlr
