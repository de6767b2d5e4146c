// Copyright (c) 2026 NLRSim Developers.
// SPDX-License-Identifier: Apache-2.0
#include "nlr/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "nlr/polyeig.hpp"

namespace nlr {

namespace {

// omega * coth(omega / (2 kbt)), finite at omega = 0.
Complex omega_coth(Complex omega, double kbt) {
  Complex x = omega / (2.0 * kbt);
  if (std::abs(x) < 1e-4) {
    // coth x = 1/x + x/3 - x^3/45 + ...
    return 2.0 * kbt * (1.0 + x * x / 3.0 - x * x * x * x / 45.0);
  }
  return omega * (1.0 + std::exp(-2.0 * x)) / (1.0 - std::exp(-2.0 * x));
}

void stamp_difference(MatrixXc& m, int k, int kprime, Complex value) {
  // Adds value * (e_k - e_kprime)(e_k - e_kprime)^T with ground rows dropped.
  int a = k - 1, b = kprime - 1;
  if (a >= 0) m(a, a) += value;
  if (b >= 0) m(b, b) += value;
  if (a >= 0 && b >= 0) {
    m(a, b) -= value;
    m(b, a) -= value;
  }
}

MatPoly select_block(const MatPoly& p, const std::vector<int>& rows,
                     const std::vector<int>& cols) {
  MatPoly out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()),
              p.degree());
  for (int d = 0; d <= p.degree(); ++d)
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t j = 0; j < cols.size(); ++j) out[d](i, j) = p[d](rows[i], cols[j]);
  return out;
}

// Fraction-free integer elimination state for rank tests over small integer
// rows (junction incidence vectors are totally unimodular).
class IntegerRowBasis {
 public:
  explicit IntegerRowBasis(int n) : n_(n) {}

  // Returns true and stores the row if it is independent of the basis.
  bool try_add(std::vector<long long> row) {
    for (size_t r = 0; r < rows_.size(); ++r) {
      long long c = row[pivots_[r]];
      if (c == 0) continue;
      long long p = rows_[r][pivots_[r]];
      for (int j = 0; j < n_; ++j) row[j] = row[j] * p - rows_[r][j] * c;
      long long g = 0;
      for (int j = 0; j < n_; ++j) g = std::gcd(g, std::abs(row[j]));
      if (g > 1)
        for (int j = 0; j < n_; ++j) row[j] /= g;
    }
    int pivot = -1;
    for (int j = 0; j < n_; ++j)
      if (row[j] != 0) {
        pivot = j;
        break;
      }
    if (pivot < 0) return false;
    rows_.push_back(std::move(row));
    pivots_.push_back(pivot);
    return true;
  }

  int rank() const { return static_cast<int>(rows_.size()); }

 private:
  int n_;
  std::vector<std::vector<long long>> rows_;
  std::vector<int> pivots_;
};

std::vector<long long> difference_vector(int n, int k, int kprime) {
  std::vector<long long> d(n, 0);
  if (k >= 1) d[k - 1] += 1;
  if (kprime >= 1) d[kprime - 1] -= 1;
  return d;
}

// Coordinate orientation for basis rows: measure from the non-ground node
// when the pair starts at ground, so a grounded junction contributes +phi_k.
std::vector<long long> oriented_difference(int n, int k, int kprime) {
  return k == 0 ? difference_vector(n, kprime, k) : difference_vector(n, k, kprime);
}

}  // namespace

MatrixXc CircuitBlocks::eval_keldysh(Complex omega) const {
  // F is linear in omega with F(0) = 0, so coth * F = (omega coth) * F[1].
  return omega_coth(omega, kbt) * keldysh_factor[1];
}

CircuitBlocks assemble_circuit_self_energy(const ScaledCircuit& sc) {
  const int n = sc.nodes;
  const int k = sc.num_ports();
  CircuitBlocks blocks;
  blocks.nodes = n;
  blocks.n_ports = k;
  blocks.kbt = sc.kbt;
  blocks.sigma_r = MatPoly(n + k, n + k, 2);
  blocks.keldysh_factor = MatPoly(n + k, n + k, 1);

  MatrixXc& s0 = blocks.sigma_r[0];
  MatrixXc& s1 = blocks.sigma_r[1];
  MatrixXc& s2 = blocks.sigma_r[2];
  MatrixXc w = MatrixXc::Zero(n + k, n + k);

  for (const auto& e : sc.capacitors) stamp_difference(s2, e.k, e.kprime, -e.value);
  for (const auto& e : sc.inductors) stamp_difference(s0, e.k, e.kprime, 1.0 / e.value);
  for (const auto& e : sc.resistors) {
    stamp_difference(s1, e.k, e.kprime, -I_UNIT / e.value);
    stamp_difference(w, e.k, e.kprime, 1.0 / e.value);
  }
  for (int a = 0; a < k; ++a) {
    const Port& p = sc.ports[a];
    const int node = p.node - 1;
    const int field = n + a;
    const double z = p.impedance;
    s1(node, node) += -I_UNIT / z;
    s0(node, field) += -2.0 / z;
    s1(field, node) += I_UNIT;
    s0(field, field) += 1.0;
    w(node, node) += 1.0 / z;
    w(node, field) += -0.5;
    w(field, node) += -0.5;
    w(field, field) += z / 4.0;
  }
  blocks.keldysh_factor[1] = -I_UNIT * w;
  return blocks;
}

CoreSplit choose_core_split(const ScaledCircuit& sc) {
  const int n = sc.nodes;
  if (sc.junctions.empty()) throw config_error("core split requires at least one junction");

  IntegerRowBasis basis(n);
  std::vector<std::vector<long long>> b_rows;
  for (const auto& j : sc.junctions) {
    auto d = oriented_difference(n, j.k, j.kprime);
    if (basis.try_add(d)) b_rows.push_back(d);
  }
  const int n_core = static_cast<int>(b_rows.size());

  // Complete with unit rows; prefer nodes not touched by the chosen
  // differences to keep the transformation sparse.
  std::vector<int> touched(n, 0);
  for (const auto& row : b_rows)
    for (int j = 0; j < n; ++j)
      if (row[j] != 0) touched[j] = 1;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return touched[a] < touched[b]; });
  for (int j : order) {
    if (static_cast<int>(b_rows.size()) == n) break;
    std::vector<long long> e(n, 0);
    e[j] = 1;
    if (basis.try_add(e)) b_rows.push_back(e);
  }
  if (static_cast<int>(b_rows.size()) != n)
    throw numerics_error("failed to complete the core/interface basis");

  MatrixXd b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b(i, j) = static_cast<double>(b_rows[i][j]);
  double det = b.determinant();
  if (std::abs(std::abs(det) - 1.0) > 1e-9)
    throw numerics_error("core/interface transformation is not unimodular");

  MatrixXd q_d = b.inverse();
  CoreSplit split;
  split.n_core = n_core;
  split.q = MatrixXi(n, n);
  split.q_inverse = MatrixXi(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      split.q(i, j) = static_cast<int>(std::lround(q_d(i, j)));
      split.q_inverse(i, j) = static_cast<int>(std::llround(b(i, j)));
    }
  if ((split.q.cast<long long>() * split.q_inverse.cast<long long>() -
       Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>::Identity(n, n))
          .cwiseAbs()
          .maxCoeff() != 0)
    throw numerics_error("integer inversion of the core transformation failed");

  // Every junction difference must decompose over the core coordinates.
  split.junction_weights = MatrixXi::Zero(static_cast<int>(sc.junctions.size()), n_core);
  for (size_t jj = 0; jj < sc.junctions.size(); ++jj) {
    auto d = difference_vector(n, sc.junctions[jj].k, sc.junctions[jj].kprime);
    Eigen::VectorXi dv(n);
    for (int i = 0; i < n; ++i) dv(i) = static_cast<int>(d[i]);
    Eigen::VectorXi weights = split.q.transpose() * dv;
    for (int i = n_core; i < n; ++i)
      if (weights(i) != 0)
        throw numerics_error("junction flux difference escapes the core span");
    split.junction_weights.row(static_cast<int>(jj)) = weights.head(n_core).transpose();
  }
  return split;
}

MatrixXc CoreSelfEnergy::eval_retarded(Complex omega) const {
  MatrixXc cc = cc_r.eval(omega);
  if (n_interface == 0) return cc;
  MatrixXc ii = ii_r.eval(omega);
  MatrixXc ic = ic_r.eval(omega);
  return cc - ci_r.eval(omega) * ii.partialPivLu().solve(ic);
}

MatrixXc CoreSelfEnergy::eval_advanced(Complex omega) const {
  return eval_retarded(std::conj(omega)).adjoint();
}

MatrixXc CoreSelfEnergy::eval_keldysh_factor(Complex omega) const {
  MatrixXc f = cc_f.eval(omega);
  if (n_interface == 0) return f;
  MatrixXc ii_r_w = ii_r.eval(omega);
  MatrixXc ii_a_w = ii_r.eval(std::conj(omega)).adjoint();
  MatrixXc ic_a_w = ci_r.eval(std::conj(omega)).adjoint();
  auto lu_r = ii_r_w.partialPivLu();
  auto lu_a = ii_a_w.partialPivLu();
  MatrixXc x = lu_a.solve(ic_a_w);
  f -= ci_r.eval(omega) * lu_r.solve(ic_f.eval(omega));
  f += ci_r.eval(omega) * lu_r.solve(ii_f.eval(omega) * x);
  f -= ci_f.eval(omega) * x;
  return f;
}

MatrixXc CoreSelfEnergy::eval_keldysh(Complex omega) const {
  Complex x = omega / (2.0 * kbt);
  Complex coth;
  if (std::abs(x) < 1e-4) {
    coth = 1.0 / x + x / 3.0 - x * x * x / 45.0;
  } else {
    coth = (1.0 + std::exp(-2.0 * x)) / (1.0 - std::exp(-2.0 * x));
  }
  return coth * eval_keldysh_factor(omega);
}

namespace {

// Least-squares fit of a degree <= max_degree matrix polynomial to samples,
// with residual verification.
MatPoly fit_polynomial_part(const std::function<MatrixXc(Complex)>& f, Eigen::Index rows,
                            Eigen::Index cols, int max_degree, double radius) {
  const int n_fit = 2 * (max_degree + 1) + 3;
  std::vector<Complex> pts;
  for (int i = 0; i < n_fit; ++i) {
    double th = 2.0 * PI * (i + 0.37) / n_fit;
    pts.push_back(radius * Complex(std::cos(th), std::sin(th)));
  }
  MatrixXc vand(n_fit, max_degree + 1);
  for (int i = 0; i < n_fit; ++i) {
    Complex w = 1.0;
    for (int d = 0; d <= max_degree; ++d) {
      vand(i, d) = w;
      w *= pts[i];
    }
  }
  std::vector<MatrixXc> samples;
  samples.reserve(n_fit);
  for (int i = 0; i < n_fit; ++i) samples.push_back(f(pts[i]));

  auto qr = vand.colPivHouseholderQr();
  MatPoly poly(rows, cols, max_degree);
  VectorXc rhs(n_fit);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) {
      for (int i = 0; i < n_fit; ++i) rhs(i) = samples[i](r, c);
      VectorXc coeff = qr.solve(rhs);
      for (int d = 0; d <= max_degree; ++d) poly[d](r, c) = coeff(d);
    }

  // Residual check at the sample points.
  double scale = 0.0, resid = 0.0;
  for (int i = 0; i < n_fit; ++i) {
    scale = std::max(scale, samples[i].norm());
    resid = std::max(resid, (poly.eval(pts[i]) - samples[i]).norm());
  }
  if (resid > 1e-8 * std::max(scale, 1e-300))
    throw numerics_error("polynomial part extraction failed: non-polynomial remainder " +
                         std::to_string(resid / std::max(scale, 1e-300)));
  return poly;
}

struct PoleData {
  Complex omega;
  VectorXc right_null;   // r: ii_r(omega) r = 0
  VectorXc left_null;    // l with l^T ii_r(omega) = 0 (stored as the vector l)
  Complex d_derivative;  // l^T ii_r'(omega) r
};

}  // namespace

CoreSelfEnergy reduce_to_core(const CircuitBlocks& blocks, const CoreSplit& split,
                              double eps_sep_rel) {
  const int n = blocks.nodes;
  const int k = blocks.n_ports;
  const int n_core = split.n_core;
  const int n_i = n - n_core;
  const int m = n_core + k;

  CoreSelfEnergy core;
  core.n_core = n_core;
  core.n_ports = k;
  core.n_interface = n_i;
  core.kbt = blocks.kbt;
  core.q = split.q;

  MatrixXd qx = MatrixXd::Identity(n + k, n + k);
  qx.topLeftCorner(n, n) = split.q.cast<double>();
  MatPoly sigma_t = blocks.sigma_r.congruence(qx);
  MatPoly f_t = blocks.keldysh_factor.congruence(qx);

  std::vector<int> c_idx, i_idx;
  for (int j = 0; j < n_core; ++j) c_idx.push_back(j);
  for (int j = 0; j < k; ++j) c_idx.push_back(n + j);
  for (int j = n_core; j < n; ++j) i_idx.push_back(j);

  core.cc_r = select_block(sigma_t, c_idx, c_idx);
  core.cc_f = select_block(f_t, c_idx, c_idx);
  if (n_i > 0) {
    core.ci_r = select_block(sigma_t, c_idx, i_idx);
    core.ic_r = select_block(sigma_t, i_idx, c_idx);
    core.ii_r = select_block(sigma_t, i_idx, i_idx);
    core.ci_f = select_block(f_t, c_idx, i_idx);
    core.ic_f = select_block(f_t, i_idx, c_idx);
    core.ii_f = select_block(f_t, i_idx, i_idx);
  }

  std::vector<PoleData> kept;
  double max_pole_mag = 0.0;
  if (n_i > 0) {
    // Degenerate-interface screen: det ii_r(omega) must not vanish identically.
    double block_scale = 0.0;
    for (int d = 0; d <= 2; ++d) block_scale = std::max(block_scale, core.ii_r[d].norm());
    {
      bool all_singular = true;
      for (double probe : {0.731, 1.37, 2.93}) {
        Complex w(probe, 0.21 * probe);
        Eigen::JacobiSVD<MatrixXc> svd(core.ii_r.eval(w));
        if (svd.singularValues()(n_i - 1) > 1e-12 * block_scale) all_singular = false;
      }
      if (all_singular)
        throw physics_error("interface self-energy is singular for all frequencies");
    }

    std::vector<Complex> roots = polyeig_quadratic(core.ii_r);
    // Residue screen: drop removable roots (vanishing Schur-complement residue).
    double num_scale = 0.0;
    std::vector<PoleData> candidates;
    for (Complex w : roots) {
      Eigen::JacobiSVD<MatrixXc> svd(core.ii_r.eval(w),
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
      PoleData pd;
      pd.omega = w;
      pd.right_null = svd.matrixV().col(n_i - 1);
      pd.left_null = svd.matrixU().col(n_i - 1).conjugate();
      pd.d_derivative =
          (pd.left_null.transpose() * core.ii_r.derivative(w) * pd.right_null)(0, 0);
      candidates.push_back(pd);
      double num = (core.ci_r.eval(w) * pd.right_null).norm() *
                   (pd.left_null.transpose() * core.ic_r.eval(w)).norm();
      num_scale = std::max(num_scale, num);
    }
    for (const PoleData& pd : candidates) {
      double num = (core.ci_r.eval(pd.omega) * pd.right_null).norm() *
                   (pd.left_null.transpose() * core.ic_r.eval(pd.omega)).norm();
      if (num <= 1e-10 * num_scale) continue;  // removable singularity of the Schur complement
      kept.push_back(pd);
    }
    for (const PoleData& pd : kept) max_pole_mag = std::max(max_pole_mag, std::abs(pd.omega));
    core.eps_sep = eps_sep_rel * std::max(max_pole_mag, 1e-12);

    for (const PoleData& pd : kept)
      if (!(pd.omega.imag() < 0.0))
        throw physics_error("undamped or active interface: retarded pole with Im >= 0 (omega = " +
                            std::to_string(pd.omega.real()) + " + " +
                            std::to_string(pd.omega.imag()) + "i)");
    for (size_t a = 0; a < kept.size(); ++a)
      for (size_t b = a + 1; b < kept.size(); ++b)
        if (std::abs(kept[a].omega - kept[b].omega) < core.eps_sep)
          throw physics_error("near-degenerate dynamical poles violate the simple-pole assumption");
    for (const PoleData& pd : kept)
      if (std::abs(pd.d_derivative) < 1e-12 * block_scale)
        throw physics_error("defective dynamical pole (vanishing eigenvalue derivative)");

    std::sort(kept.begin(), kept.end(), [](const PoleData& a, const PoleData& b) {
      double ra = std::abs(a.omega.real()), rb = std::abs(b.omega.real());
      if (ra != rb) return ra < rb;
      if (a.omega.real() != b.omega.real()) return a.omega.real() > b.omega.real();
      return a.omega.imag() > b.omega.imag();
    });
  } else {
    core.eps_sep = eps_sep_rel;
  }

  // Retarded rational decomposition.
  core.retarded.dim_rows = m;
  core.retarded.dim_cols = m;
  for (const PoleData& pd : kept) {
    MatrixXc residue = -(core.ci_r.eval(pd.omega) * pd.right_null) *
                       (pd.left_null.transpose() * core.ic_r.eval(pd.omega)) / pd.d_derivative;
    core.retarded.poles.push_back({pd.omega, residue});
  }
  {
    double radius = 1.7 * std::max(1.0, max_pole_mag);
    auto remainder = [&](Complex w) {
      MatrixXc v = core.eval_retarded(w);
      for (const auto& p : core.retarded.poles) v -= p.residue / (w - p.omega);
      return v;
    };
    MatPoly p = fit_polynomial_part(remainder, m, m, 2, radius);
    core.retarded.p0 = p[0];
    core.retarded.p1 = p[1];
    core.retarded.p2 = p[2];
  }

  // Advanced = adjoint-reflection of the retarded part.
  core.advanced.dim_rows = m;
  core.advanced.dim_cols = m;
  core.advanced.p0 = core.retarded.p0.adjoint();
  core.advanced.p1 = core.retarded.p1.adjoint();
  core.advanced.p2 = core.retarded.p2.adjoint();
  for (const auto& p : core.retarded.poles)
    core.advanced.poles.push_back({std::conj(p.omega), p.residue.adjoint()});

  // Keldysh factor: poles at the dynamical poles and their conjugates.
  core.keldysh_factor.dim_rows = m;
  core.keldysh_factor.dim_cols = m;
  for (const PoleData& pd : kept) {
    Complex w = pd.omega;
    MatrixXc ii_a_w = core.ii_r.eval(std::conj(w)).adjoint();
    MatrixXc ic_a_w = core.ci_r.eval(std::conj(w)).adjoint();
    MatrixXc bracket =
        core.ic_f.eval(w) - core.ii_f.eval(w) * ii_a_w.partialPivLu().solve(ic_a_w);
    MatrixXc g = -(core.ci_r.eval(w) * pd.right_null) *
                 (pd.left_null.transpose() * bracket) / pd.d_derivative;
    core.keldysh_factor.poles.push_back({w, g});
  }
  for (const PoleData& pd : kept) {
    Complex w = std::conj(pd.omega);
    // Null data of ii_a(w) follows from the retarded-side SVD by conjugation.
    VectorXc r_a = pd.left_null.conjugate();
    VectorXc l_a = pd.right_null.conjugate();
    Complex d_a = std::conj(pd.d_derivative);
    MatrixXc ii_r_w = core.ii_r.eval(w);
    MatrixXc bracket = core.ci_r.eval(w) * ii_r_w.partialPivLu().solve(core.ii_f.eval(w)) -
                       core.ci_f.eval(w);
    MatrixXc ic_a_w = core.ci_r.eval(std::conj(w)).adjoint();
    MatrixXc g = (bracket * r_a) * (l_a.transpose() * ic_a_w) / d_a;
    core.keldysh_factor.poles.push_back({w, g});
  }
  {
    double radius = 1.9 * std::max(1.0, max_pole_mag);
    auto remainder = [&](Complex w) {
      MatrixXc v = core.eval_keldysh_factor(w);
      for (const auto& p : core.keldysh_factor.poles) v -= p.residue / (w - p.omega);
      return v;
    };
    MatPoly p = fit_polynomial_part(remainder, m, m, 1, radius);
    core.keldysh_factor.p0 = p[0];
    core.keldysh_factor.p1 = p[1];
    core.keldysh_factor.p2 = MatrixXc::Zero(m, m);
  }

  return core;
}

CoreSelfEnergy core_self_energy_of(const ScaledCircuit& circuit, double eps_sep_rel) {
  CircuitBlocks blocks = assemble_circuit_self_energy(circuit);
  CoreSplit split = choose_core_split(circuit);
  return reduce_to_core(blocks, split, eps_sep_rel);
}

}  // namespace nlr
