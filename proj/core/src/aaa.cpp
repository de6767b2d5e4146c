// Copyright (c) 2026 NLRSim Developers.
// SPDX-License-Identifier: Apache-2.0
#include "nlr/aaa.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "nlr/constants.hpp"
#include "nlr/polyeig.hpp"

namespace nlr {

double coth_exact(double z) {
  if (std::abs(z) < 1e-3) return 1.0 / z + coth_smooth_exact(z);
  double e = std::exp(-2.0 * std::abs(z));
  double c = (1.0 + e) / (1.0 - e);
  return z > 0 ? c : -c;
}

double coth_smooth_exact(double z) {
  double a = std::abs(z);
  if (a < 1e-3) {
    double z2 = z * z;
    return z * (1.0 / 3.0 - z2 / 45.0 + 2.0 * z2 * z2 / 945.0);
  }
  double e = std::exp(-2.0 * a);
  double c = (1.0 + e) / (1.0 - e) - 1.0 / a;
  return z > 0 ? c : -c;
}

std::vector<double> CothFit::omega_f() const {
  std::vector<double> out;
  for (double z : z_poles) out.push_back(2.0 * kbt * z);
  return out;
}

std::vector<double> CothFit::r_f() const {
  std::vector<double> out;
  for (double r : z_residues) out.push_back(2.0 * kbt * r);
  return out;
}

Complex CothFit::eval_smooth_z(Complex z) const {
  Complex acc = 0.0;
  for (size_t n = 0; n < z_poles.size(); ++n)
    acc += 2.0 * z * z_residues[n] / (z * z + z_poles[n] * z_poles[n]);
  return acc;
}

Complex CothFit::eval_z(Complex z) const { return 1.0 / z + eval_smooth_z(z); }

Complex CothFit::eval_omega(Complex omega) const { return eval_z(omega / (2.0 * kbt)); }

double coth_fit_max_error(const CothFit& fit, int grid_points) {
  double zm = fit.z_max();
  double cut = zm * 1e-6;
  double worst = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    double z = -zm + 2.0 * zm * i / (grid_points - 1);
    double err;
    if (std::abs(z) < cut) {
      err = std::abs(fit.eval_smooth_z(z).real() - coth_smooth_exact(z));
    } else {
      err = std::abs(fit.eval_z(z).real() - coth_exact(z));
    }
    worst = std::max(worst, err);
  }
  return worst;
}

namespace {

// Odd barycentric interpolant: support points in +/- pairs, f(-s) = -f(s)
// and weight -w at -s. The denominator is then even in z (no spurious root
// at the origin) and the numerator odd, so r(-z) = -r(z) holds exactly.
struct Barycentric {
  std::vector<double> support;  // s_i > 0, one entry per +/- pair
  std::vector<double> fvals;    // h(s_i)
  std::vector<double> weights;  // +w_i at +s_i, -w_i at -s_i

  double eval(double z, double h_at_z) const {
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < support.size(); ++i) {
      double dp = z - support[i];
      double dm = z + support[i];
      if (dp == 0.0 || dm == 0.0) return h_at_z;  // exact at supports
      num += weights[i] * fvals[i] * (1.0 / dp + 1.0 / dm);
      den += weights[i] * (1.0 / dp - 1.0 / dm);
    }
    if (den == 0.0) return 0.0;
    return num / den;
  }
};

// Poles and residues of the paired barycentric form.
void barycentric_poles(const Barycentric& b, std::vector<Complex>* poles,
                       std::vector<Complex>* residues) {
  const int m = static_cast<int>(b.support.size());
  const int n = 2 * m;
  std::vector<double> nodes;
  std::vector<double> w;
  for (int i = 0; i < m; ++i) {
    nodes.push_back(b.support[i]);
    w.push_back(b.weights[i]);
    nodes.push_back(-b.support[i]);
    w.push_back(-b.weights[i]);
  }
  MatrixXc a = MatrixXc::Zero(n + 1, n + 1);
  MatrixXc bm = MatrixXc::Zero(n + 1, n + 1);
  for (int i = 0; i < n; ++i) {
    a(0, i + 1) = w[i];
    a(i + 1, 0) = 1.0;
    a(i + 1, i + 1) = nodes[i];
    bm(i + 1, i + 1) = 1.0;
  }
  std::vector<Complex> eigs = generalized_eigenvalues(a, bm, false);
  poles->clear();
  residues->clear();
  auto denom = [&](Complex z, Complex* d, Complex* dp1) {
    *d = 0.0;
    *dp1 = 0.0;
    for (int i = 0; i < m; ++i) {
      Complex dp = z - b.support[i];
      Complex dm = z + b.support[i];
      *d += b.weights[i] * (1.0 / dp - 1.0 / dm);
      *dp1 += b.weights[i] * (-1.0 / (dp * dp) + 1.0 / (dm * dm));
    }
  };
  for (Complex p : eigs) {
    // Newton polish on d(p) = 0; the pencil eigenvalues lose a few digits.
    Complex d, dprime;
    for (int iter = 0; iter < 8; ++iter) {
      denom(p, &d, &dprime);
      if (std::abs(dprime) == 0.0) break;
      Complex step = d / dprime;
      p -= step;
      if (std::abs(step) < 1e-15 * std::abs(p)) break;
    }
    denom(p, &d, &dprime);
    if (std::abs(dprime) == 0.0) continue;
    Complex num = 0.0;
    for (int i = 0; i < m; ++i) {
      Complex dp = p - b.support[i];
      Complex dm = p + b.support[i];
      num += b.weights[i] * b.fvals[i] * (1.0 / dp + 1.0 / dm);
    }
    poles->push_back(p);
    residues->push_back(num / dprime);
  }
}

}  // namespace

CothFit aaa_coth_fit_dimensionless(double z_max, double tol, int max_pairs) {
  if (!(z_max > 0.0) || !(tol > 0.0)) throw config_error("coth fit needs z_max > 0 and tol > 0");
  if (max_pairs < 1) throw config_error("coth fit needs max_pairs >= 1");

  // Chebyshev-distributed samples of the smooth part h = coth - 1/z.
  const int n_samples = 4001;
  std::vector<double> zs(n_samples), hs(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    zs[i] = z_max * std::cos(PI * i / (n_samples - 1));
    hs[i] = coth_smooth_exact(zs[i]);
  }

  Barycentric bary;
  std::vector<bool> is_support(n_samples, false);
  CothFit best;
  best.kbt = 0.5;  // z = omega with this choice
  best.cutoff = z_max;
  best.tolerance = tol;
  best.achieved_error = std::numeric_limits<double>::infinity();

  // One extra pair beyond max_pairs may be needed before cleanup since the
  // paired form spends one support pair on the smooth background.
  const int max_support_pairs = max_pairs + 2;
  for (int it = 0; it < max_support_pairs; ++it) {
    // Greedy support insertion at the worst residual.
    double worst = -1.0;
    int pick = -1;
    for (int i = 0; i < n_samples; ++i) {
      if (is_support[i] || std::abs(zs[i]) < 1e-12 * z_max) continue;
      double r = bary.support.empty() ? 0.0 : bary.eval(zs[i], hs[i]);
      double err = std::abs(hs[i] - r);
      if (err > worst) {
        worst = err;
        pick = i;
      }
    }
    if (pick < 0) break;
    double s = std::abs(zs[pick]);
    bary.support.push_back(s);
    bary.fvals.push_back(coth_smooth_exact(s));
    for (int i = 0; i < n_samples; ++i)
      if (std::abs(std::abs(zs[i]) - s) < 1e-14 * z_max) is_support[i] = true;

    // Least squares for the pair weights, constrained by sum_i w_i f_i = 0.
    // The constraint knocks out the top numerator coefficient, so the
    // interpolant decays at infinity and is exactly a sum of pole pairs.
    const int m = static_cast<int>(bary.support.size());
    std::vector<int> rows;
    for (int i = 0; i < n_samples; ++i)
      if (!is_support[i]) rows.push_back(i);
    MatrixXd loewner(rows.size(), m);
    for (size_t r = 0; r < rows.size(); ++r) {
      double z = zs[rows[r]], h = hs[rows[r]];
      for (int c = 0; c < m; ++c) {
        double dp = z - bary.support[c];
        double dm = z + bary.support[c];
        loewner(r, c) = (h - bary.fvals[c]) / dp - (h + bary.fvals[c]) / dm;
      }
    }
    if (m == 1) {
      bary.weights.assign(1, 1.0);
      continue;
    }
    VectorXd constraint(m);
    for (int c = 0; c < m; ++c) constraint(c) = bary.fvals[c];
    Eigen::HouseholderQR<MatrixXd> cqr(constraint);
    MatrixXd qfull = cqr.householderQ();
    MatrixXd nullspace = qfull.rightCols(m - 1);
    Eigen::BDCSVD<MatrixXd> svd(loewner * nullspace, Eigen::ComputeThinV);
    VectorXd w = nullspace * svd.matrixV().col(m - 2);
    bary.weights.assign(w.data(), w.data() + m);

    // Extract the pole/residue form and clean spurious poles.
    std::vector<Complex> poles, residues;
    barycentric_poles(bary, &poles, &residues);
    double res_scale = 0.0;
    for (Complex r : residues) res_scale = std::max(res_scale, std::abs(r));
    CothFit fit;
    fit.kbt = 0.5;
    fit.cutoff = z_max;
    fit.tolerance = tol;
    std::vector<std::pair<double, double>> pairs;  // (z_n, r_n)
    for (size_t i = 0; i < poles.size(); ++i) {
      Complex p = poles[i];
      if (p.imag() <= 0.0) continue;  // keep one of each conjugate pair
      if (std::abs(p.real()) > 1e-6 * std::abs(p)) continue;  // off-axis stray
      if (std::abs(residues[i]) < 1e-8 * res_scale) continue;  // Froissart doublet
      pairs.push_back({p.imag(), residues[i].real()});
    }
    std::sort(pairs.begin(), pairs.end());
    for (auto& pr : pairs) {
      fit.z_poles.push_back(pr.first);
      fit.z_residues.push_back(pr.second);
    }
    if (fit.pairs() > 0) {
      // Residue refit: with the pole positions fixed, the weights of the
      // pole-pair form are a linear least-squares problem on the samples.
      const int np = fit.pairs();
      MatrixXd basis(n_samples, np);
      VectorXd rhs(n_samples);
      for (int i = 0; i < n_samples; ++i) {
        double z = zs[i];
        rhs(i) = hs[i];
        for (int c = 0; c < np; ++c)
          basis(i, c) = 2.0 * z / (z * z + fit.z_poles[c] * fit.z_poles[c]);
      }
      VectorXd refined = basis.colPivHouseholderQr().solve(rhs);
      for (int c = 0; c < np; ++c) fit.z_residues[c] = refined(c);
    }
    if (fit.pairs() == 0 || fit.pairs() > max_pairs) {
      if (fit.pairs() > max_pairs) break;
      continue;
    }
    fit.achieved_error = coth_fit_max_error(fit);
    if (fit.achieved_error < best.achieved_error) best = fit;
    if (best.achieved_error <= tol) break;
  }

  if (best.achieved_error > tol) {
    std::ostringstream os;
    os << "coth fit: tolerance " << tol << " unreachable within " << max_pairs
       << " pole pairs; best achieved error " << best.achieved_error;
    throw numerics_error(os.str());
  }
  for (size_t i = 0; i < best.z_poles.size(); ++i)
    if (!(best.z_poles[i] > 0.0) || !(best.z_residues[i] > 0.0))
      throw numerics_error("coth fit produced a nonpositive pole or residue");
  return best;
}

CothFit aaa_coth_fit(double kbt, double cutoff, double tol, int max_pairs) {
  if (!(kbt > 0.0)) throw config_error("coth fit needs kbt > 0");
  if (!(cutoff > 0.0)) throw config_error("coth fit needs cutoff > 0");
  CothFit fit = aaa_coth_fit_dimensionless(cutoff / (2.0 * kbt), tol, max_pairs);
  fit.kbt = kbt;
  fit.cutoff = cutoff;
  return fit;
}

}  // namespace nlr
