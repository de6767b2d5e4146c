// Copyright (c) 2026 NLRSim Developers.
// SPDX-License-Identifier: Apache-2.0
#include "nlr/polyeig.hpp"

#include <algorithm>
#include <cmath>

// LAPACK QZ driver; Eigen has no complex generalized eigensolver.
extern "C" void zggev_(const char* jobvl, const char* jobvr, const int* n,
                       std::complex<double>* a, const int* lda, std::complex<double>* b,
                       const int* ldb, std::complex<double>* alpha, std::complex<double>* beta,
                       std::complex<double>* vl, const int* ldvl, std::complex<double>* vr,
                       const int* ldvr, std::complex<double>* work, const int* lwork,
                       double* rwork, int* info);

namespace nlr {

std::vector<Complex> generalized_eigenvalues(const MatrixXc& a, const MatrixXc& b,
                                             bool keep_infinite) {
  const int n = static_cast<int>(a.rows());
  if (n == 0) return {};
  MatrixXc aw = a, bw = b;  // column-major, matches LAPACK layout
  VectorXc alpha(n), beta(n);
  int lwork = std::max(1, 4 * n);
  std::vector<Complex> work(lwork);
  std::vector<double> rwork(8 * n);
  int info = 0;
  const char job = 'N';
  zggev_(&job, &job, &n, aw.data(), &n, bw.data(), &n, alpha.data(), beta.data(), nullptr, &n,
         nullptr, &n, work.data(), &lwork, rwork.data(), &info);
  if (info != 0) throw numerics_error("zggev failed with info=" + std::to_string(info));

  std::vector<Complex> eigs;
  double scale_a = aw.size() ? a.cwiseAbs().maxCoeff() : 1.0;
  for (int i = 0; i < n; ++i) {
    if (std::abs(beta[i]) > 1e-14 * (std::abs(alpha[i]) + scale_a)) {
      eigs.push_back(alpha[i] / beta[i]);
    } else if (keep_infinite) {
      eigs.push_back(Complex(std::numeric_limits<double>::infinity(), 0.0));
    }
  }
  return eigs;
}

std::vector<Complex> polyeig_quadratic(const MatPoly& t, double infinite_cutoff) {
  const Eigen::Index n = t.rows();
  if (n == 0) return {};
  MatrixXc t0 = t.degree() >= 0 ? t[0] : MatrixXc::Zero(n, n);
  MatrixXc t1 = t.degree() >= 1 ? t[1] : MatrixXc::Zero(n, n);
  MatrixXc t2 = t.degree() >= 2 ? t[2] : MatrixXc::Zero(n, n);

  // First companion form: A = [[0, I], [-T0, -T1]], B = diag(I, T2).
  MatrixXc a = MatrixXc::Zero(2 * n, 2 * n);
  MatrixXc b = MatrixXc::Zero(2 * n, 2 * n);
  a.block(0, n, n, n) = MatrixXc::Identity(n, n);
  a.block(n, 0, n, n) = -t0;
  a.block(n, n, n, n) = -t1;
  b.block(0, 0, n, n) = MatrixXc::Identity(n, n);
  b.block(n, n, n, n) = t2;

  std::vector<Complex> eigs = generalized_eigenvalues(a, b, false);
  if (eigs.empty()) return eigs;

  std::vector<double> mags;
  mags.reserve(eigs.size());
  for (Complex w : eigs) mags.push_back(std::abs(w));
  std::nth_element(mags.begin(), mags.begin() + mags.size() / 2, mags.end());
  double median = mags[mags.size() / 2];
  if (median == 0.0) median = 1.0;

  std::vector<Complex> finite;
  for (Complex w : eigs)
    if (std::abs(w) <= infinite_cutoff * median) finite.push_back(w);
  return finite;
}

}  // namespace nlr
