// Copyright (c) 2026 NLRSim Developers.
// SPDX-License-Identifier: Apache-2.0
#ifndef NLR_MATPOLY_HPP
#define NLR_MATPOLY_HPP

#include <vector>

#include "nlr/types.hpp"

namespace nlr {

// Matrix-valued polynomial sum_p coeff[p] * omega^p.
class MatPoly {
 public:
  MatPoly() = default;
  MatPoly(Eigen::Index rows, Eigen::Index cols, int degree) {
    coeffs_.resize(degree + 1, MatrixXc::Zero(rows, cols));
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Eigen::Index rows() const { return coeffs_.empty() ? 0 : coeffs_[0].rows(); }
  Eigen::Index cols() const { return coeffs_.empty() ? 0 : coeffs_[0].cols(); }

  MatrixXc& operator[](int p) { return coeffs_[p]; }
  const MatrixXc& operator[](int p) const { return coeffs_[p]; }

  MatrixXc eval(Complex omega) const {
    MatrixXc result = MatrixXc::Zero(rows(), cols());
    Complex w = 1.0;
    for (const MatrixXc& c : coeffs_) {
      result += w * c;
      w *= omega;
    }
    return result;
  }

  MatrixXc derivative(Complex omega) const {
    MatrixXc result = MatrixXc::Zero(rows(), cols());
    Complex w = 1.0;
    for (int p = 1; p <= degree(); ++p) {
      result += static_cast<double>(p) * w * coeffs_[p];
      w *= omega;
    }
    return result;
  }

  MatPoly block(Eigen::Index i, Eigen::Index j, Eigen::Index r, Eigen::Index c) const {
    MatPoly out(r, c, degree());
    for (int p = 0; p <= degree(); ++p) out[p] = coeffs_[p].block(i, j, r, c);
    return out;
  }

  // coefficient-wise A^T and A^dagger; the dagger version represents the
  // advanced counterpart of a retarded polynomial kernel.
  MatPoly transposed() const {
    MatPoly out(cols(), rows(), degree());
    for (int p = 0; p <= degree(); ++p) out[p] = coeffs_[p].transpose();
    return out;
  }
  MatPoly adjoint_coeffs() const {
    MatPoly out(cols(), rows(), degree());
    for (int p = 0; p <= degree(); ++p) out[p] = coeffs_[p].adjoint();
    return out;
  }

  // Congruence transform T^T P T applied coefficient-wise.
  MatPoly congruence(const MatrixXd& t) const {
    MatPoly out(t.cols(), t.cols(), degree());
    for (int p = 0; p <= degree(); ++p)
      out[p] = t.transpose().cast<Complex>() * coeffs_[p] * t.cast<Complex>();
    return out;
  }

  void trim() {
    while (coeffs_.size() > 1 && coeffs_.back().norm() == 0.0) coeffs_.pop_back();
  }

 private:
  std::vector<MatrixXc> coeffs_;
};

// Rational matrix-valued function of complex frequency: polynomial part of
// degree <= 2 plus a list of simple poles with matrix residues.
struct RationalMatrixFunction {
  Eigen::Index dim_rows = 0;
  Eigen::Index dim_cols = 0;
  MatrixXc p0, p1, p2;
  struct Pole {
    Complex omega;
    MatrixXc residue;
  };
  std::vector<Pole> poles;

  MatrixXc eval(Complex omega) const {
    MatrixXc result = p0 + omega * p1 + omega * omega * p2;
    for (const Pole& pole : poles) result += pole.residue / (omega - pole.omega);
    return result;
  }

  // Smallest pairwise pole separation; infinity when fewer than two poles.
  double min_pole_separation() const {
    double sep = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < poles.size(); ++i)
      for (size_t j = i + 1; j < poles.size(); ++j)
        sep = std::min(sep, std::abs(poles[i].omega - poles[j].omega));
    return sep;
  }
};

}  // namespace nlr

#endif  // NLR_MATPOLY_HPP
