// Copyright (c) 2026 NLRSim Developers.
// SPDX-License-Identifier: Apache-2.0
#ifndef NLR_TYPES_HPP
#define NLR_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace nlr {

using Complex = std::complex<double>;
using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;
using MatrixXd = Eigen::MatrixXd;
using VectorXd = Eigen::VectorXd;
using MatrixXi = Eigen::MatrixXi;

inline constexpr Complex I_UNIT{0.0, 1.0};

// Error taxonomy mirrored by the CLI exit codes.
enum class ErrorKind {
  Config = 2,      // bad input document or parameters
  Numerics = 3,    // convergence failure of a numerical routine
  Physics = 4,     // model violates a physical validity condition
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error config_error(const std::string& msg) { return Error(ErrorKind::Config, msg); }
inline Error numerics_error(const std::string& msg) { return Error(ErrorKind::Numerics, msg); }
inline Error physics_error(const std::string& msg) { return Error(ErrorKind::Physics, msg); }

}  // namespace nlr

#endif  // NLR_TYPES_HPP
