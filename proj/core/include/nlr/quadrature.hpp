// Copyright (c) 2026 NLRSim Developers.
// SPDX-License-Identifier: Apache-2.0
#ifndef NLR_QUADRATURE_HPP
#define NLR_QUADRATURE_HPP

#include <functional>

#include "nlr/types.hpp"

namespace nlr {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
};

// Adaptive Gauss-Kronrod (G7, K15) on [a, b] with bisection until the
// summed error estimate meets abs_tol + rel_tol * |integral|.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double rel_tol = 1e-10, double abs_tol = 0.0,
                                    int max_subdivisions = 2000);

}  // namespace nlr

#endif  // NLR_QUADRATURE_HPP
