// Copyright (c) 2026 NLRSim Developers.
// SPDX-License-Identifier: Apache-2.0
#include "nlr/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace nlr {

namespace {

// 15-point Kronrod nodes/weights on [-1, 1] with the embedded 7-point Gauss
// rule (positive half; symmetric).
const double kKronrodNodes[8] = {
    0.0,
    0.2077849550078985,
    0.4058451513773972,
    0.5860872354676911,
    0.7415311855993945,
    0.8648644233597691,
    0.9491079123427585,
    0.9914553711208126,
};
const double kKronrodWeights[8] = {
    0.2094821410847278,
    0.2044329400752989,
    0.1903505780647854,
    0.1690047266392679,
    0.1406532597155259,
    0.1047900103222502,
    0.0630920926299786,
    0.0229353220105292,
};
const double kGaussWeights[4] = {
    0.4179591836734694,
    0.3818300505051189,
    0.2797053914892767,
    0.1294849661688697,
};

struct PanelResult {
  double kronrod = 0.0;
  double error = 0.0;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fk = 0.0, fg = 0.0;
  double f0 = f(c);
  fk += kKronrodWeights[0] * f0;
  fg += kGaussWeights[0] * f0;
  for (int i = 1; i < 8; ++i) {
    double fp = f(c + h * kKronrodNodes[i]);
    double fm = f(c - h * kKronrodNodes[i]);
    fk += kKronrodWeights[i] * (fp + fm);
    if (i % 2 == 0) fg += kGaussWeights[i / 2] * (fp + fm);
  }
  PanelResult r;
  r.kronrod = fk * h;
  double gauss = fg * h;
  r.error = std::pow(200.0 * std::abs(r.kronrod - gauss), 1.5);
  r.error = std::min(r.error, std::abs(r.kronrod - gauss) * 200.0);
  if (r.error == 0.0) r.error = std::abs(r.kronrod) * 1e-16;
  return r;
}

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double rel_tol, double abs_tol, int max_subdivisions) {
  QuadratureResult out;
  PanelResult first = gk15(f, a, b);
  std::priority_queue<Panel> panels;
  panels.push({a, b, first.kronrod, first.error});
  double total = first.kronrod;
  double total_err = first.error;
  out.evaluations = 15;

  int splits = 0;
  while (splits < max_subdivisions) {
    double target = abs_tol + rel_tol * std::abs(total);
    if (total_err <= target) break;
    Panel top = panels.top();
    panels.pop();
    double mid = 0.5 * (top.a + top.b);
    PanelResult left = gk15(f, top.a, mid);
    PanelResult right = gk15(f, mid, top.b);
    out.evaluations += 30;
    total += left.kronrod + right.kronrod - top.value;
    total_err += left.error + right.error - top.error;
    panels.push({top.a, mid, left.kronrod, left.error});
    panels.push({mid, top.b, right.kronrod, right.error});
    ++splits;
  }
  if (total_err > abs_tol + rel_tol * std::abs(total))
    throw numerics_error("adaptive quadrature did not reach the requested tolerance");
  out.value = total;
  out.error = total_err;
  return out;
}

}  // namespace nlr
