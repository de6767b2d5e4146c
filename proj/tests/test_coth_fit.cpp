// Copyright (c) 2026 NLRSim Developers.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "nlr/aaa.hpp"
#include "nlr/constants.hpp"

using namespace nlr;

TEST_CASE("coth fit on [-100, 100] reaches 1e-12 with 13 pole pairs") {
  CothFit fit = aaa_coth_fit_dimensionless(100.0, 1e-12, 13);
  CHECK(fit.pairs() == 13);
  CHECK(fit.achieved_error <= 1e-12);

  // First pole pair against the reference values, 6 significant digits.
  CHECK(std::abs(fit.z_poles[0] - 3.141592655445434) <= 5e-6 * 3.141592655445434);
  CHECK(std::abs(fit.z_residues[0] - 1.0000000055441378) <= 5e-6);

  // Oddness is structural for the pole-pair form.
  for (double z : {0.37, 3.3, 41.0, 97.0}) {
    CHECK(std::abs(fit.eval_z(z).real() + fit.eval_z(-z).real()) < 1e-15);
  }

  // Independent check of one value through plain exponentials.
  double e = std::exp(1.0);
  double coth1 = (e + 1.0 / e) / (e - 1.0 / e);
  CHECK(std::abs(fit.eval_z(1.0).real() - coth1) <= 1e-12);
  CHECK(std::abs(coth1 - 1.3130352854993312) < 4e-16);
}

TEST_CASE("verification grid excludes the origin through the smooth part") {
  CothFit fit = aaa_coth_fit_dimensionless(50.0, 1e-11, 13);
  // max error is evaluated on 2001 points; near zero the pole-subtracted
  // parts are compared, so the bound carries over the full interval.
  CHECK(coth_fit_max_error(fit) <= 1e-11);
  CHECK(std::abs(fit.eval_smooth_z(1e-9).real() - coth_smooth_exact(1e-9)) < 1e-11);
}

TEST_CASE("unreachable tolerance reports the best achieved error") {
  CHECK_THROWS_WITH_AS(aaa_coth_fit_dimensionless(100.0, 1e-20, 10),
                       doctest::Contains("best achieved"), Error);
}

TEST_CASE("dimensionful fit maps poles through 2 kbt") {
  double kbt = 13.09;  // ~0.1 K in rad/ns
  CothFit fit = aaa_coth_fit(kbt, 2.0 * kbt * 60.0, 1e-10, 14);
  REQUIRE(fit.pairs() >= 8);
  auto omegas = fit.omega_f();
  CHECK(omegas[0] == doctest::Approx(2.0 * kbt * fit.z_poles[0]));
  // First Matsubara-like pole sits near 2 pi kbt.
  CHECK(omegas[0] == doctest::Approx(TWO_PI * kbt).epsilon(1e-4));
}
