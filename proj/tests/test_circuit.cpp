// Copyright (c) 2026 NLRSim Developers.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include <Eigen/SVD>

#include "nlr/circuit.hpp"
#include "nlr/constants.hpp"
#include "nlr/ratfit.hpp"
#include "test_support.hpp"

using namespace nlr;

namespace {

constexpr double GHZ = TWO_PI;  // 1 GHz in rad/ns

Complex det2(const MatrixXc& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

}  // namespace

TEST_CASE("readout circuit self-energy matches the known closed form") {
  ScaledCircuit sc = nlrtest::scaled_transmon(0.1);
  CircuitBlocks blocks = assemble_circuit_self_energy(sc);
  REQUIRE(blocks.nodes == 3);
  REQUIRE(blocks.n_ports == 2);

  const double ct = 0.080 + 0.040;            // C_t + C_c in pF
  const double cr = 0.570 + 0.040 + 0.015;    // C_r + C_c + C_o
  const double co = 0.015;
  const double cc = 0.040;
  const double lr = 0.7e-3;                   // 0.7 nH in microhenry
  const double z = 0.050;                     // 50 Ohm in kOhm

  Complex w(3.7, 0.0);
  MatrixXc s = blocks.eval_retarded(w);
  // The quadratic form convention used here is the negative of the common
  // "admittance-like" writing; diagonal node entries read 1/L - w^2 C.
  CHECK(std::abs(-s(0, 0) - (w * w * ct)) < 1e-12);
  CHECK(std::abs(-s(1, 1) - (w * w * cr - 1.0 / lr)) < 1e-12);
  CHECK(std::abs(-s(2, 2) - (w * w * co + 2.0 * I_UNIT * w / z)) < 1e-12);
  CHECK(std::abs(-s(0, 1) - (-w * w * cc)) < 1e-12);
  CHECK(std::abs(-s(1, 2) - (-w * w * co)) < 1e-12);
  // Field couplings: drive column, measurement row.
  CHECK(std::abs(-s(2, 3) - (2.0 / z)) < 1e-12);
  CHECK(std::abs(-s(4, 2) - (-I_UNIT * w)) < 1e-12);
  CHECK(std::abs(s(4, 3)) == 0.0);  // no direct drive-measure feedthrough
  CHECK(std::abs(-s(3, 3) - (-1.0)) < 1e-12);

  // Keldysh part carries the coth factor over the dissipative block.
  MatrixXc k = blocks.eval_keldysh(w);
  double coth = 1.0 / std::tanh(w.real() / (2.0 * sc.kbt));
  CHECK(std::abs(k(2, 2) - (-I_UNIT * w * coth * 2.0 / z)) < 1e-12);
  CHECK(std::abs(k(2, 4) - (I_UNIT * w * coth * 0.5)) < 1e-12);
  CHECK(std::abs(k(4, 4) - (-I_UNIT * w * coth * z / 4.0)) < 1e-12);
}

TEST_CASE("single-junction core needs no reduction and matches the 2x2 form") {
  ScaledCircuit sc = nlrtest::scaled_rsj(2000.0, 0.1);
  CoreSelfEnergy core = core_self_energy_of(sc);
  CHECK(core.n_core == 1);
  CHECK(core.n_interface == 0);
  CHECK(core.retarded.poles.empty());

  const double c = 1.43e-3;  // pF
  const double z = 2.0;      // kOhm
  for (double wr : {0.3, 2.1, 11.0}) {
    Complex w(wr, 0.0);
    MatrixXc s = core.eval_retarded(w);
    CHECK(std::abs(s(0, 0) - (-c * w * w - I_UNIT * w / z)) < 1e-12);
    CHECK(std::abs(s(0, 1) - (-2.0 / z)) < 1e-12);
    CHECK(std::abs(s(1, 0) - (I_UNIT * w)) < 1e-12);
    CHECK(std::abs(s(1, 1) - 1.0) < 1e-12);
    // Keldysh factor of the single line.
    MatrixXc f = core.eval_keldysh_factor(w);
    CHECK(std::abs(f(0, 0) - (-I_UNIT * w / z)) < 1e-14);
    CHECK(std::abs(f(0, 1) - (I_UNIT * w * 0.5)) < 1e-14);
    CHECK(std::abs(f(1, 1) - (-I_UNIT * w * z / 4.0)) < 1e-14);
  }
}

TEST_CASE("five-node loop example reproduces the reference transformation") {
  // Junctions (1,2), (4,2), (2,0) and a loop-closing junction (1,0) whose
  // flux difference is dependent on the first three.
  CircuitNetlist nl;
  nl.nodes = 5;
  for (int k = 1; k <= 5; ++k) nl.capacitors.push_back({0, k, 100e-15});
  nl.junctions.push_back({1, 2, 5e9 * PLANCK_H, 0.0});
  nl.junctions.push_back({4, 2, 5e9 * PLANCK_H, 0.0});
  nl.junctions.push_back({2, 0, 5e9 * PLANCK_H, 0.0});
  nl.junctions.push_back({1, 0, 5e9 * PLANCK_H, 0.0});
  nl.ports.push_back({5, 50.0, PortRole::Both});
  nl.temperature = 0.1;
  validate_netlist(nl);

  CoreSplit split = choose_core_split(scale_circuit(nl));
  CHECK(split.n_core == 3);
  MatrixXi expected(5, 5);
  expected << 1, 0, 1, 0, 0,
              0, 0, 1, 0, 0,
              0, 0, 0, 1, 0,
              0, 1, 1, 0, 0,
              0, 0, 0, 0, 1;
  CHECK(split.q == expected);
  // Dependent junction decomposes as psi_1 + psi_3.
  CHECK(split.junction_weights(3, 0) == 1);
  CHECK(split.junction_weights(3, 1) == 0);
  CHECK(split.junction_weights(3, 2) == 1);
}

TEST_CASE("readout circuit uses the identity transformation") {
  ScaledCircuit sc = nlrtest::scaled_transmon(0.1);
  CoreSplit split = choose_core_split(sc);
  CHECK(split.n_core == 1);
  CHECK(split.q == MatrixXi::Identity(3, 3));
}

TEST_CASE("junction loops reduce the core dimension to the incidence rank") {
  CircuitNetlist nl;
  nl.nodes = 3;
  for (int k = 1; k <= 3; ++k) nl.capacitors.push_back({0, k, 100e-15});
  nl.junctions.push_back({1, 2, 5e9 * PLANCK_H, 0.0});
  nl.junctions.push_back({2, 3, 5e9 * PLANCK_H, 0.0});
  nl.junctions.push_back({1, 3, 5e9 * PLANCK_H, 0.0});  // closes a loop
  nl.ports.push_back({1, 50.0, PortRole::Both});
  nl.temperature = 0.1;
  CoreSplit split = choose_core_split(scale_circuit(nl));
  CHECK(split.n_core == 2);
  CHECK(split.junction_weights.row(2) == (split.junction_weights.row(0) + split.junction_weights.row(1)));
}

TEST_CASE("dynamical poles of the readout circuit match the reference values") {
  ScaledCircuit sc = nlrtest::scaled_transmon(0.1);
  CoreSelfEnergy core = core_self_energy_of(sc);
  std::vector<Complex> poles = find_dynamical_poles(core);
  REQUIRE(poles.size() == 3);

  // Reference: (7.61 - 1.63e-3 i), (-7.61 - 1.63e-3 i), -434 i, in GHz.
  Complex ref1 = (7.61 - 1.63e-3 * I_UNIT) * GHZ;
  Complex ref2 = (-7.61 - 1.63e-3 * I_UNIT) * GHZ;
  Complex ref3 = -434.0 * I_UNIT * GHZ;
  auto close = [](Complex a, Complex b) {
    return std::abs(a.real() - b.real()) <= 5e-3 * std::max(std::abs(b.real()), 1e-6) &&
           std::abs(a.imag() - b.imag()) <= 5e-3 * std::max(std::abs(b.imag()), 1e-6);
  };
  CHECK(close(poles[0], ref1));
  CHECK(close(poles[1], ref2));
  CHECK(close(poles[2], ref3));

  // The weakly damped pair sits near the bare resonator frequency.
  double bare = 1.0 / std::sqrt(0.7e-3 * 0.625);
  CHECK(std::abs(poles[0].real() - bare) < 0.01 * bare);
  CHECK(poles[0].real() == doctest::Approx(7.612 * GHZ).epsilon(2e-3));
}

TEST_CASE("Schur-complement evaluation matches the rational decomposition") {
  ScaledCircuit sc = nlrtest::scaled_transmon(0.1);
  CoreSelfEnergy core = core_self_energy_of(sc);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  double cutoff = 60.0 * GHZ;
  for (int i = 0; i < 20; ++i) {
    Complex w(cutoff * unif(rng), 0.0);
    MatrixXc direct = core.eval_retarded(w);
    MatrixXc rational = core.retarded.eval(w);
    CHECK((direct - rational).norm() <= 1e-10 * direct.norm());
    MatrixXc f_direct = core.eval_keldysh_factor(w);
    MatrixXc f_rational = core.keldysh_factor.eval(w);
    CHECK((f_direct - f_rational).norm() <= 1e-9 * std::max(f_direct.norm(), 1e-12));
  }
  // Off-pole evaluation at 5 GHz is finite.
  CHECK(std::isfinite(core.eval_retarded(Complex(5.0 * GHZ, 0.0)).norm()));
}

TEST_CASE("causality and reality symmetries hold on random samples") {
  ScaledCircuit sc = nlrtest::scaled_transmon(0.1);
  CoreSelfEnergy core = core_self_energy_of(sc);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int i = 0; i < 12; ++i) {
    Complex w(40.0 * unif(rng), 30.0 * unif(rng));
    MatrixXc adv = core.eval_advanced(w);
    MatrixXc ret_conj = core.eval_retarded(std::conj(w));
    CHECK((adv - ret_conj.adjoint()).norm() <= 1e-12 * adv.norm());
    // Reality: Sigma^R(-w*) = conj(Sigma^R(w)).
    MatrixXc lhs = core.eval_retarded(-std::conj(w));
    MatrixXc rhs = core.eval_retarded(w).conjugate();
    CHECK((lhs - rhs).norm() <= 1e-12 * rhs.norm());
  }
}

TEST_CASE("random passive netlists keep all interface roots damped") {
  std::mt19937_64 rng(20260810);
  int reduced = 0;
  for (int trial = 0; trial < 100; ++trial) {
    CircuitNetlist nl = nlrtest::random_netlist(rng);
    ScaledCircuit sc = scale_circuit(nl);
    // reduce_to_core raises a physics error when any kept pole fails Im < 0.
    CoreSelfEnergy core = core_self_energy_of(sc);
    for (const auto& p : core.retarded.poles) CHECK(p.omega.imag() < 0.0);
    ++reduced;
  }
  CHECK(reduced == 100);
}

TEST_CASE("residues agree with a contour-integral oracle and have unit rank") {
  ScaledCircuit sc = nlrtest::scaled_transmon(0.1);
  CoreSelfEnergy core = core_self_energy_of(sc);
  auto residues = compute_residues(core);
  REQUIRE(residues.size() == 3);

  for (const auto& dr : residues) {
    const Complex c = dr.omega;
    const double rho = 1e-3 * std::abs(c);
    MatrixXc acc = MatrixXc::Zero(core.dim(), core.dim());
    const int n = 64;
    for (int j = 0; j < n; ++j) {
      double th = TWO_PI * j / n;
      Complex dz = rho * Complex(std::cos(th), std::sin(th));
      acc += core.eval_retarded(c + dz) * dz;
    }
    acc /= static_cast<double>(n);
    CHECK((acc - dr.retarded).norm() <= 1e-8 * dr.retarded.norm());

    Eigen::JacobiSVD<MatrixXc> svd(dr.retarded);
    CHECK(svd.singularValues()(1) <= 1e-10 * svd.singularValues()(0));
  }
}

TEST_CASE("interface completion choice does not change the core self-energy") {
  ScaledCircuit sc = nlrtest::scaled_transmon(0.1);
  CircuitBlocks blocks = assemble_circuit_self_energy(sc);
  CoreSplit split = choose_core_split(sc);
  CoreSelfEnergy a = reduce_to_core(blocks, split);

  CoreSplit alt = split;
  MatrixXi q(3, 3);
  q << 1, 0, 0,
       0, 1, -1,
       0, 0, 1;
  alt.q = q;
  alt.q_inverse = q;  // self-inverse here
  alt.q_inverse(1, 2) = 1;
  CoreSelfEnergy b = reduce_to_core(blocks, alt);

  for (double wr : {3.0, 17.0, 44.0}) {
    Complex w(wr, 0.0);
    CHECK((a.eval_retarded(w) - b.eval_retarded(w)).norm() <=
          1e-10 * a.eval_retarded(w).norm());
    CHECK((a.eval_keldysh_factor(w) - b.eval_keldysh_factor(w)).norm() <=
          1e-9 * std::max(a.eval_keldysh_factor(w).norm(), 1e-12));
  }
}

TEST_CASE("degenerate interface is rejected with a diagnostic") {
  // Isolated interface node: no element touches node 2 at all; its
  // self-energy block vanishes identically.
  CircuitNetlist nl;
  nl.nodes = 2;
  nl.capacitors.push_back({0, 1, 100e-15});
  nl.junctions.push_back({0, 1, 5e9 * PLANCK_H, 0.0});
  nl.ports.push_back({1, 50.0, PortRole::Both});
  nl.temperature = 0.1;
  validate_netlist(nl);
  CHECK_THROWS_AS(core_self_energy_of(scale_circuit(nl)), Error);
}
