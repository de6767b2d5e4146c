// Copyright (c) 2026 NLRSim Developers.
// SPDX-License-Identifier: Apache-2.0
#ifndef NLR_CONSTANTS_HPP
#define NLR_CONSTANTS_HPP

namespace nlr {

// CODATA 2018 exact values (SI).
inline constexpr double HBAR = 1.054571817e-34;       // J s
inline constexpr double PLANCK_H = 6.62607015e-34;    // J s
inline constexpr double K_BOLTZMANN = 1.380649e-23;   // J/K
inline constexpr double E_CHARGE = 1.602176634e-19;   // C

// Superconducting flux quantum h/(2e) and resistance quantum h/(2e)^2.
inline constexpr double PHI0 = PLANCK_H / (2.0 * E_CHARGE);            // Wb
inline constexpr double R_QUANTUM = PLANCK_H / (4.0 * E_CHARGE * E_CHARGE);  // Ohm, ~6.453 kOhm

inline constexpr double PI = 3.14159265358979323846;
inline constexpr double TWO_PI = 2.0 * PI;

}  // namespace nlr

#endif  // NLR_CONSTANTS_HPP
