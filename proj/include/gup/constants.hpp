#pragma once

#include <numbers>

// Physical constants. SI units throughout.
namespace gup::constants {

inline constexpr double pi = std::numbers::pi;

/// Planck mass as used in the deformation scale (M_p c)^2.
inline constexpr double planck_mass = 2.176435e-8;       // kg
inline constexpr double light_speed = 299792458.0;       // m/s
/// Atomic mass unit used to count nucleons in a test mass.
inline constexpr double atomic_mass_unit = 1.66054e-27;  // kg
/// Vacuum permeability, 4 pi 1e-7.
inline constexpr double vacuum_permeability = 4.0e-7 * pi;  // T m / A
/// Reduced Planck constant (CODATA 2018, exact).
inline constexpr double hbar = 1.054571817e-34;  // J s

// Source pendulum experiment (conventional suspension).
inline constexpr double pendulum_gravity = 9.80393;  // m/s^2
/// Nucleon count quoted for the tabulated pendulum bob.
inline constexpr double pendulum_nucleons = 7.32e26;
/// Bob mass consistent with the quoted nucleon count (7.32e26 u). The
/// rounded text value is 1.22 kg.
inline constexpr double pendulum_mass = pendulum_nucleons * atomic_mass_unit;  // kg

// Digitization uncertainties of the tabulated pendulum data.
inline constexpr double default_sigma_amp_sq = 5.0e-3;  // m^2
inline constexpr double default_sigma_period = 1.0e-4;  // s

}  // namespace gup::constants
