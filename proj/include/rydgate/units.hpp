#pragma once

// Physical constants (CODATA 2018) and the handful of unit conversions the
// library needs. Energies are carried as E/h in Hz; lengths of interaction
// coefficients in micrometres.

#include <numbers>

namespace rydgate::units {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline constexpr double planck = 6.62607015e-34;        // J s
inline constexpr double hbar = planck / two_pi;         // J s
inline constexpr double boltzmann = 1.380649e-23;       // J / K
inline constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg
inline constexpr double fine_structure = 7.2973525693e-3;
inline constexpr double bohr_radius_um = 5.29177210903e-5;     // micrometres
inline constexpr double hartree_hz = 6.579683920502e15;        // E_h / h
inline constexpr double rydberg_infinity_hz = 3.2898419602508e15;  // R_inf c

/// One atomic unit of C3 (E_h a0^3) expressed in Hz um^3.
inline constexpr double c3_au_to_hz_um3 = hartree_hz * bohr_radius_um * bohr_radius_um * bohr_radius_um;
/// One atomic unit of C6 (E_h a0^6) expressed in Hz um^6.
inline constexpr double c6_au_to_hz_um6 = c3_au_to_hz_um3 * bohr_radius_um * bohr_radius_um * bohr_radius_um;

inline constexpr double mhz_to_rad_per_s(double mhz) { return two_pi * mhz * 1e6; }
inline constexpr double rad_per_s_to_mhz(double w) { return w / (two_pi * 1e6); }
/// Angular frequency -> ordinary frequency in Hz (E/h for an energy hbar*w).
inline constexpr double rad_per_s_to_hz(double w) { return w / two_pi; }

}  // namespace rydgate::units
