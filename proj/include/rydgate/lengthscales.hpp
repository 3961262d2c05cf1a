#pragma once

// Blockade lengthscales and the figure of merit for the (nS, (n+1)S, nP1/2)
// level family: r = (n+1)S1/2 (target), r' = nS1/2 (control), p = nP1/2.

#include "rydgate/pair.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rydgate::lengthscales {

using qdt::Atom;
using qdt::RydbergLevel;

struct Lengthscales {
    double r_b3_um = 0.0;  // (C3 / hbar Omega_mu)^(1/3)
    double r_b6_um = 0.0;  // (|C6| / hbar Omega)^(1/6)
    double r_mu_um = 0.0;  // (|C6| / hbar Omega_mu)^(1/6)
    double omega_eit = 0.0;  // rad/s
    double omega_mu = 0.0;   // rad/s
    bool c6_negative = false;

    /// Gate window [max(R_b6, R_mu), R_b3].
    double window_low_um() const;
    double window_high_um() const { return r_b3_um; }
    bool window_ok() const { return r_b3_um > window_low_um(); }
};

/// C3 in Hz um^3, C6 in Hz um^6 (signed; the radii use |C6|), frequencies in rad/s.
/// Throws InvalidArgument unless C3, |C6| and both frequencies are positive.
Lengthscales blockade_radii(double c3_hz_um3, double c6_hz_um6, double omega_eit, double omega_mu);

struct LevelSystem {
    RydbergLevel r;
    RydbergLevel r_prime;
    RydbergLevel p;

    static LevelSystem for_n(int n);
};

/// Everything the gate needs from atomic structure for one n.
struct SystemCoefficients {
    LevelSystem levels;
    double c3_hz_um3 = 0.0;
    pair::InteractionCoefficients c6;  // for the pair |r' r>
    double gamma_r = 0.0;              // s^-1
    double gamma_r_prime = 0.0;
    double gamma_p = 0.0;
    double environment_temperature_k = 0.0;

    double c6_hz_um6() const { return c6.c6_hz_um6; }
    double gamma_max() const;
};

/// Throws ResonanceError when (nS, (n+1)S) sits on a Förster resonance.
SystemCoefficients system_coefficients(const Atom& atom, int n, double environment_temperature_k,
                                       const pair::ChannelOptions& channels = {});

struct MeritPoint {
    int n = 0;
    double merit = 0.0;       // O = C3^2 / (|C6| hbar Gamma)
    double gamma_used = 0.0;  // s^-1, the largest decay rate among r, r', p
    double c3_hz_um3 = 0.0;
    double c6_hz_um6 = 0.0;
};

/// O from already-computed coefficients: 2 pi C3^2 / (|C6| Gamma) in the Hz-based units.
double merit_value(double c3_hz_um3, double c6_hz_um6, double gamma_per_s);

MeritPoint figure_of_merit(const Atom& atom, int n, double environment_temperature_k,
                           const pair::ChannelOptions& channels = {});

struct RadiiRow {
    int n = 0;
    std::optional<double> r_b6_cross_um;  // pair (nS, (n+1)S)
    std::optional<double> r_b6_same_um;   // pair (nS, nS)
    std::optional<double> r_b3_um;        // (nS, nP1/2) exchange
    bool resonance = false;
    std::string note;
};

/// One row per n, in input order. Resonant pairs produce a flagged row, never
/// an exception. Omega (rad/s) serves as both the EIT linewidth and Omega_mu.
std::vector<RadiiRow> radii_scan(const Atom& atom, const std::vector<int>& n_values, double omega,
                                 const pair::ChannelOptions& channels = {}, int workers = 1);

struct MeritRow {
    int n = 0;
    std::optional<MeritPoint> point;
    bool resonance = false;
    std::string note;
};

std::vector<MeritRow> merit_scan(const Atom& atom, const std::vector<int>& n_values, double environment_temperature_k,
                                 const pair::ChannelOptions& channels = {}, int workers = 1);

}  // namespace rydgate::lengthscales
