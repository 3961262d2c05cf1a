#include "rydgate/lengthscales.hpp"

#include "rydgate/error.hpp"
#include "rydgate/parallel.hpp"
#include "rydgate/units.hpp"

#include <algorithm>
#include <cmath>

namespace rydgate::lengthscales {

double Lengthscales::window_low_um() const { return std::max(r_b6_um, r_mu_um); }

Lengthscales blockade_radii(double c3_hz_um3, double c6_hz_um6, double omega_eit, double omega_mu) {
    if (!(c3_hz_um3 > 0.0)) throw InvalidArgument("blockade radii need C3 > 0");
    if (!(std::abs(c6_hz_um6) > 0.0) || !std::isfinite(c6_hz_um6)) throw InvalidArgument("blockade radii need C6 != 0");
    if (!(omega_eit > 0.0) || !(omega_mu > 0.0)) throw InvalidArgument("blockade radii need positive Omega and Omega_mu");

    // hbar*omega / h = omega / 2pi, matching the Hz-based coefficients.
    const double nu_eit = units::rad_per_s_to_hz(omega_eit);
    const double nu_mu = units::rad_per_s_to_hz(omega_mu);
    const double c6 = std::abs(c6_hz_um6);

    Lengthscales out;
    out.r_b3_um = std::cbrt(c3_hz_um3 / nu_mu);
    out.r_b6_um = std::pow(c6 / nu_eit, 1.0 / 6.0);
    out.r_mu_um = std::pow(c6 / nu_mu, 1.0 / 6.0);
    out.omega_eit = omega_eit;
    out.omega_mu = omega_mu;
    out.c6_negative = c6_hz_um6 < 0.0;
    return out;
}

LevelSystem LevelSystem::for_n(int n) {
    return {RydbergLevel::make(n + 1, 0, 0.5), RydbergLevel::make(n, 0, 0.5), RydbergLevel::make(n, 1, 0.5)};
}

double SystemCoefficients::gamma_max() const { return std::max({gamma_r, gamma_r_prime, gamma_p}); }

SystemCoefficients system_coefficients(const Atom& atom, int n, double environment_temperature_k,
                                       const pair::ChannelOptions& channels) {
    SystemCoefficients out;
    out.levels = LevelSystem::for_n(n);
    out.environment_temperature_k = environment_temperature_k;
    out.c3_hz_um3 = pair::c3_coefficient(atom, out.levels.r_prime, out.levels.p).c3_hz_um3;
    out.c6 = pair::c6_coefficient(atom, {out.levels.r_prime, out.levels.r, 0}, channels);
    const auto& species = atom.species();
    out.gamma_r = qdt::decay_rate(species, out.levels.r, environment_temperature_k);
    out.gamma_r_prime = qdt::decay_rate(species, out.levels.r_prime, environment_temperature_k);
    out.gamma_p = qdt::decay_rate(species, out.levels.p, environment_temperature_k);
    return out;
}

double merit_value(double c3_hz_um3, double c6_hz_um6, double gamma_per_s) {
    if (!(gamma_per_s > 0.0)) throw InvalidArgument("figure of merit needs a positive decay rate");
    if (c6_hz_um6 == 0.0) throw InvalidArgument("figure of merit needs C6 != 0");
    return units::two_pi * c3_hz_um3 * c3_hz_um3 / (std::abs(c6_hz_um6) * gamma_per_s);
}

MeritPoint figure_of_merit(const Atom& atom, int n, double environment_temperature_k,
                           const pair::ChannelOptions& channels) {
    if (environment_temperature_k < 0.0) throw InvalidArgument("temperature must be >= 0");
    const auto sys = system_coefficients(atom, n, environment_temperature_k, channels);
    MeritPoint out;
    out.n = n;
    out.c3_hz_um3 = sys.c3_hz_um3;
    out.c6_hz_um6 = sys.c6_hz_um6();
    out.gamma_used = sys.gamma_max();
    out.merit = merit_value(out.c3_hz_um3, out.c6_hz_um6, out.gamma_used);
    return out;
}

namespace {

double radius6(double c6_hz_um6, double omega) {
    return std::pow(std::abs(c6_hz_um6) / units::rad_per_s_to_hz(omega), 1.0 / 6.0);
}

}  // namespace

std::vector<RadiiRow> radii_scan(const Atom& atom, const std::vector<int>& n_values, double omega,
                                 const pair::ChannelOptions& channels, int workers) {
    if (n_values.empty()) throw InvalidArgument("radii scan needs at least one n");
    if (!(omega > 0.0)) throw InvalidArgument("radii scan needs Omega > 0");
    std::vector<RadiiRow> rows(n_values.size());
    parallel_for(n_values.size(), workers, [&](std::size_t i) {
        const int n = n_values[i];
        RadiiRow row;
        row.n = n;
        const auto levels = LevelSystem::for_n(n);
        row.r_b3_um = std::cbrt(pair::c3_coefficient(atom, levels.r_prime, levels.p).c3_hz_um3 /
                                units::rad_per_s_to_hz(omega));
        try {
            row.r_b6_cross_um = radius6(pair::c6_coefficient(atom, {levels.r_prime, levels.r, 0}, channels).c6_hz_um6,
                                        omega);
        } catch (const ResonanceError& e) {
            row.resonance = true;
            row.note = e.what();
        }
        try {
            row.r_b6_same_um =
                radius6(pair::c6_coefficient(atom, {levels.r_prime, levels.r_prime, 0}, channels).c6_hz_um6, omega);
        } catch (const ResonanceError& e) {
            row.resonance = true;
            if (row.note.empty()) row.note = e.what();
        }
        rows[i] = std::move(row);
    });
    return rows;
}

std::vector<MeritRow> merit_scan(const Atom& atom, const std::vector<int>& n_values, double environment_temperature_k,
                                 const pair::ChannelOptions& channels, int workers) {
    if (n_values.empty()) throw InvalidArgument("merit scan needs at least one n");
    std::vector<MeritRow> rows(n_values.size());
    parallel_for(n_values.size(), workers, [&](std::size_t i) {
        MeritRow row;
        row.n = n_values[i];
        try {
            row.point = figure_of_merit(atom, row.n, environment_temperature_k, channels);
        } catch (const ResonanceError& e) {
            row.resonance = true;
            row.note = e.what();
        }
        rows[i] = std::move(row);
    });
    return rows;
}

}  // namespace rydgate::lengthscales
