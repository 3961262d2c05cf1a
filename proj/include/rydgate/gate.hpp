#pragma once

// Microwave 2pi pulse on the target |r> <-> |p> transition, shifted by the
// control excitation through C3 (on |p>) and C6 (on |r>), with amplitude decay.
//
// Rates and detunings are angular (rad/s); interaction coefficients are E/h
// (Hz um^3, Hz um^6) and are converted with a single 2pi where used.

#include <array>
#include <complex>
#include <optional>
#include <string>

namespace rydgate::gate {

using complex = std::complex<double>;

enum class Label { c00, c01, c10, c11 };
inline constexpr std::array<Label, 4> kLabels{Label::c00, Label::c01, Label::c10, Label::c11};
std::string to_string(Label label);

/// <r| exp(-i H t) |r> for H = [[delta_r - i gamma_r/2, omega/2], [omega/2, delta_p - i gamma_p/2]]
/// in the {|r>, |p>} basis. A resonant pulse of duration 2pi/omega returns -1.
/// Closed form, stable for arbitrarily large detunings.
complex two_level_pulse(double omega_mu, double delta_p, double delta_r, double gamma_r, double gamma_p,
                        double duration);

/// The same amplitude from adaptive Dormand-Prince integration of the
/// Schroedinger equation; used as an independent cross-check.
complex two_level_pulse_ode(double omega_mu, double delta_p, double delta_r, double gamma_r, double gamma_p,
                            double duration, double tolerance = 1e-12);

struct GateParams {
    int n = 70;
    double omega_mu = 0.0;   // rad/s
    double omega_c = 0.0;    // rad/s
    double omega_eit = 0.0;  // rad/s; 0 means "same as omega_c"
    double d_far_um = 0.0;   // 0 means d_far_factor * d11
    double d_far_factor = 5.0;
    double temperature_k = 1e-7;  // atomic motion (dephasing)
    double q = 0.2;               // site waist over R_b6
    double lambda_sw_um = 1.25;   // spin-wave wavelength
    double eta_c = 0.9;           // per-site storage efficiency
    /// Blackbody temperature for the Rydberg decay rates; unset means temperature_k.
    std::optional<double> environment_temperature_k;
    double gamma_r = 0.0;         // s^-1, target |r>
    double gamma_rp = 0.0;        // s^-1, control |r'>
    double gamma_p = 0.0;         // s^-1, target |p>
    double c3_hz_um3 = 0.0;       // |r' p> exchange
    double c6_hz_um6 = 0.0;       // |r' r> van der Waals, signed

    double effective_omega_eit() const { return omega_eit > 0.0 ? omega_eit : omega_c; }
    double d_far(double d11_um) const { return d_far_um > 0.0 ? d_far_um : d_far_factor * d11_um; }
    double lifetime_temperature_k() const { return environment_temperature_k.value_or(temperature_k); }
    /// Throws InvalidArgument for negative rates, q < 0, eta_c outside [0, 1], non-positive omega_mu.
    void validate() const;
};

struct ComponentAmplitude {
    Label label = Label::c00;
    complex amplitude;
};

struct GateResult {
    std::array<ComponentAmplitude, 4> amplitudes;
    double f0 = 0.0;
    double pulse_time = 0.0;  // s
    double d11_um = 0.0;
};

double pulse_time(double omega_mu);

/// |a00 + a01 + a10 - a11|^2 / 16.
double fidelity_f0(const complex& a00, const complex& a01, const complex& a10, const complex& a11);

/// Target amplitude for one basis component with the control excitation at
/// distance d (d11 for |11>, d_far otherwise). Includes the control's spectator
/// decay exp(-gamma_rp t / 2).
ComponentAmplitude component_evolution(Label label, const GateParams& params, double d_um);

GateResult gate_fidelity_pointwise(const GateParams& params, double d11_um);

}  // namespace rydgate::gate
