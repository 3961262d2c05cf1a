#include "rydgate/gate.hpp"

#include "rydgate/error.hpp"
#include "rydgate/units.hpp"

#include <boost/numeric/odeint.hpp>

#include <cmath>

namespace rydgate::gate {

std::string to_string(Label label) {
    switch (label) {
        case Label::c00: return "00";
        case Label::c01: return "01";
        case Label::c10: return "10";
        case Label::c11: return "11";
    }
    return "?";
}

complex two_level_pulse(double omega_mu, double delta_p, double delta_r, double gamma_r, double gamma_p,
                        double duration) {
    if (!(duration > 0.0)) throw InvalidArgument("pulse duration must be positive");
    const complex i{0.0, 1.0};
    const complex a{delta_r, -0.5 * gamma_r};
    const complex c{delta_p, -0.5 * gamma_p};
    const double b = 0.5 * omega_mu;
    const complex d = 0.5 * (a - c);
    const double t = duration;

    // U_rr = e^{-iat} e^{iDt} [cos Wt - i (D/W) sin Wt], W^2 = D^2 + b^2.
    complex w = std::sqrt(d * d + b * b);
    if (std::abs(d + w) < std::abs(d - w)) w = -w;
    const complex phase_r = std::exp(-i * a * t);

    if (std::abs(w * t) < 1e-4) {
        const complex z = w * t;
        const complex z2 = z * z;
        const complex cos_wt = 1.0 - z2 / 2.0 + z2 * z2 / 24.0;
        const complex sinc_t = t * (1.0 - z2 / 6.0 + z2 * z2 / 120.0);  // sin(Wt)/W
        return phase_r * std::exp(i * d * t) * (cos_wt - i * d * sinc_t);
    }
    // Expanded in e^{i(D+W)t} and e^{i(D-W)t}, with D - W = -b^2/(D+W) computed without cancellation.
    const complex sum = d + w;
    const complex slow = -b * b / sum;
    const complex small_weight = b * b / (w * sum);  // 1 - D/W
    const complex large_weight = 1.0 + d / w;
    return phase_r * 0.5 * (small_weight * std::exp(i * sum * t) + large_weight * std::exp(i * slow * t));
}

complex two_level_pulse_ode(double omega_mu, double delta_p, double delta_r, double gamma_r, double gamma_p,
                            double duration, double tolerance) {
    if (!(duration > 0.0)) throw InvalidArgument("pulse duration must be positive");
    using State = std::array<double, 4>;  // Re c_r, Im c_r, Re c_p, Im c_p
    // Time in units of the pulse duration keeps the step controller well scaled.
    const double s = duration;
    const double b = 0.5 * omega_mu * s;
    const double dr = delta_r * s, dp = delta_p * s, gr = 0.5 * gamma_r * s, gp = 0.5 * gamma_p * s;
    auto rhs = [=](const State& y, State& dy, double) {
        // i dc/dt = H c
        const complex cr{y[0], y[1]};
        const complex cp{y[2], y[3]};
        const complex i{0.0, 1.0};
        const complex dcr = -i * (complex{dr, -gr} * cr + b * cp);
        const complex dcp = -i * (b * cr + complex{dp, -gp} * cp);
        dy = {dcr.real(), dcr.imag(), dcp.real(), dcp.imag()};
    };
    namespace odeint = boost::numeric::odeint;
    State y{1.0, 0.0, 0.0, 0.0};
    const double fastest = std::abs(b) + std::abs(dr) + std::abs(dp) + gr + gp + 1.0;
    odeint::integrate_adaptive(odeint::make_controlled(tolerance, tolerance, odeint::runge_kutta_dopri5<State>()),
                               rhs, y, 0.0, 1.0, 0.01 / fastest);
    return {y[0], y[1]};
}

void GateParams::validate() const {
    if (!(omega_mu > 0.0)) throw InvalidArgument("Omega_mu must be positive");
    if (omega_c < 0.0 || omega_eit < 0.0) throw InvalidArgument("Omega_c and Omega must be >= 0");
    if (gamma_r < 0.0 || gamma_rp < 0.0 || gamma_p < 0.0) throw InvalidArgument("decay rates must be >= 0");
    if (q < 0.0) throw InvalidArgument("q must be >= 0");
    if (eta_c < 0.0 || eta_c > 1.0) throw InvalidArgument("eta_c must lie in [0, 1]");
    if (temperature_k < 0.0 || lifetime_temperature_k() < 0.0) throw InvalidArgument("temperatures must be >= 0");
    if (!(lambda_sw_um > 0.0)) throw InvalidArgument("spin-wave wavelength must be positive");
    if (d_far_um < 0.0 || !(d_far_factor > 0.0)) throw InvalidArgument("d_far must be positive");
}

double pulse_time(double omega_mu) {
    if (!(omega_mu > 0.0)) throw InvalidArgument("Omega_mu must be positive");
    return units::two_pi / omega_mu;
}

double fidelity_f0(const complex& a00, const complex& a01, const complex& a10, const complex& a11) {
    return std::norm(a00 + a01 + a10 - a11) / 16.0;
}

ComponentAmplitude component_evolution(Label label, const GateParams& params, double d_um) {
    if (!(d_um > 0.0)) throw InvalidArgument("control-target distance must be positive");
    const double t = pulse_time(params.omega_mu);
    const double d3 = d_um * d_um * d_um;
    const double delta_p = units::two_pi * params.c3_hz_um3 / d3;
    const double delta_r = units::two_pi * params.c6_hz_um6 / (d3 * d3);
    const complex target = two_level_pulse(params.omega_mu, delta_p, delta_r, params.gamma_r, params.gamma_p, t);
    return {label, target * std::exp(-0.5 * params.gamma_rp * t)};
}

GateResult gate_fidelity_pointwise(const GateParams& params, double d11_um) {
    params.validate();
    GateResult out;
    out.pulse_time = pulse_time(params.omega_mu);
    out.d11_um = d11_um;
    const double d_far = params.d_far(d11_um);
    for (std::size_t k = 0; k < kLabels.size(); ++k) {
        const Label label = kLabels[k];
        out.amplitudes[k] = component_evolution(label, params, label == Label::c11 ? d11_um : d_far);
    }
    out.f0 = fidelity_f0(out.amplitudes[0].amplitude, out.amplitudes[1].amplitude, out.amplitudes[2].amplitude,
                         out.amplitudes[3].amplitude);
    return out;
}

}  // namespace rydgate::gate
