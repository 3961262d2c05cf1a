#include "rydgate/error.hpp"
#include "rydgate/gate.hpp"
#include "rydgate/lengthscales.hpp"
#include "rydgate/units.hpp"

#include <catch_amalgamated.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <random>

using namespace rydgate;
using namespace rydgate::gate;

namespace {

const double kMHz = units::mhz_to_rad_per_s(1.0);

// Generalized Rabi formula, written out independently of the library.
complex rabi_oracle(double omega, double dp, double dr, double gr, double gp, double t) {
    const complex h11(dr, -gr / 2), h22(dp, -gp / 2);
    const complex mean = (h11 + h22) / 2.0, half = (h11 - h22) / 2.0;
    const complex w = std::sqrt(half * half + omega * omega / 4.0);
    const complex i(0, 1);
    return std::exp(-i * mean * t) * (std::cos(w * t) - i * half * std::sin(w * t) / w);
}

GateParams ideal(double c3 = 0.0) {
    GateParams p;
    p.omega_mu = kMHz;
    p.omega_c = 10 * kMHz;
    p.c3_hz_um3 = c3;
    return p;
}

}  // namespace

TEST_CASE("resonant 2pi pulse returns -1") {
    const auto a = two_level_pulse(kMHz, 0, 0, 0, 0, 1e-6);
    CHECK(std::abs(a - complex(-1.0, 0.0)) < 1e-9);
    CHECK(pulse_time(kMHz) == Catch::Approx(1e-6));
}

TEST_CASE("decoupled decay is exact") {
    const double gr = 3e4, dr = 2e5, t = 2e-6;
    const auto a = two_level_pulse(0.0, 1e6, dr, gr, 1e3, t);
    const auto exact = std::exp(complex(-gr * t / 2, -dr * t));
    CHECK(std::abs(a - exact) < 1e-14);
}

TEST_CASE("closed form agrees with the generalized Rabi formula") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> det(-8.0, 8.0), gam(0.0, 1.0);
    for (int k = 0; k < 1000; ++k) {
        const double dp = det(rng), dr = det(rng), gr = gam(rng), gp = gam(rng);
        const double t = 2 * units::pi;
        CHECK(std::abs(two_level_pulse(1.0, dp, dr, gr, gp, t) - rabi_oracle(1.0, dp, dr, gr, gp, t)) < 1e-6);
    }
    // delta_p / Omega_mu = 20.
    CHECK(std::abs(two_level_pulse(kMHz, 20 * kMHz, 0, 0, 0, 1e-6) - rabi_oracle(kMHz, 20 * kMHz, 0, 0, 0, 1e-6)) < 1e-6);
    // Exceptional point (W = 0), where the textbook formula is 0/0: compare with the integrator.
    CHECK(std::abs(two_level_pulse(1.0, 0.5, 0.5, 1.0, 3.0, 6.0) - two_level_pulse_ode(1.0, 0.5, 0.5, 1.0, 3.0, 6.0)) < 1e-8);
    CHECK(std::abs(two_level_pulse(1.0, 0.5, 0.5 + 1e-7, 1.0, 3.0, 6.0) - two_level_pulse(1.0, 0.5, 0.5, 1.0, 3.0, 6.0)) < 1e-6);
}

TEST_CASE("closed form stays bounded for huge detunings") {
    for (double dp : {1e6, 1e9, 1e12, 1e15}) {
        const auto a = two_level_pulse(1.0, dp, 0.0, 0.0, 0.0, 2 * units::pi);
        CHECK(std::abs(a) == Catch::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(a - 1.0) < 10.0 / dp + 1e-12);
    }
}

TEST_CASE("closed form and adaptive integration agree") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> det(-5.0, 5.0), gam(0.0, 0.5);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const double dp = det(rng), dr = det(rng), gr = gam(rng), gp = gam(rng);
        const double t = 2 * units::pi;
        worst = std::max(worst, std::abs(two_level_pulse(1.0, dp, dr, gr, gp, t) - two_level_pulse_ode(1.0, dp, dr, gr, gp, t)));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("fidelity limits") {
    SECTION("blockade off gives 1/4") {
        const auto r = gate_fidelity_pointwise(ideal(0.0), 10.0);
        CHECK(r.f0 == Catch::Approx(0.25).margin(1e-9));
        for (const auto& a : r.amplitudes) CHECK(std::abs(a.amplitude + 1.0) < 1e-9);
        CHECK(r.pulse_time == Catch::Approx(1e-6));
    }
    SECTION("ideal blockade gives 1") {
        auto p = ideal(1e30);
        p.d_far_um = 1e30;
        const auto r = gate_fidelity_pointwise(p, 10.0);
        CHECK(r.f0 == Catch::Approx(1.0).margin(1e-9));
        CHECK(std::abs(r.amplitudes[3].amplitude - 1.0) < 1e-9);
    }
    SECTION("global phase does not matter") {
        const complex ph = std::polar(1.0, 0.7);
        const complex a(0.3, -0.9), b(-0.8, 0.1), c(-0.99, 0.0), d(0.95, 0.2);
        CHECK(fidelity_f0(ph * a, ph * b, ph * c, ph * d) == Catch::Approx(fidelity_f0(a, b, c, d)));
    }
}

TEST_CASE("amplitude moduli") {
    // Without decay the only loss from |r> is population left in |p>: modulus 1 for a
    // completed rotation (unshifted or fully blocked), below 1 in between.
    auto p = ideal(11e9);
    p.c6_hz_um6 = 280e9;
    CHECK(std::abs(component_evolution(Label::c00, p, 1e4).amplitude) == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(component_evolution(Label::c11, p, 1.0).amplitude) == Catch::Approx(1.0).epsilon(1e-6));
    for (double d : {6.0, 9.0, 12.0, 20.0, 40.0}) CHECK(std::abs(component_evolution(Label::c11, p, d).amplitude) <= 1.0 + 1e-12);
    p.gamma_p = 1e3;
    CHECK(std::abs(component_evolution(Label::c00, p, 1e4).amplitude) < 1.0);
    p.gamma_p = 0.0;
    p.gamma_rp = 1e3;
    CHECK(std::abs(component_evolution(Label::c00, p, 60.0).amplitude) == Catch::Approx(std::exp(-0.5e3 * 1e-6)));
}

TEST_CASE("component 11 at n = 70 matches the oracle") {
    const qdt::Atom atom(qdt::Species::rubidium87());
    const auto sys = lengthscales::system_coefficients(atom, 70, 0.0);
    auto p = ideal(sys.c3_hz_um3);
    p.c6_hz_um6 = sys.c6_hz_um6();
    const double d = 12.0;
    const double dp = units::two_pi * sys.c3_hz_um3 / std::pow(d, 3);
    const double dr = units::two_pi * sys.c6_hz_um6() / std::pow(d, 6);
    const auto a = component_evolution(Label::c11, p, d).amplitude;
    CHECK(std::abs(a - rabi_oracle(kMHz, dp, dr, 0, 0, 1e-6)) < 1e-6);
    CHECK(to_string(Label::c11) == "11");
}

TEST_CASE("hard-blockade infidelity falls off as (Omega_mu / delta_p)^2") {
    // Only |11> is shifted; the residual light shift and leakage both enter 1 - f0 at second order.
    std::vector<double> xs, ys;
    for (double ratio : {10.0, 31.6, 100.0, 316.0, 1000.0}) {
        auto p = ideal(1.0);
        p.d_far_um = 1e30;
        const double d = 10.0;
        p.c3_hz_um3 = ratio * p.omega_mu / units::two_pi * d * d * d;
        xs.push_back(std::log(ratio));
        ys.push_back(std::log(1.0 - gate_fidelity_pointwise(p, d).f0));
    }
    const double slope = (ys.back() - ys.front()) / (xs.back() - xs.front());
    CHECK(slope == Catch::Approx(-2.0).margin(0.1));
}

TEST_CASE("f0 never increases with any decay rate") {
    auto base = ideal(11e9);
    base.c6_hz_um6 = 280e9;
    for (double d : {8.0, 12.0, 18.0}) {
        for (double GateParams::*field : {&GateParams::gamma_r, &GateParams::gamma_rp, &GateParams::gamma_p}) {
            double prev = 2.0;
            for (double g : {0.0, 1e2, 1e3, 1e4, 1e5}) {
                auto p = base;
                p.*field = g;
                const double f = gate_fidelity_pointwise(p, d).f0;
                CHECK(f <= prev + 1e-12);
                prev = f;
            }
        }
    }
}

TEST_CASE("non-Hermitian evolution matches a Lindblad master equation") {
    // Levels r, p and a sink g fed by both decays.
    const double omega = 1.0, dp = 0.7, dr = -0.3, gr = 0.2, gp = 0.35, t = 2 * units::pi;
    using M = Eigen::Matrix3cd;
    M h = M::Zero();
    h(0, 0) = dr;
    h(1, 1) = dp;
    h(0, 1) = h(1, 0) = omega / 2;
    M l1 = M::Zero(), l2 = M::Zero();
    l1(2, 0) = std::sqrt(gr);
    l2(2, 1) = std::sqrt(gp);
    const complex i(0, 1);
    auto rhs = [&](const M& rho) {
        M out = -i * (h * rho - rho * h);
        for (const M* l : {&l1, &l2}) {
            out += (*l) * rho * l->adjoint() - 0.5 * (l->adjoint() * (*l) * rho + rho * l->adjoint() * (*l));
        }
        return out;
    };
    M rho = M::Zero();
    rho(0, 0) = 1.0;
    const int steps = 20000;
    const double dt = t / steps;
    for (int k = 0; k < steps; ++k) {
        const M k1 = rhs(rho), k2 = rhs(rho + 0.5 * dt * k1), k3 = rhs(rho + 0.5 * dt * k2), k4 = rhs(rho + dt * k3);
        rho += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    const auto a = two_level_pulse(omega, dp, dr, gr, gp, t);
    CHECK(rho(0, 0).real() == Catch::Approx(std::norm(a)).epsilon(1e-9));
    CHECK(std::abs(rho(0, 0).imag()) < 1e-12);
}

TEST_CASE("parameter validation") {
    auto p = ideal();
    CHECK_NOTHROW(p.validate());
    p.omega_mu = 0.0;
    CHECK_THROWS_AS(p.validate(), InvalidArgument);
    p = ideal();
    p.eta_c = 1.5;
    CHECK_THROWS_AS(p.validate(), InvalidArgument);
    p = ideal();
    p.gamma_r = -1.0;
    CHECK_THROWS_AS(p.validate(), InvalidArgument);
    p = ideal();
    CHECK(p.d_far(10.0) == 50.0);
    CHECK(p.effective_omega_eit() == p.omega_c);
    CHECK(p.lifetime_temperature_k() == p.temperature_k);
    CHECK_THROWS_AS(component_evolution(Label::c11, p, 0.0), InvalidArgument);
}
