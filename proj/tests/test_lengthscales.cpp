#include "rydgate/error.hpp"
#include "rydgate/lengthscales.hpp"
#include "rydgate/units.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace rydgate;
using namespace rydgate::lengthscales;

namespace {
const Atom& rb() {
    static const Atom atom(qdt::Species::rubidium87());
    return atom;
}
const double kMHz = units::mhz_to_rad_per_s(1.0);
}  // namespace

TEST_CASE("blockade radii scale with the Rabi frequencies") {
    const auto a = blockade_radii(10e9, 300e9, kMHz, kMHz);
    const auto b = blockade_radii(10e9, 300e9, 64 * kMHz, 64 * kMHz);
    CHECK(a.r_b6_um / b.r_b6_um == Catch::Approx(2.0));
    CHECK(a.r_b3_um / b.r_b3_um == Catch::Approx(4.0));
    CHECK(a.r_mu_um == Catch::Approx(a.r_b6_um));
    const auto c = blockade_radii(10e9, -300e9, 10 * kMHz, kMHz);
    CHECK(c.c6_negative);
    CHECK(c.r_mu_um > c.r_b6_um);
    CHECK(c.window_low_um() == c.r_mu_um);
    CHECK_THROWS_AS(blockade_radii(0.0, 1.0, kMHz, kMHz), InvalidArgument);
    CHECK_THROWS_AS(blockade_radii(1.0, 1.0, 0.0, kMHz), InvalidArgument);
}

TEST_CASE("C3 shift equals the microwave Rabi frequency at R_b3") {
    const auto r = blockade_radii(11.5e9, 280e9, kMHz, 0.4 * kMHz);
    const double shift = units::two_pi * 11.5e9 / std::pow(r.r_b3_um, 3);
    CHECK(shift == Catch::Approx(0.4 * kMHz).epsilon(1e-12));
    const double vdw = units::two_pi * 280e9 / std::pow(r.r_mu_um, 6);
    CHECK(vdw == Catch::Approx(0.4 * kMHz).epsilon(1e-12));
}

TEST_CASE("n = 70 lengthscales") {
    const auto sys = system_coefficients(rb(), 70, 0.0);
    CHECK(sys.levels.r == qdt::RydbergLevel::make(71, 0, 0.5));
    CHECK(sys.levels.r_prime == qdt::RydbergLevel::make(70, 0, 0.5));
    CHECK(sys.levels.p == qdt::RydbergLevel::make(70, 1, 0.5));
    const auto r = blockade_radii(sys.c3_hz_um3, sys.c6_hz_um6(), kMHz, kMHz);
    CHECK(r.r_b6_um == Catch::Approx(7.0).epsilon(0.3));
    CHECK(r.r_b3_um == Catch::Approx(20.0).epsilon(0.3));
    CHECK(r.r_b3_um / r.r_b6_um > 2.0);
    CHECK(r.r_b3_um / r.r_b6_um < 4.0);
    CHECK(sys.gamma_max() == std::max({sys.gamma_r, sys.gamma_r_prime, sys.gamma_p}));
}

TEST_CASE("figure of merit is built from its parts") {
    const auto m = figure_of_merit(rb(), 70, 0.0);
    const auto sys = system_coefficients(rb(), 70, 0.0);
    CHECK(m.merit == Catch::Approx(merit_value(sys.c3_hz_um3, sys.c6_hz_um6(), sys.gamma_max())));
    CHECK(m.merit == Catch::Approx(units::two_pi * m.c3_hz_um3 * m.c3_hz_um3 / (std::abs(m.c6_hz_um6) * m.gamma_used)));
    // Dimensionless: expressing C3, C6 in atomic units and Gamma in E_h/hbar gives the same number.
    const double c3_au = m.c3_hz_um3 / units::c3_au_to_hz_um3;
    const double c6_au = m.c6_hz_um6 / units::c6_au_to_hz_um6;
    const double gamma_au = m.gamma_used / (units::two_pi * units::hartree_hz);
    CHECK(c3_au * c3_au / (std::abs(c6_au) * gamma_au) == Catch::Approx(m.merit).epsilon(1e-10));
    CHECK(m.merit > 1e4);
    CHECK(figure_of_merit(rb(), 70, 300.0).merit < m.merit);
}

TEST_CASE("radii scan flags resonances instead of throwing") {
    const auto rows = radii_scan(rb(), {37, 38, 39}, kMHz, {}, 2);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].n == 37);
    CHECK(rows[1].resonance);
    CHECK_FALSE(rows[1].r_b6_cross_um);
    CHECK(rows[1].r_b3_um);
    CHECK_FALSE(rows[0].resonance);
    CHECK(rows[0].r_b6_cross_um);
    const auto serial = radii_scan(rb(), {37, 38, 39}, kMHz, {}, 1);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].r_b6_cross_um == serial[i].r_b6_cross_um);
        CHECK(rows[i].r_b3_um == serial[i].r_b3_um);
    }
    const auto merit = merit_scan(rb(), {38, 50}, 0.0);
    CHECK(merit[0].resonance);
    CHECK(merit[1].point);
}

TEST_CASE("R_b3 exceeds R_b6 at high n; same-level curve is finite through 38") {
    const auto rows = radii_scan(rb(), {38, 50, 60, 70, 80, 90, 100}, kMHz, {}, 4);
    CHECK(rows[0].r_b6_same_um);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        REQUIRE(rows[i].r_b6_cross_um);
        CHECK(*rows[i].r_b3_um > *rows[i].r_b6_cross_um);
    }
}

TEST_CASE("figure of merit against n depends on the C6 branch") {
    pair::ChannelOptions mean;
    mean.branch = pair::C6Branch::mean;
    const auto m = merit_scan(rb(), {40, 55, 70, 85, 100}, 0.0, mean, 4);
    for (std::size_t i = 1; i < m.size(); ++i) {
        REQUIRE(m[i].point);
        CHECK(m[i].point->merit > m[i - 1].point->merit);
    }
    // Weak growth compared with the n^4 of C3^2 alone.
    const double slope = std::log(m.back().point->merit / m.front().point->merit) / std::log(100.0 / 40.0);
    CHECK(slope > 0.0);
    CHECK(slope < 3.0);

    // The weakest eigen-branch of the pair manifold grows faster with n than the direct shift.
    const auto s = merit_scan(rb(), {40, 100}, 0.0, {}, 2);
    CHECK(s[1].point->merit < s[0].point->merit);
}
