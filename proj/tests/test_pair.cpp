#include "rydgate/error.hpp"
#include "rydgate/pair.hpp"
#include "rydgate/units.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

using namespace rydgate;
using namespace rydgate::pair;
using qdt::RydbergLevel;

namespace {
const qdt::Atom& rb() {
    static const qdt::Atom atom(qdt::Species::rubidium87());
    return atom;
}
RydbergLevel S(int n) { return RydbergLevel::make(n, 0, 0.5); }
}  // namespace

TEST_CASE("C6 unit conversion round-trips") {
    for (double c6_ghz : {1e-3, 280.68, 1.3e4}) {
        const double hz = c6_ghz * 1e9;
        CHECK(c6_au_to_hz_um6(c6_hz_um6_to_au(hz)) == Catch::Approx(hz).epsilon(1e-12));
    }
    // 1 au of C6 is about 1.44e-19 GHz um^6... check the order via a0^6 E_h.
    CHECK(c6_au_to_hz_um6(1.0) == Catch::Approx(units::hartree_hz * std::pow(units::bohr_radius_um, 6)));
}

TEST_CASE("C6 of (70S, 71S)") {
    const auto c6 = c6_coefficient(rb(), {S(70), S(71), 0});
    // Repulsive, a few hundred GHz um^6 on the weakest branch.
    CHECK(c6.c6_hz_um6 > 100e9);
    CHECK(c6.c6_hz_um6 < 1000e9);
    REQUIRE(c6.c6_branches_hz_um6.size() == 4);
    CHECK(std::is_sorted(c6.c6_branches_hz_um6.begin(), c6.c6_branches_hz_um6.end()));
    CHECK(c6.c6_hz_um6 == Catch::Approx(c6.c6_branches_hz_um6.front()).epsilon(1e-12));
    double mean = 0.0;
    for (double b : c6.c6_branches_hz_um6) mean += b / 4.0;
    CHECK(c6.c6_direct_hz_um6 == Catch::Approx(mean).epsilon(1e-10));
    double sum = 0.0;
    for (const auto& ch : c6.channels) sum += ch.c6_contribution_hz_um6;
    CHECK(sum == Catch::Approx(c6.c6_hz_um6).epsilon(1e-9));

    ChannelOptions largest;
    largest.branch = C6Branch::largest;
    CHECK(c6_coefficient(rb(), {S(70), S(71), 0}, largest).c6_hz_um6 ==
          Catch::Approx(c6.c6_branches_hz_um6.back()).epsilon(1e-12));
    ChannelOptions mean_branch;
    mean_branch.branch = parse_c6_branch("mean");
    CHECK(c6_coefficient(rb(), {S(70), S(71), 0}, mean_branch).c6_hz_um6 == Catch::Approx(c6.c6_direct_hz_um6));
    CHECK_THROWS_AS(parse_c6_branch("median"), InvalidArgument);
    CHECK(to_string(C6Branch::smallest) == "smallest");
}

TEST_CASE("C6 is symmetric under exchanging the atoms") {
    for (int n : {50, 70}) {
        const double ab = c6_coefficient(rb(), {S(n), S(n + 1), 0}).c6_hz_um6;
        const double ba = c6_coefficient(rb(), {S(n + 1), S(n), 0}).c6_hz_um6;
        CHECK(ab == Catch::Approx(ba).epsilon(1e-9));
    }
}

TEST_CASE("C6 truncation converges") {
    ChannelOptions narrow;
    narrow.max_delta_n = 1;
    const double c1 = c6_coefficient(rb(), {S(70), S(71), 0}, narrow).c6_hz_um6;
    const double c5 = c6_coefficient(rb(), {S(70), S(71), 0}).c6_hz_um6;
    CHECK(std::abs(c1 / c5 - 1.0) < 0.10);
}

TEST_CASE("C6 grows roughly as n^11") {
    const double c50 = c6_coefficient(rb(), {S(50), S(50), 0}).c6_hz_um6;
    const double c80 = c6_coefficient(rb(), {S(80), S(80), 0}).c6_hz_um6;
    const double slope = std::log(c80 / c50) / std::log(80.0 / 50.0);
    CHECK(slope > 9.5);
    CHECK(slope < 12.5);
}

TEST_CASE("Förster resonance of (38S, 39S)") {
    CHECK_THROWS_AS(c6_coefficient(rb(), {S(38), S(39), 0}), ResonanceError);
    const auto channels = forster_channels(rb(), {S(38), S(39), 0});
    const auto it = std::find_if(channels.begin(), channels.end(), [](const auto& c) { return c.resonant; });
    REQUIRE(it != channels.end());
    CHECK(it->final_state.a == RydbergLevel::make(38, 1, 1.5));
    CHECK(it->final_state.b == RydbergLevel::make(38, 1, 1.5));
    CHECK(std::abs(it->defect_hz) < 10e6);
    // The same defect changes sign between n = 38 and 39 family members... and is far away elsewhere.
    auto defect = [](int n) {
        const auto p = RydbergLevel::make(n, 1, 1.5);
        return 2 * rb().energy(p) - rb().energy(S(n)) - rb().energy(S(n + 1));
    };
    CHECK(defect(37) * defect(40) < 0.0);
    // The near-resonant channel dominates the direct shift.
    ChannelOptions loose;
    loose.resonance_threshold_hz = 1e6;
    loose.branch = C6Branch::mean;
    CHECK(std::abs(c6_coefficient(rb(), {S(38), S(39), 0}, loose).c6_hz_um6) >
          10.0 * std::abs(c6_coefficient(rb(), {S(36), S(37), 0}, loose).c6_hz_um6));
}

TEST_CASE("channel list ordering is deterministic") {
    ChannelOptions o;
    o.max_delta_n = 4;
    auto channels = forster_channels(rb(), {S(70), S(71), 0}, o);
    REQUIRE_FALSE(channels.empty());
    const auto original = channels;
    std::stable_sort(channels.begin(), channels.end(),
                     [](const auto& a, const auto& b) { return a.defect_hz < b.defect_hz; });
    std::stable_sort(channels.begin(), channels.end(), [](const auto& a, const auto& b) {
        return std::abs(a.c6_contribution_hz_um6) > std::abs(b.c6_contribution_hz_um6);
    });
    REQUIRE(channels.size() == original.size());
    for (std::size_t i = 0; i < channels.size(); ++i) CHECK(channels[i].final_state.label() == original[i].final_state.label());

    ChannelOptions none;
    none.max_delta_n = 0;
    none.max_l = 0;
    CHECK(forster_channels(rb(), {S(70), S(71), 0}, none).empty());
}

TEST_CASE("C3 of (70S, 70P1/2)") {
    const auto c3 = c3_coefficient(rb(), S(70), RydbergLevel::make(70, 1, 0.5));
    CHECK(c3.c3_hz_um3 > 5e9);
    CHECK(c3.c3_hz_um3 < 20e9);
    CHECK(c3.c3_hz_um3 == Catch::Approx(std::abs(c3.branches.front())).epsilon(1e-12));
    CHECK_THROWS_AS(c3_coefficient(rb(), S(70), S(71)), InvalidArgument);
}

TEST_CASE("pair-Hamiltonian oracle reproduces C3 and C6") {
    const auto p = RydbergLevel::make(70, 1, 0.5);
    const auto c3 = c3_coefficient(rb(), S(70), p);
    for (double d : {15.0, 30.0}) {
        const auto shift = pair_hamiltonian_shift(rb(), {S(70), p, 0}, d, {2, 2, 0.0});
        double largest = 0.0;
        for (double s : shift.shifts_hz) largest = std::max(largest, std::abs(s) * d * d * d);
        CHECK(largest == Catch::Approx(c3.c3_hz_um3).epsilon(0.05));
    }

    const auto c6 = c6_coefficient(rb(), {S(60), S(61), 0});
    const double rb6 = std::pow(c6.c6_hz_um6 / 1e6, 1.0 / 6.0);
    for (double k : {2.0, 4.0}) {
        const double d = k * rb6;
        const auto shift = pair_hamiltonian_shift(rb(), {S(60), S(61), 0}, d, {2, 2, 0.0});
        REQUIRE(shift.shifts_hz.size() == c6.c6_branches_hz_um6.size());
        for (std::size_t i = 0; i < shift.shifts_hz.size(); ++i) {
            CHECK(shift.shifts_hz[i] * std::pow(d, 6) == Catch::Approx(c6.c6_branches_hz_um6[i]).epsilon(0.10));
        }
        CHECK(shift.min_overlap > 0.9);
    }

    const auto far = pair_hamiltonian_shift(rb(), {S(60), S(61), 0}, 1000.0, {1, 1, 0.0});
    for (double s : far.shifts_hz) CHECK(std::abs(s) < 1.0);
    CHECK_THROWS_AS(pair_hamiltonian_shift(rb(), {S(60), S(61), 0}, 0.0), InvalidArgument);
}

TEST_CASE("C3 of (50S, 50P1/2) from the 1/d^3 branch") {
    const auto s = S(50), p = RydbergLevel::make(50, 1, 0.5);
    const auto c3 = c3_coefficient(rb(), s, p);
    // Fit of the largest branch over d in [15, 30] um: shift = C3/d^3 on a log-log line of slope -3.
    std::vector<double> ld, ls;
    for (double d : {15.0, 20.0, 25.0, 30.0}) {
        const auto shift = pair_hamiltonian_shift(rb(), {s, p, 0}, d, {2, 2, 0.0});
        double largest = 0.0;
        for (double v : shift.shifts_hz) largest = std::max(largest, std::abs(v));
        ld.push_back(std::log(d));
        ls.push_back(std::log(largest));
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < ld.size(); ++i) mx += ld[i] / ld.size(), my += ls[i] / ls.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < ld.size(); ++i) sxy += (ld[i] - mx) * (ls[i] - my), sxx += (ld[i] - mx) * (ld[i] - mx);
    const double slope = sxy / sxx;
    CHECK(slope == Catch::Approx(-3.0).margin(0.02));
    CHECK(std::exp(my + 3.0 * mx) == Catch::Approx(c3.c3_hz_um3).epsilon(0.05));
}

TEST_CASE("dropping negligible channels leaves C6 unchanged") {
    const auto c6 = c6_coefficient(rb(), {S(70), S(71), 0});
    double kept = 0.0;
    for (const auto& ch : c6.channels) {
        if (std::abs(ch.c6_contribution_hz_um6) >= 1e-6 * std::abs(c6.c6_hz_um6)) kept += ch.c6_contribution_hz_um6;
    }
    CHECK(std::abs(kept / c6.c6_hz_um6 - 1.0) < 1e-4);
}
