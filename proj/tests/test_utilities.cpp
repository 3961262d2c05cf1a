#include "rydgate/config.hpp"
#include "rydgate/csv.hpp"
#include "rydgate/error.hpp"
#include "rydgate/svg.hpp"
#include "rydgate/sweep.hpp"
#include "rydgate/units.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <limits>

using namespace rydgate;

TEST_CASE("csv formatting and round trip") {
    CHECK(csv::format_number(1.0) == "1.00000000000e+00");
    CHECK(csv::format_number(-0.000123456789012345) == "-1.23456789012e-04");
    CHECK(csv::format_number(std::nan("")) == "nan");
    CHECK(csv::format_int(-42) == "-42");

    csv::Table t{{"a", "b,c", "d"}, {{"1", "x \"quoted\"", ""}, {"2", "multi\nline", "z"}}};
    const auto text = csv::to_string(t);
    CHECK(text.rfind("a,\"b,c\",d\n", 0) == 0);
    CHECK(csv::parse(text) == t);
    CHECK_THROWS_AS(csv::parse("a,b\n1,2,3\n"), DataError);
    CHECK_THROWS_AS(csv::parse("a,b\n\"open,2\n"), DataError);

    const auto path = (std::filesystem::temp_directory_path() / "rydgate_csv_test.csv").string();
    csv::write_file(path, t);
    CHECK(csv::read_file(path) == t);
    std::filesystem::remove(path);
}

TEST_CASE("svg rendering is deterministic and handles gaps") {
    svg::Plot plot;
    plot.title = "radii <test> & more";
    plot.x_label = "n";
    plot.y_label = "um";
    plot.log_y = true;
    plot.series.push_back({"a", {{30, 2.0}, {31, std::numeric_limits<double>::quiet_NaN()}, {32, 3.0}, {33, 4.0}}});
    plot.series.push_back({"b", {{30, 5.0}, {33, 9.0}}, "#d62728", true, true});
    plot.markers.push_back({31.0, "flagged"});
    const auto s1 = svg::render(plot);
    CHECK(s1 == svg::render(plot));
    CHECK(s1.rfind("<svg", 0) == 0);
    CHECK(s1.find("&lt;test&gt; &amp; more") != std::string::npos);
    CHECK(s1.find("nan") == std::string::npos);
    CHECK(s1.find("stroke-dasharray") != std::string::npos);
    CHECK(s1.find("flagged") != std::string::npos);
    svg::Plot empty;
    CHECK_NOTHROW(svg::render(empty));
}

TEST_CASE("sweep value grammar") {
    CHECK(sweep::parse_values("1,2,5") == std::vector<double>{1, 2, 5});
    CHECK(sweep::parse_values("0.1:0.5:0.1").size() == 5);
    const auto lg = sweep::parse_values("log:0.01:10:4");
    REQUIRE(lg.size() == 4);
    CHECK(lg[0] == Catch::Approx(0.01));
    CHECK(lg[1] == Catch::Approx(0.1));
    CHECK(lg[3] == Catch::Approx(10.0));
    CHECK(sweep::parse_values("10,1") == std::vector<double>{10, 1});
    CHECK_THROWS_AS(sweep::parse_values("1,1"), InvalidArgument);
    CHECK_THROWS_WITH(sweep::parse_values("1,x2"), Catch::Matchers::ContainsSubstring("x2"));
    CHECK_THROWS_AS(sweep::parse_values("5:1"), InvalidArgument);
    CHECK_THROWS_AS(sweep::parse_values("log:0:1:3"), InvalidArgument);
    CHECK_THROWS_AS(sweep::parse_values(""), InvalidArgument);

    CHECK(sweep::parse_n_values("30:100").size() == 71);
    CHECK(sweep::parse_n_values("30:100:10") == std::vector<int>{30, 40, 50, 60, 70, 80, 90, 100});
    CHECK(sweep::parse_n_values("70") == std::vector<int>{70});
    CHECK_THROWS_AS(sweep::parse_n_values("70.5"), InvalidArgument);

    CHECK(sweep::parse_axis("temperature") == sweep::Axis::temperature);
    CHECK(sweep::axis_unit(sweep::Axis::omega_c) == "mhz");
    CHECK_THROWS_AS(sweep::parse_axis("delta"), InvalidArgument);

    const auto fixed = sweep::D11Mode::parse("fixed:14.5");
    CHECK_FALSE(fixed.optimize);
    CHECK(fixed.fixed_um == 14.5);
    CHECK(sweep::D11Mode::parse(fixed.str()).fixed_um == 14.5);
    CHECK(sweep::D11Mode::parse("opt").optimize);
    CHECK_THROWS_AS(sweep::D11Mode::parse("fixed:-1"), InvalidArgument);

    gate::GateParams p;
    p = sweep::apply_axis(p, sweep::Axis::omega_mu, 0.5);
    CHECK(p.omega_mu == Catch::Approx(units::mhz_to_rad_per_s(0.5)));
    p = sweep::apply_axis(p, sweep::Axis::temperature, 2.0);
    CHECK(p.temperature_k == Catch::Approx(2e-6));
    CHECK_THROWS_AS(sweep::apply_axis(p, sweep::Axis::n, 70.5), InvalidArgument);
}

TEST_CASE("configuration merge, overrides and resolution") {
    auto s = config::defaults();
    const auto r0 = config::resolve(s);
    CHECK(r0.species == "builtin:rb87");
    CHECK(r0.gate.n == 70);
    CHECK(r0.gate.omega_c == Catch::Approx(units::mhz_to_rad_per_s(10.0)));
    CHECK(r0.gate.temperature_k == Catch::Approx(1e-7));
    CHECK_FALSE(r0.gate.environment_temperature_k);
    CHECK(r0.radii_n.size() == 71);
    CHECK(r0.channels.branch == pair::C6Branch::smallest);

    config::merge(s, KeyValueDocument::parse("[gate]\nn = 60\nenvironment_temperature_k = 300\n[dephasing]\nd11 = fixed:15\n"));
    config::set(s, "gate", "omega_mu_mhz", "0.5");
    const auto r1 = config::resolve(s);
    CHECK(r1.gate.n == 60);
    CHECK(r1.gate.environment_temperature_k == 300.0);
    CHECK(r1.gate.omega_mu == Catch::Approx(units::mhz_to_rad_per_s(0.5)));
    CHECK_FALSE(r1.d11.optimize);

    // Text form re-parses to the same settings.
    auto t = config::defaults();
    config::merge(t, KeyValueDocument::parse(config::to_text(s)));
    CHECK(t == s);

    CHECK_THROWS_AS(config::merge(s, KeyValueDocument::parse("[gate]\nbogus = 1\n")), DataError);
    CHECK_THROWS_WITH(config::merge(s, KeyValueDocument::parse("\n[nope]\nx = 1\n")), Catch::Matchers::ContainsSubstring(":3"));
    CHECK_THROWS_AS(config::set(s, "gate", "bogus", "1"), InvalidArgument);
    config::set(s, "gate", "eta_c", "1.5");
    CHECK_THROWS_WITH(config::resolve(s), Catch::Matchers::ContainsSubstring("eta_c"));

    CHECK(config::load_species("builtin:hydrogen").name == "H");
    CHECK_THROWS_AS(config::load_species("builtin:cs133"), DataError);
    CHECK(config::load_species(std::string(RYDGATE_SOURCE_DIR) + "/data/rb87.species").digest ==
          qdt::Species::rubidium87().digest);
}

TEST_CASE("fidelity sweeps keep input order at any worker count") {
    const qdt::Atom atom(qdt::Species::rubidium87());
    sweep::SweepSpec spec;
    spec.axis = sweep::Axis::omega_mu;
    spec.values = {0.1, 0.4, 1.0, 200.0};
    spec.fixed = config::resolve(config::defaults()).gate;
    const auto a = sweep::run_fidelity(atom, spec, 1);
    const auto b = sweep::run_fidelity(atom, spec, 4);
    REQUIRE(a.size() == 4);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].axis_value == spec.values[i]);
        CHECK(a[i].error == b[i].error);
        CHECK(a[i].result.has_value() == b[i].result.has_value());
        if (a[i].result) CHECK(a[i].result->f_total == b[i].result->f_total);
    }
    CHECK(a[1].result);
    CHECK_FALSE(a[3].window_ok);
    CHECK_FALSE(a[3].error.empty());

    spec.axis = sweep::Axis::n;
    spec.values = {37, 38, 39};
    const auto res = sweep::run_fidelity(atom, spec, 2);
    CHECK(res[1].error.find("38") != std::string::npos);
}

TEST_CASE("Förster scan sorting") {
    const qdt::Atom atom(qdt::Species::rubidium87());
    const auto rows = sweep::forster_scan(atom, sweep::parse_n_values("34:42"), {}, 3);
    REQUIRE_FALSE(rows.empty());
    CHECK(rows.front().n == 38);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(std::abs(rows[i - 1].channel.defect_hz) <= std::abs(rows[i].channel.defect_hz));
    }
    pair::ChannelOptions zero;
    zero.resonance_threshold_hz = 0.0;
    CHECK(sweep::forster_scan(atom, sweep::parse_n_values("34:42"), zero, 2).empty());
}
