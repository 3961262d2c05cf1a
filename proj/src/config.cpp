#include "rydgate/config.hpp"

#include "rydgate/error.hpp"
#include "rydgate/units.hpp"

#include <cmath>

namespace rydgate::config {

Settings defaults() {
    return {
        {"qdt", {{"species", "builtin:rb87"}, {"grid_points", "2000"}}},
        {"pair",
         {{"max_delta_n", "5"}, {"max_l", "2"}, {"resonance_threshold_mhz", "10"}, {"c6_branch", "smallest"}}},
        {"gate",
         {{"n", "70"},
          {"omega_mu_mhz", "1"},
          {"omega_c_mhz", "10"},
          {"omega_eit_mhz", "0"},
          {"d_far_factor", "5"},
          {"temperature_uk", "0.1"},
          {"environment_temperature_k", "follow"},
          {"eta_c", "0.9"}}},
        {"dephasing", {{"q", "0.2"}, {"lambda_um", "1.25"}, {"quadrature_points", "41"}, {"d11", "opt"}}},
        {"radii", {{"n", "30:100"}, {"omega_mhz", "1"}}},
        {"merit", {{"n", "40:100"}, {"temperature_k", "0"}}},
        {"fidelity", {{"axis", "omega_mu"}, {"values", "log:0.01:10:31"}}},
        {"forster", {{"n", "30:50"}}},
    };
}

void set(Settings& settings, const std::string& section, const std::string& key, const std::string& value) {
    static const Settings known = defaults();
    const auto sec = known.find(section);
    if (sec == known.end()) throw InvalidArgument("unknown config section [" + section + "]");
    if (!sec->second.count(key)) throw InvalidArgument("unknown config key " + section + "." + key);
    settings[section][key] = value;
}

void merge(Settings& settings, const KeyValueDocument& doc) {
    for (const auto& section : doc.sections()) {
        if (section.name.empty() && section.entries.empty() && section.rows.empty()) continue;
        if (!section.rows.empty()) {
            throw DataError(doc.origin() + ":" + std::to_string(section.rows.front().line) +
                            ": config sections take key = value lines only");
        }
        for (const auto& [key, entry] : section.entries) {
            try {
                set(settings, section.name, key, entry.value);
            } catch (const InvalidArgument& e) {
                throw DataError(doc.origin() + ":" + std::to_string(entry.line) + ": " + e.what());
            }
        }
    }
}

std::string to_text(const Settings& settings) {
    std::string out;
    for (const auto& [section, entries] : settings) {
        out += "[" + section + "]\n";
        for (const auto& [key, value] : entries) out += key + " = " + value + "\n";
    }
    return out;
}

namespace {

class Reader {
public:
    explicit Reader(const Settings& s) : s_(s) {}

    const std::string& text(const std::string& section, const std::string& key) const {
        return s_.at(section).at(key);
    }

    double number(const std::string& section, const std::string& key) const {
        const auto v = parse_double(trim(text(section, key)));
        if (!v) fail(section, key, "not a number");
        return *v;
    }

    int integer(const std::string& section, const std::string& key) const {
        const double v = number(section, key);
        if (v != std::floor(v) || std::abs(v) > 1e9) fail(section, key, "not an integer");
        return static_cast<int>(v);
    }

    template <class F>
    auto parsed(const std::string& section, const std::string& key, F&& f) const {
        try {
            return f(text(section, key));
        } catch (const InvalidArgument& e) {
            fail(section, key, e.what());
        }
    }

    [[noreturn]] void fail(const std::string& section, const std::string& key, const std::string& why) const {
        throw InvalidArgument(section + "." + key + " = '" + text(section, key) + "': " + why);
    }

private:
    const Settings& s_;
};

}  // namespace

Resolved resolve(const Settings& settings_in) {
    Settings settings = defaults();
    for (const auto& [section, entries] : settings_in) {
        for (const auto& [key, value] : entries) set(settings, section, key, value);
    }
    const Reader r(settings);
    Resolved out;

    out.species = trim(r.text("qdt", "species"));
    out.grid_points = r.integer("qdt", "grid_points");
    if (out.grid_points < 100) r.fail("qdt", "grid_points", "need at least 100 points");

    out.channels.max_delta_n = r.integer("pair", "max_delta_n");
    out.channels.max_l = r.integer("pair", "max_l");
    out.channels.resonance_threshold_hz = r.number("pair", "resonance_threshold_mhz") * 1e6;
    out.channels.branch = r.parsed("pair", "c6_branch", [](const std::string& t) { return pair::parse_c6_branch(trim(t)); });
    if (out.channels.max_delta_n < 0) r.fail("pair", "max_delta_n", "must be >= 0");
    if (out.channels.max_l < 1) r.fail("pair", "max_l", "must be >= 1");
    if (out.channels.resonance_threshold_hz < 0) r.fail("pair", "resonance_threshold_mhz", "must be >= 0");

    auto& g = out.gate;
    g.n = r.integer("gate", "n");
    g.omega_mu = units::mhz_to_rad_per_s(r.number("gate", "omega_mu_mhz"));
    g.omega_c = units::mhz_to_rad_per_s(r.number("gate", "omega_c_mhz"));
    g.omega_eit = units::mhz_to_rad_per_s(r.number("gate", "omega_eit_mhz"));
    g.d_far_factor = r.number("gate", "d_far_factor");
    g.temperature_k = r.number("gate", "temperature_uk") * 1e-6;
    if (trim(r.text("gate", "environment_temperature_k")) != "follow") {
        g.environment_temperature_k = r.number("gate", "environment_temperature_k");
    }
    g.eta_c = r.number("gate", "eta_c");
    g.q = r.number("dephasing", "q");
    g.lambda_sw_um = r.number("dephasing", "lambda_um");
    try {
        g.validate();
    } catch (const InvalidArgument& e) {
        throw InvalidArgument(std::string("[gate]/[dephasing]: ") + e.what());
    }

    out.quadrature_points = r.integer("dephasing", "quadrature_points");
    if (out.quadrature_points < 2 || out.quadrature_points > 400) {
        r.fail("dephasing", "quadrature_points", "must lie in [2, 400]");
    }
    out.d11 = r.parsed("dephasing", "d11", [](const std::string& t) { return sweep::D11Mode::parse(t); });

    out.radii_n = r.parsed("radii", "n", [](const std::string& t) { return sweep::parse_n_values(t); });
    out.radii_omega_mhz = r.number("radii", "omega_mhz");
    if (!(out.radii_omega_mhz > 0.0)) r.fail("radii", "omega_mhz", "must be positive");
    out.merit_n = r.parsed("merit", "n", [](const std::string& t) { return sweep::parse_n_values(t); });
    out.merit_temperature_k = r.number("merit", "temperature_k");
    if (out.merit_temperature_k < 0.0) r.fail("merit", "temperature_k", "must be >= 0");
    out.axis = r.parsed("fidelity", "axis", [](const std::string& t) { return sweep::parse_axis(trim(t)); });
    out.values = r.parsed("fidelity", "values", [](const std::string& t) { return sweep::parse_values(t); });
    out.forster_n = r.parsed("forster", "n", [](const std::string& t) { return sweep::parse_n_values(t); });
    return out;
}

qdt::Species load_species(const std::string& spec) {
    if (spec == "builtin:rb87") return qdt::Species::rubidium87();
    if (spec == "builtin:hydrogen") return qdt::Species::hydrogen();
    if (spec.rfind("builtin:", 0) == 0) throw DataError("unknown built-in species '" + spec + "'");
    return qdt::Species::load(spec);
}

}  // namespace rydgate::config
