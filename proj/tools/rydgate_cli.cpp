// rydgate <radii|merit|fidelity|forster> [flags]
//
// Exit codes: 0 success, 1 at least one row failed, 2 usage error, 3 data-file error.

#include "rydgate/config.hpp"
#include "rydgate/csv.hpp"
#include "rydgate/error.hpp"
#include "rydgate/svg.hpp"
#include "rydgate/units.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace rydgate;

namespace {

constexpr int kExitRows = 1;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;

struct Binding {
    std::string section;
    std::string key;
    std::string value;
    CLI::Option* option = nullptr;
};

struct Command {
    CLI::App* app = nullptr;
    std::vector<std::unique_ptr<Binding>> bindings;

    void bind(const std::string& flag, const std::string& section, const std::string& key, const std::string& help) {
        auto b = std::make_unique<Binding>();
        b->section = section;
        b->key = key;
        b->option = app->add_option(flag, b->value, help);
        bindings.push_back(std::move(b));
    }
};

struct RowStatus {
    std::string key;
    std::string status;
    std::string message;
};

struct Outcome {
    std::vector<std::string> files;
    std::vector<RowStatus> rows;
    bool row_errors = false;
};

std::string utc_now() {
    const std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

std::string nan_or(const std::optional<double>& v) { return csv::format_number(v ? *v : std::nan("")); }

Outcome run_radii(const qdt::Atom& atom, const config::Resolved& cfg, const fs::path& out, int workers) {
    const double omega = units::mhz_to_rad_per_s(cfg.radii_omega_mhz);
    const auto rows = lengthscales::radii_scan(atom, cfg.radii_n, omega, cfg.channels, workers);
    csv::Table table{{"n", "r_b6_cross_um", "r_b6_same_um", "r_b3_um", "resonance_flag"}, {}};
    svg::Plot plot{"Blockade lengthscales at " + csv::format_number(cfg.radii_omega_mhz) + " MHz",
                   "principal quantum number n", "radius (um)", false, true, {}, {}};
    svg::Series cross{"R_b6 (nS,(n+1)S)", {}, "#d62728", false, true};
    svg::Series same{"R_b6 (nS,nS)", {}, "#7f7f7f", false, false};
    svg::Series b3{"R_b3 (nS,nP1/2)", {}, "#1f77b4", true, false};
    Outcome outcome;
    for (const auto& r : rows) {
        table.rows.push_back({csv::format_int(r.n), nan_or(r.r_b6_cross_um), nan_or(r.r_b6_same_um), nan_or(r.r_b3_um),
                              r.resonance ? "1" : "0"});
        const double nan = std::nan("");
        cross.points.emplace_back(r.n, r.r_b6_cross_um.value_or(nan));
        same.points.emplace_back(r.n, r.r_b6_same_um.value_or(nan));
        b3.points.emplace_back(r.n, r.r_b3_um.value_or(nan));
        if (r.resonance) plot.markers.push_back({static_cast<double>(r.n), "resonance n=" + std::to_string(r.n)});
        outcome.rows.push_back({std::to_string(r.n), r.resonance ? "resonance" : "ok", r.note});
    }
    plot.series = {cross, same, b3};
    csv::write_file((out / "radii.csv").string(), table);
    svg::write_file((out / "radii.svg").string(), plot);
    outcome.files = {"radii.csv", "radii.svg"};
    std::size_t flagged = 0;
    for (const auto& r : rows) flagged += r.resonance ? 1 : 0;
    std::cout << "radii: " << rows.size() << " rows, " << flagged << " resonance-flagged\n";
    return outcome;
}

Outcome run_merit(const qdt::Atom& atom, const config::Resolved& cfg, const fs::path& out, int workers) {
    const auto rows = lengthscales::merit_scan(atom, cfg.merit_n, cfg.merit_temperature_k, cfg.channels, workers);
    csv::Table table{{"n", "O", "gamma_used_hz", "resonance_flag"}, {}};
    svg::Plot plot{"Figure of merit", "principal quantum number n", "O", false, true, {}, {}};
    svg::Series series{"O (nS,(n+1)S,nP1/2)", {}, "#d62728", false, true};
    Outcome outcome;
    for (const auto& r : rows) {
        const double nan = std::nan("");
        table.rows.push_back({csv::format_int(r.n), csv::format_number(r.point ? r.point->merit : nan),
                              csv::format_number(r.point ? r.point->gamma_used : nan), r.resonance ? "1" : "0"});
        series.points.emplace_back(r.n, r.point ? r.point->merit : nan);
        if (r.resonance) plot.markers.push_back({static_cast<double>(r.n), "resonance n=" + std::to_string(r.n)});
        outcome.rows.push_back({std::to_string(r.n), r.resonance ? "resonance" : "ok", r.note});
    }
    plot.series = {series};
    csv::write_file((out / "merit.csv").string(), table);
    svg::write_file((out / "merit.svg").string(), plot);
    outcome.files = {"merit.csv", "merit.svg"};
    std::cout << "merit: " << rows.size() << " rows at " << cfg.merit_temperature_k << " K\n";
    return outcome;
}

Outcome run_fidelity(const qdt::Atom& atom, const config::Resolved& cfg, const fs::path& out, int workers) {
    sweep::SweepSpec spec;
    spec.axis = cfg.axis;
    spec.values = cfg.values;
    spec.fixed = cfg.gate;
    spec.d11 = cfg.d11;
    spec.channels = cfg.channels;
    spec.quadrature_points = cfg.quadrature_points;
    spec.validate();
    const auto rows = sweep::run_fidelity(atom, spec, workers);

    const std::string stem = "fidelity_" + sweep::to_string(cfg.axis);
    csv::Table table{{"axis_value", "d11_um", "f0_avg", "eta_m", "f_total", "coupling_budget", "window_ok", "status"},
                     {}};
    const std::string unit = sweep::axis_unit(cfg.axis);
    svg::Plot plot{"Gate fidelity vs " + sweep::to_string(cfg.axis),
                   sweep::to_string(cfg.axis) + (unit.empty() ? "" : " (" + unit + ")"), "fidelity",
                   cfg.axis == sweep::Axis::omega_mu || cfg.axis == sweep::Axis::omega_c ||
                       cfg.axis == sweep::Axis::temperature,
                   false, {}, {}};
    svg::Series total{"f_total", {}, "#d62728", false, true};
    svg::Series avg{"f0_avg", {}, "#1f77b4", true, false};
    Outcome outcome;
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        const double nan = std::nan("");
        const auto& res = r.result;
        table.rows.push_back({csv::format_number(r.axis_value), csv::format_number(res ? res->d11_used : nan),
                              csv::format_number(res ? res->f0_avg : nan), csv::format_number(res ? res->eta_m : nan),
                              csv::format_number(res ? res->f_total : nan),
                              csv::format_number(res ? res->coupling_budget : nan), r.window_ok ? "1" : "0",
                              r.error.empty() ? "ok" : "error"});
        total.points.emplace_back(r.axis_value, res ? res->f_total : nan);
        avg.points.emplace_back(r.axis_value, res ? res->f0_avg : nan);
        std::string message = r.error;
        if (res && !res->warning.empty()) message = res->warning;
        outcome.rows.push_back({csv::format_number(r.axis_value), r.error.empty() ? "ok" : "error", message});
        if (!r.error.empty()) {
            outcome.row_errors = true;
            std::cerr << "row " << i << " (" << sweep::to_string(cfg.axis) << " = " << r.axis_value
                      << "): " << r.error << "\n";
        }
        if (res && (!best || res->f_total > rows[*best].result->f_total)) best = i;
    }
    plot.series = {total, avg};
    csv::write_file((out / (stem + ".csv")).string(), table);
    svg::write_file((out / (stem + ".svg")).string(), plot);
    outcome.files = {stem + ".csv", stem + ".svg"};
    if (best) {
        const auto& r = *rows[*best].result;
        std::cout << "fidelity: best f_total = " << r.f_total << " at " << sweep::to_string(cfg.axis) << " = "
                  << rows[*best].axis_value << " (d11 = " << r.d11_used << " um, eta_m = " << r.eta_m
                  << "); with storage efficiency eta_c^2 = " << r.coupling_budget
                  << ", overall efficiency = " << r.coupling_budget * r.f_total << "\n";
    }
    return outcome;
}

Outcome run_forster(const qdt::Atom& atom, const config::Resolved& cfg, const fs::path& out, int workers) {
    const auto rows = sweep::forster_scan(atom, cfg.forster_n, cfg.channels, workers);
    csv::Table table{{"n", "initial", "final", "defect_mhz", "coupling_c3_ghz_um3"}, {}};
    for (const auto& r : rows) {
        table.rows.push_back({csv::format_int(r.n), r.channel.initial.label(), r.channel.final_state.label(),
                              csv::format_number(r.channel.defect_hz / 1e6),
                              csv::format_number(r.channel.coupling_hz_um3 / 1e9)});
    }
    csv::write_file((out / "forster.csv").string(), table);
    Outcome outcome;
    outcome.files = {"forster.csv"};
    for (int n : cfg.forster_n) outcome.rows.push_back({std::to_string(n), "ok", ""});
    std::cout << "forster: " << rows.size() << " channels within "
              << cfg.channels.resonance_threshold_hz / 1e6 << " MHz";
    if (!rows.empty()) {
        std::cout << "; closest " << rows.front().channel.initial.label() << " -> "
                  << rows.front().channel.final_state.label() << " at " << rows.front().channel.defect_hz / 1e6
                  << " MHz";
    }
    std::cout << "\n";
    return outcome;
}

std::string manifest_stem(const std::string& command, const config::Resolved& cfg) {
    return command == "fidelity" ? "fidelity_" + sweep::to_string(cfg.axis) : command;
}

json settings_json(const config::Settings& s) {
    json j = json::object();
    for (const auto& [section, entries] : s) {
        for (const auto& [key, value] : entries) j[section][key] = value;
    }
    return j;
}

config::Settings settings_from_json(const json& j) {
    config::Settings s;
    if (!j.is_object()) throw DataError("manifest: 'config' must be an object");
    for (const auto& [section, entries] : j.items()) {
        if (!entries.is_object()) throw DataError("manifest: config section '" + section + "' must be an object");
        for (const auto& [key, value] : entries.items()) {
            if (!value.is_string()) throw DataError("manifest: config value " + section + "." + key + " must be a string");
            try {
                config::set(s, section, key, value.get<std::string>());
            } catch (const InvalidArgument& e) {
                throw DataError(std::string("manifest: ") + e.what());
            }
        }
    }
    return s;
}

int execute(const std::string& command, Command& cmd, const std::string& config_path,
            const std::string& manifest_path, const std::string& out_dir, int workers) {
    config::Settings settings = config::defaults();
    std::string expected_digest;
    if (!manifest_path.empty()) {
        std::ifstream in(manifest_path);
        if (!in) throw DataError("cannot open manifest '" + manifest_path + "'");
        json m;
        try {
            m = json::parse(in);
        } catch (const json::exception& e) {
            throw DataError("manifest '" + manifest_path + "' is not valid JSON: " + e.what());
        }
        if (!m.contains("command") || m["command"] != command) {
            throw InvalidArgument("manifest was written by '" + m.value("command", std::string("?")) +
                                  "', not '" + command + "'");
        }
        if (!m.contains("config")) throw DataError("manifest has no 'config' object");
        settings = settings_from_json(m["config"]);
        expected_digest = m.value("species", json::object()).value("digest", std::string());
    }
    if (!config_path.empty()) config::merge(settings, KeyValueDocument::load(config_path));
    for (const auto& b : cmd.bindings) {
        if (b->option->count() > 0) config::set(settings, b->section, b->key, b->value);
    }
    const auto cfg = config::resolve(settings);
    auto species = config::load_species(cfg.species);
    if (!expected_digest.empty() && species.digest != expected_digest) {
        throw DataError("species data digest " + species.digest + " differs from the manifest's " + expected_digest);
    }
    const qdt::Atom atom(species, cfg.grid_points);

    const fs::path out(out_dir);
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) throw DataError("cannot create output directory '" + out_dir + "': " + ec.message());

    const auto started = utc_now();
    const auto t0 = std::chrono::steady_clock::now();
    Outcome outcome;
    if (command == "radii") outcome = run_radii(atom, cfg, out, workers);
    else if (command == "merit") outcome = run_merit(atom, cfg, out, workers);
    else if (command == "fidelity") outcome = run_fidelity(atom, cfg, out, workers);
    else outcome = run_forster(atom, cfg, out, workers);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const int code = outcome.row_errors ? kExitRows : 0;
    json manifest;
    manifest["tool"] = "rydgate";
    manifest["version"] = RYDGATE_VERSION;
    manifest["command"] = command;
    manifest["species"] = {{"source", cfg.species}, {"name", species.name}, {"digest", species.digest}};
    manifest["config"] = settings_json(settings);
    manifest["outputs"] = outcome.files;
    manifest["started_utc"] = started;
    manifest["wall_clock_s"] = wall;
    manifest["workers"] = workers;
    json rows = json::array();
    for (std::size_t i = 0; i < outcome.rows.size(); ++i) {
        json row = {{"index", i}, {"key", outcome.rows[i].key}, {"status", outcome.rows[i].status}};
        if (!outcome.rows[i].message.empty()) row["message"] = outcome.rows[i].message;
        rows.push_back(std::move(row));
    }
    manifest["rows"] = std::move(rows);
    manifest["exit_code"] = code;
    const auto manifest_file = out / (manifest_stem(command, cfg) + ".manifest.json");
    std::ofstream mf(manifest_file);
    if (!mf) throw DataError("cannot write " + manifest_file.string());
    mf << manifest.dump(2) << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rydgate: microwave-controlled Rydberg photonic CZ gate simulator"};
    app.set_version_flag("--version", std::string(RYDGATE_VERSION));
    app.require_subcommand(1);

    std::string species, config_path, manifest_path, out_dir = ".";
    int workers = 1;
    std::map<std::string, Command> commands;

    auto common = [&](Command& c) {
        c.bind("--species", "qdt", "species", "species data file, or builtin:rb87 / builtin:hydrogen");
        c.app->add_option("--config", config_path, "run configuration file (key = value, one section per module)");
        c.app->add_option("--from-manifest", manifest_path, "replay the configuration recorded in a run manifest");
        c.app->add_option("--out", out_dir, "output directory");
        c.app->add_option("--workers", workers, "worker threads (never changes results)")->check(CLI::Range(1, 256));
        c.bind("--max-delta-n", "pair", "max_delta_n", "channel truncation in n");
        c.bind("--max-l", "pair", "max_l", "channel truncation in L");
        c.bind("--threshold-mhz", "pair", "resonance_threshold_mhz", "Förster resonance threshold (MHz)");
        c.bind("--c6-branch", "pair", "c6_branch", "C6 branch: smallest, mean or largest");
    };

    {
        Command& c = commands["radii"];
        c.app = app.add_subcommand("radii", "blockade lengthscales vs n");
        common(c);
        c.bind("--n", "radii", "n", "n range, e.g. 30:100");
        c.bind("--omega-mhz", "radii", "omega_mhz", "Omega/2pi = Omega_mu/2pi in MHz");
    }
    {
        Command& c = commands["merit"];
        c.app = app.add_subcommand("merit", "figure of merit vs n");
        common(c);
        c.bind("--n", "merit", "n", "n range, e.g. 40:100");
        c.bind("--temperature-k", "merit", "temperature_k", "blackbody temperature for the decay rates (K)");
    }
    {
        Command& c = commands["fidelity"];
        c.app = app.add_subcommand("fidelity", "gate fidelity sweep");
        common(c);
        c.bind("--axis", "fidelity", "axis", "omega_mu, omega_c, n, q or temperature");
        c.bind("--values", "fidelity", "values", "axis values: a,b,c | lo:hi[:step] | log:lo:hi:count");
        c.bind("--n", "gate", "n", "principal quantum number");
        c.bind("--omega-mu-mhz", "gate", "omega_mu_mhz", "microwave Rabi frequency Omega_mu/2pi (MHz)");
        c.bind("--omega-c-mhz", "gate", "omega_c_mhz", "coupling Rabi frequency Omega_c/2pi (MHz)");
        c.bind("--omega-eit-mhz", "gate", "omega_eit_mhz", "EIT linewidth Omega/2pi (MHz); 0 = Omega_c");
        c.bind("--temperature-uk", "gate", "temperature_uk", "atomic temperature (uK)");
        c.bind("--env-temperature-k", "gate", "environment_temperature_k",
               "blackbody temperature for decay rates (K), or 'follow' for the atomic temperature");
        c.bind("--eta-c", "gate", "eta_c", "per-site storage efficiency");
        c.bind("--d-far-factor", "gate", "d_far_factor", "non-adjacent separation in units of d11");
        c.bind("--q", "dephasing", "q", "site waist over R_b6");
        c.bind("--lambda-um", "dephasing", "lambda_um", "spin-wave wavelength (um)");
        c.bind("--d11", "dephasing", "d11", "opt or fixed:<um>");
        c.bind("--quadrature-points", "dephasing", "quadrature_points", "Gauss-Hermite nodes");
    }
    {
        Command& c = commands["forster"];
        c.app = app.add_subcommand("forster", "near-resonant Förster channels of (nS,(n+1)S)");
        common(c);
        c.bind("--n", "forster", "n", "n range, e.g. 30:50");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    for (auto& [name, cmd] : commands) {
        if (!cmd.app->parsed()) continue;
        try {
            return execute(name, cmd, config_path, manifest_path, out_dir, workers);
        } catch (const DataError& e) {
            std::cerr << "data error: " << e.what() << "\n";
            return kExitData;
        } catch (const InvalidArgument& e) {
            std::cerr << "usage error: " << e.what() << "\n";
            return kExitUsage;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitRows;
        }
    }
    return kExitUsage;
}
