#include "rydgate/sweep.hpp"

#include "rydgate/error.hpp"
#include "rydgate/keyvalue.hpp"
#include "rydgate/parallel.hpp"
#include "rydgate/units.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace rydgate::sweep {

Axis parse_axis(const std::string& name) {
    if (name == "omega_mu") return Axis::omega_mu;
    if (name == "omega_c") return Axis::omega_c;
    if (name == "n") return Axis::n;
    if (name == "q") return Axis::q;
    if (name == "temperature") return Axis::temperature;
    throw InvalidArgument("unknown sweep axis '" + name + "' (expected omega_mu, omega_c, n, q or temperature)");
}

std::string to_string(Axis axis) {
    switch (axis) {
        case Axis::omega_mu: return "omega_mu";
        case Axis::omega_c: return "omega_c";
        case Axis::n: return "n";
        case Axis::q: return "q";
        case Axis::temperature: return "temperature";
    }
    return "?";
}

std::string axis_unit(Axis axis) {
    switch (axis) {
        case Axis::omega_mu:
        case Axis::omega_c: return "mhz";
        case Axis::temperature: return "uk";
        default: return "";
    }
}

namespace {

double number_token(const std::string& token, const std::string& spec) {
    const auto v = parse_double(trim(token));
    if (!v) throw InvalidArgument("bad number '" + token + "' in '" + spec + "'");
    return *v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

void require_monotone(const std::vector<double>& v, const std::string& spec) {
    if (v.empty()) throw InvalidArgument("empty value list '" + spec + "'");
    bool up = true, down = true;
    for (std::size_t i = 1; i < v.size(); ++i) {
        up = up && v[i] > v[i - 1];
        down = down && v[i] < v[i - 1];
    }
    if (!up && !down) throw InvalidArgument("values must be strictly monotone: '" + spec + "'");
}

}  // namespace

std::vector<double> parse_values(const std::string& spec_in) {
    const std::string spec = trim(spec_in);
    if (spec.empty()) throw InvalidArgument("empty value list");
    std::vector<double> out;
    if (spec.rfind("log:", 0) == 0) {
        const auto parts = split(spec.substr(4), ':');
        if (parts.size() != 3) throw InvalidArgument("log range needs log:<lo>:<hi>:<count>, got '" + spec + "'");
        const double lo = number_token(parts[0], spec), hi = number_token(parts[1], spec);
        const double count = number_token(parts[2], spec);
        if (!(lo > 0.0) || !(hi > 0.0)) throw InvalidArgument("log range bounds must be positive: '" + spec + "'");
        if (count < 1 || count != std::floor(count)) throw InvalidArgument("bad count '" + parts[2] + "'");
        const int k = static_cast<int>(count);
        for (int i = 0; i < k; ++i) {
            const double f = k == 1 ? 0.0 : static_cast<double>(i) / (k - 1);
            out.push_back(std::pow(10.0, std::log10(lo) + f * (std::log10(hi) - std::log10(lo))));
        }
        if (k > 1) out.back() = hi;
    } else if (spec.find(':') != std::string::npos) {
        const auto parts = split(spec, ':');
        if (parts.size() < 2 || parts.size() > 3) throw InvalidArgument("range needs <lo>:<hi>[:<step>], got '" + spec + "'");
        const double lo = number_token(parts[0], spec), hi = number_token(parts[1], spec);
        const double step = parts.size() == 3 ? number_token(parts[2], spec) : 1.0;
        if (!(step > 0.0)) throw InvalidArgument("range step must be positive: '" + spec + "'");
        if (hi < lo) throw InvalidArgument("empty range '" + spec + "'");
        const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
        if (count > 1000000) throw InvalidArgument("range too long: '" + spec + "'");
        for (long i = 0; i < count; ++i) out.push_back(lo + static_cast<double>(i) * step);
    } else {
        for (const auto& token : split(spec, ',')) out.push_back(number_token(token, spec));
    }
    require_monotone(out, spec);
    return out;
}

std::vector<int> parse_n_values(const std::string& spec) {
    std::vector<int> out;
    for (double v : parse_values(spec)) {
        if (v != std::floor(v) || v < 1 || v > 10000) {
            throw InvalidArgument("principal quantum numbers must be integers in [1, 10000]: '" + spec + "'");
        }
        out.push_back(static_cast<int>(v));
    }
    return out;
}

D11Mode D11Mode::parse(const std::string& text) {
    const std::string t = trim(text);
    if (t == "opt") return {};
    if (t.rfind("fixed:", 0) == 0) {
        const auto v = parse_double(t.substr(6));
        if (!v || !(*v > 0.0)) throw InvalidArgument("bad d11 distance in '" + t + "'");
        return {false, *v};
    }
    throw InvalidArgument("d11 mode must be 'opt' or 'fixed:<um>', got '" + t + "'");
}

std::string D11Mode::str() const {
    if (optimize) return "opt";
    std::ostringstream ss;
    ss.precision(17);
    ss << "fixed:" << fixed_um;
    return ss.str();
}

gate::GateParams apply_axis(gate::GateParams params, Axis axis, double value) {
    switch (axis) {
        case Axis::omega_mu: params.omega_mu = units::mhz_to_rad_per_s(value); break;
        case Axis::omega_c: params.omega_c = units::mhz_to_rad_per_s(value); break;
        case Axis::n:
            if (value != std::floor(value)) throw InvalidArgument("n axis values must be integers");
            params.n = static_cast<int>(value);
            break;
        case Axis::q: params.q = value; break;
        case Axis::temperature: params.temperature_k = value * 1e-6; break;
    }
    return params;
}

void SweepSpec::validate() const {
    if (values.empty()) throw InvalidArgument("sweep has no axis values");
    for (double v : values) apply_axis(fixed, axis, v).validate();
    if (!d11.optimize && !(d11.fixed_um > 0.0)) throw InvalidArgument("fixed d11 must be positive");
}

dephasing::AveragedFidelity evaluate_point(const dephasing::FidelityModel& model, const D11Mode& d11,
                                           const dephasing::OptimizeOptions& optimizer) {
    return d11.optimize ? dephasing::optimize_d11(model, optimizer) : model.evaluate(d11.fixed_um);
}

namespace {

using CoefficientKey = std::pair<int, double>;  // (n, lifetime temperature)

struct CoefficientSlot {
    std::optional<lengthscales::SystemCoefficients> value;
    std::string error;
};

std::map<CoefficientKey, CoefficientSlot> coefficient_table(const qdt::Atom& atom,
                                                            const std::vector<gate::GateParams>& params,
                                                            const pair::ChannelOptions& channels, int workers) {
    std::map<CoefficientKey, CoefficientSlot> table;
    for (const auto& p : params) table[{p.n, p.lifetime_temperature_k()}];
    std::vector<std::pair<const CoefficientKey, CoefficientSlot>*> slots;
    for (auto& entry : table) slots.push_back(&entry);
    parallel_for(slots.size(), workers, [&](std::size_t i) {
        auto& [key, slot] = *slots[i];
        try {
            slot.value = lengthscales::system_coefficients(atom, key.first, key.second, channels);
        } catch (const std::exception& e) {
            slot.error = e.what();
        }
    });
    return table;
}

}  // namespace

std::vector<FidelityRow> run_fidelity(const qdt::Atom& atom, const SweepSpec& spec, int workers) {
    if (spec.values.empty()) throw InvalidArgument("sweep has no axis values");
    std::vector<gate::GateParams> params;
    for (double v : spec.values) params.push_back(apply_axis(spec.fixed, spec.axis, v));
    const auto table = coefficient_table(atom, params, spec.channels, workers);

    std::vector<FidelityRow> rows(params.size());
    parallel_for(params.size(), workers, [&](std::size_t i) {
        FidelityRow row;
        row.axis_value = spec.values[i];
        try {
            const auto& slot = table.at({params[i].n, params[i].lifetime_temperature_k()});
            if (!slot.value) throw ResonanceError(slot.error);
            const auto model = dephasing::FidelityModel::from_coefficients(*slot.value, params[i],
                                                                           atom.species().mass_kg,
                                                                           spec.quadrature_points);
            row.window_ok = model.radii().window_ok();
            row.result = evaluate_point(model, spec.d11, spec.optimizer);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows[i] = std::move(row);
    });
    return rows;
}

BestPoint best_over_omega_mu(const qdt::Atom& atom, const gate::GateParams& params, const D11Mode& d11,
                             const pair::ChannelOptions& channels, double lo_mhz, double hi_mhz, int grid_points,
                             int workers) {
    if (!(lo_mhz > 0.0) || !(hi_mhz > lo_mhz)) throw InvalidArgument("Omega_mu search needs 0 < lo < hi");
    if (grid_points < 3) throw InvalidArgument("Omega_mu search needs at least 3 grid points");
    const auto sys = lengthscales::system_coefficients(atom, params.n, params.lifetime_temperature_k(), channels);
    const double mass = atom.species().mass_kg;

    auto evaluate = [&](double log_mhz) -> std::optional<dephasing::AveragedFidelity> {
        auto p = params;
        p.omega_mu = units::mhz_to_rad_per_s(std::pow(10.0, log_mhz));
        const auto model = dephasing::FidelityModel::from_coefficients(sys, p, mass);
        if (d11.optimize && !model.radii().window_ok()) return std::nullopt;
        return evaluate_point(model, d11);
    };
    auto score = [](const std::optional<dephasing::AveragedFidelity>& r) { return r ? r->f_total : 0.0; };

    const double a0 = std::log10(lo_mhz), b0 = std::log10(hi_mhz);
    std::vector<double> grid(static_cast<std::size_t>(grid_points));
    std::vector<std::optional<dephasing::AveragedFidelity>> vals(grid.size());
    for (int k = 0; k < grid_points; ++k) grid[k] = a0 + (b0 - a0) * k / (grid_points - 1);
    parallel_for(grid.size(), workers, [&](std::size_t k) { vals[k] = evaluate(grid[k]); });
    std::size_t best = 0;
    for (std::size_t k = 1; k < grid.size(); ++k) {
        if (score(vals[k]) > score(vals[best])) best = k;
    }
    if (!vals[best]) throw InvalidArgument("gate window is empty over the whole Omega_mu range");

    BestPoint out;
    out.interior = best > 0 && best + 1 < grid.size();
    double a = grid[best == 0 ? 0 : best - 1];
    double b = grid[std::min(best + 1, grid.size() - 1)];
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - ratio * (b - a), x2 = a + ratio * (b - a);
    auto r1 = evaluate(x1), r2 = evaluate(x2);
    while (b - a > 1e-3) {
        if (score(r1) >= score(r2)) {
            b = x2;
            x2 = x1;
            r2 = r1;
            x1 = b - ratio * (b - a);
            r1 = evaluate(x1);
        } else {
            a = x1;
            x1 = x2;
            r1 = r2;
            x2 = a + ratio * (b - a);
            r2 = evaluate(x2);
        }
    }
    double x_best = grid[best];
    auto r_best = vals[best];
    if (score(r1) > score(r_best)) {
        x_best = x1;
        r_best = r1;
    }
    if (score(r2) > score(r_best)) {
        x_best = x2;
        r_best = r2;
    }
    out.omega_mu_mhz = std::pow(10.0, x_best);
    out.result = *r_best;
    return out;
}

std::vector<ForsterRow> forster_scan(const qdt::Atom& atom, const std::vector<int>& n_values,
                                     const pair::ChannelOptions& channels, int workers) {
    std::vector<std::vector<ForsterRow>> per_n(n_values.size());
    parallel_for(n_values.size(), workers, [&](std::size_t i) {
        const auto levels = lengthscales::LevelSystem::for_n(n_values[i]);
        for (const auto& ch : pair::forster_channels(atom, {levels.r_prime, levels.r, 0}, channels)) {
            if (ch.resonant) per_n[i].push_back({n_values[i], ch});
        }
    });
    std::vector<ForsterRow> out;
    for (auto& rows : per_n) {
        for (auto& r : rows) out.push_back(std::move(r));
    }
    std::stable_sort(out.begin(), out.end(), [](const ForsterRow& x, const ForsterRow& y) {
        const double dx = std::abs(x.channel.defect_hz), dy = std::abs(y.channel.defect_hz);
        if (dx != dy) return dx < dy;
        if (x.n != y.n) return x.n < y.n;
        return x.channel.final_state.label() < y.channel.final_state.label();
    });
    return out;
}

}  // namespace rydgate::sweep
