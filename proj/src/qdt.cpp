#include "rydgate/qdt.hpp"

#include "rydgate/error.hpp"
#include "rydgate/keyvalue.hpp"
#include "rydgate/units.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace rydgate::qdt {

// Generated from data/*.species at configure time.
extern const char* const kRb87SpeciesText;
extern const char* const kHydrogenSpeciesText;

namespace {

const char* kLetters = "SPDFGHIKLMNOQRTUV";

int parse_two_j(const std::string& token, int line) {
    const auto slash = token.find('/');
    if (slash != std::string::npos) {
        auto num = parse_double(token.substr(0, slash));
        auto den = parse_double(token.substr(slash + 1));
        if (num && den && *den == 2.0 && *num == std::floor(*num)) return static_cast<int>(*num);
    } else if (auto v = parse_double(token)) {
        const double twice = 2.0 * *v;
        if (twice == std::floor(twice)) return static_cast<int>(twice);
    }
    throw DataError("line " + std::to_string(line) + ": bad J value '" + token + "'");
}

double row_number(const TableRow& row, std::size_t i, const char* what) {
    auto v = parse_double(row.tokens[i]);
    if (!v) {
        throw DataError("line " + std::to_string(row.line) + ": " + what + " expects a number, got '" +
                        row.tokens[i] + "'");
    }
    return *v;
}

int row_int(const TableRow& row, std::size_t i, const char* what) {
    const double v = row_number(row, i, what);
    if (v != std::floor(v) || v < 0) {
        throw DataError("line " + std::to_string(row.line) + ": " + what + " must be a non-negative integer");
    }
    return static_cast<int>(v);
}

// Integrates f over the x grid with r = x^2 (dr = 2x dx), trapezoid rule.
template <class F>
double integrate_dr(std::size_t count, double step, std::size_t first, F&& f) {
    if (count < 2) return 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double x = static_cast<double>(first + i) * step;
        const double w = (i == 0 || i + 1 == count) ? 0.5 : 1.0;
        sum += w * f(i) * 2.0 * x;
    }
    return sum * step;
}

}  // namespace

RydbergLevel RydbergLevel::make(int n, int l, double j) {
    const double twice = 2.0 * j;
    if (twice != std::floor(twice)) throw InvalidArgument("J must be a half-integer");
    RydbergLevel level{n, l, static_cast<int>(twice)};
    if (n < 1 || l < 0 || l >= n) {
        throw InvalidArgument("invalid level n=" + std::to_string(n) + " L=" + std::to_string(l) + ": need 0 <= L < n");
    }
    if (level.two_j != 2 * l + 1 && level.two_j != 2 * l - 1) {
        throw InvalidArgument("invalid J for L=" + std::to_string(l) + ": |L - 1/2| <= J <= L + 1/2");
    }
    return level;
}

std::string RydbergLevel::label() const {
    std::string s = std::to_string(n);
    s += (l < 17) ? kLetters[l] : '?';
    s += std::to_string(two_j) + "/2";
    return s;
}

std::string fnv1a_hex(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Species Species::parse(std::string_view text, const std::string& origin) {
    const auto doc = KeyValueDocument::parse(text, origin);
    const auto& head = doc.section("species");

    Species sp;
    sp.name = head.get("name").value_or("unnamed");
    sp.mass_kg = head.get_double("mass_amu") * units::atomic_mass_unit;
    sp.rydberg_hz = head.get_double("rydberg_constant_hz");
    sp.core_radius_scale = head.get_double("core_radius_scale", 0.0);
    sp.min_n = static_cast<int>(head.get_double("min_n", 1.0));
    if (sp.mass_kg <= 0.0) throw DataError(origin + ": mass_amu must be positive");
    if (std::abs(sp.rydberg_hz / units::rydberg_infinity_hz - 1.0) > 1e-3) {
        throw DataError(origin + ": rydberg_constant_hz is not within 0.1% of R_inf c");
    }
    if (sp.core_radius_scale < 0.0) throw DataError(origin + ": core_radius_scale must be >= 0");

    for (const auto& row : doc.section("defects").rows) {
        if (row.tokens.size() != 4) {
            throw DataError(origin + ":" + std::to_string(row.line) + ": defect rows are 'L J delta0 delta2'");
        }
        const int l = row_int(row, 0, "L");
        const int two_j = parse_two_j(row.tokens[1], row.line);
        if (two_j != 2 * l + 1 && two_j != 2 * l - 1) {
            throw DataError(origin + ":" + std::to_string(row.line) + ": J incompatible with L");
        }
        if (!sp.defects.emplace(std::pair{l, two_j}, DefectEntry{row_number(row, 2, "delta0"),
                                                                  row_number(row, 3, "delta2")})
                 .second) {
            throw DataError(origin + ":" + std::to_string(row.line) + ": duplicate defect entry");
        }
    }

    for (const auto& row : doc.section("lifetimes").rows) {
        if (row.tokens.size() != 3) {
            throw DataError(origin + ":" + std::to_string(row.line) + ": lifetime rows are 'L tau_s_ns alpha'");
        }
        const int l = row_int(row, 0, "L");
        LifetimeEntry e{row_number(row, 1, "tau_s_ns"), row_number(row, 2, "alpha")};
        if (e.tau_s_ns <= 0.0) throw DataError(origin + ":" + std::to_string(row.line) + ": tau_s_ns must be > 0");
        if (!sp.lifetimes.emplace(l, e).second) {
            throw DataError(origin + ":" + std::to_string(row.line) + ": duplicate lifetime entry");
        }
    }
    if (sp.lifetimes.empty()) throw DataError(origin + ": [lifetimes] has no rows");

    if (const auto* bb = doc.find("blackbody")) sp.blackbody_rate_per_k = bb->get_double("rate_per_kelvin", 0.0);
    sp.digest = fnv1a_hex(text);
    return sp;
}

Species Species::load(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot open species file '" + path + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse(buf.str(), path);
}

const Species& Species::rubidium87() {
    static const Species rb = parse(kRb87SpeciesText, "rb87.species");
    return rb;
}

const Species& Species::hydrogen() {
    static const Species h = parse(kHydrogenSpeciesText, "hydrogen.species");
    return h;
}

const DefectEntry* Species::find_defect(int l, int two_j) const {
    auto it = defects.find({l, two_j});
    return it == defects.end() ? nullptr : &it->second;
}

const LifetimeEntry& Species::lifetime_entry(int l) const {
    // Higher L reuse the highest tabulated L.
    auto it = lifetimes.upper_bound(l);
    if (it == lifetimes.begin()) return it->second;
    return std::prev(it)->second;
}

double quantum_defect(const Species& species, const RydbergLevel& level) {
    const auto* entry = species.find_defect(level.l, level.two_j);
    if (!entry) {
        if (level.l > 4) return 0.0;
        throw DataError("species '" + species.name + "' has no quantum defect for L=" + std::to_string(level.l) +
                        " J=" + std::to_string(level.two_j) + "/2");
    }
    const double shifted = level.n - entry->delta0;
    return entry->delta0 + entry->delta2 / (shifted * shifted);
}

double effective_quantum_number(const Species& species, const RydbergLevel& level) {
    if (level.n < species.min_n) {
        throw InvalidArgument(level.label() + " is below the species minimum n=" + std::to_string(species.min_n));
    }
    const double n_star = level.n - quantum_defect(species, level);
    if (!(n_star > 0.0)) throw DataError(level.label() + ": non-positive effective quantum number");
    return n_star;
}

double level_energy(const Species& species, const RydbergLevel& level) {
    const double n_star = effective_quantum_number(species, level);
    return -species.rydberg_hz / (n_star * n_star);
}

double default_step(const Species& species, const RydbergLevel& level, int points) {
    const double n_star = effective_quantum_number(species, level);
    const double r_outer = 2.0 * n_star * (n_star + 15.0);
    return std::sqrt(r_outer) / points;
}

double RadialSolution::mean_radius() const {
    return integrate_dr(u.size(), step, first_index, [&](std::size_t i) { return u[i] * u[i] * r[i]; });
}

RadialSolution radial_wavefunction(const Species& species, const RydbergLevel& level, const GridSpec& grid) {
    const double n_star = effective_quantum_number(species, level);
    const int l = level.l;
    if (!(n_star > l)) throw InvalidArgument(level.label() + ": n* must exceed L for a bound solution");
    if (grid.points < 16 && grid.step <= 0.0) throw InvalidArgument("radial grid needs at least 16 points");

    const double r_outer = 2.0 * n_star * (n_star + 15.0);
    const double h = grid.step > 0.0 ? grid.step : std::sqrt(r_outer) / grid.points;

    const double ll = l * (l + 1.0);
    const double turning = ll > 0.0 ? n_star * n_star * (1.0 - std::sqrt(1.0 - ll / (n_star * n_star))) : 0.0;
    const double core = species.core_radius_scale * std::cbrt(n_star);
    const double r_inner = core;

    const auto k_out = static_cast<std::size_t>(std::ceil(std::sqrt(r_outer) / h));
    auto k_in = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(std::sqrt(r_inner) / h)));
    if (k_out < k_in + 8) throw NumericalError(level.label() + ": radial grid too coarse");

    // X'' = f X with u(r) = x^(1/2) X(x), r = x^2.
    const double centrifugal = (2.0 * l + 0.5) * (2.0 * l + 1.5);
    const double energy_term = 4.0 / (n_star * n_star);
    auto f_of = [&](std::size_t k) {
        const double x = static_cast<double>(k) * h;
        return -8.0 + energy_term * x * x + centrifugal / (x * x);
    };

    std::size_t count = k_out - k_in + 1;
    std::vector<double> scaled(count, 0.0);
    // scaled[i] holds X at k = k_in + i; integrate from the outer edge inward.
    const double h2 = h * h / 12.0;
    scaled[count - 1] = 1e-10;
    const double f_edge = f_of(k_out);
    scaled[count - 2] = scaled[count - 1] * std::exp(h * std::sqrt(std::max(f_edge, 0.0)));
    for (std::size_t i = count - 2; i-- > 0;) {
        const std::size_t k = k_in + i;
        scaled[i] = (2.0 * (1.0 + 5.0 * h2 * f_of(k + 1)) * scaled[i + 1] -
                     (1.0 - h2 * f_of(k + 2)) * scaled[i + 2]) /
                    (1.0 - h2 * f_of(k));
    }

    // Inside the centrifugal barrier the physical solution decays inward; once
    // |u| turns upward the irregular solution has taken over, so stop there.
    std::size_t cut = 0;
    for (std::size_t i = count - 1; i-- > 0;) {
        const double x = static_cast<double>(k_in + i) * h;
        if (x * x >= turning) continue;
        const double here = std::abs(std::sqrt(x) * scaled[i]);
        const double outer = std::abs(std::sqrt(x + h) * scaled[i + 1]);
        if (here > outer) {
            cut = i + 1;
            break;
        }
    }
    if (cut > 0) {
        scaled.erase(scaled.begin(), scaled.begin() + static_cast<std::ptrdiff_t>(cut));
        k_in += cut;
        count -= cut;
    }

    RadialSolution sol;
    sol.step = h;
    sol.first_index = k_in;
    sol.inner_cutoff = static_cast<double>(k_in) * h * static_cast<double>(k_in) * h;
    sol.outer_radius = static_cast<double>(k_out) * h * static_cast<double>(k_out) * h;
    sol.x.resize(count);
    sol.r.resize(count);
    sol.u.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double x = static_cast<double>(k_in + i) * h;
        sol.x[i] = x;
        sol.r[i] = x * x;
        sol.u[i] = std::sqrt(x) * scaled[i];
    }

    const double norm2 = integrate_dr(count, h, k_in, [&](std::size_t i) { return sol.u[i] * sol.u[i]; });
    if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
        throw NumericalError(level.label() + ": radial integration produced a non-normalizable solution");
    }
    const double scale = 1.0 / std::sqrt(norm2);
    for (auto& v : sol.u) v *= scale;
    sol.norm_error =
        std::abs(integrate_dr(count, h, k_in, [&](std::size_t i) { return sol.u[i] * sol.u[i]; }) - 1.0);

    // The inward solution must not blow up at the inner cutoff.
    double peak = 0.0;
    for (double v : sol.u) peak = std::max(peak, std::abs(v));
    if (std::abs(sol.u.front()) >= peak) {
        throw NumericalError(level.label() + ": inward solution diverges at the inner cutoff r=" +
                             std::to_string(sol.inner_cutoff) + " a0 (|u|=" + std::to_string(std::abs(sol.u.front())) +
                             "); raise the cutoff");
    }

    // Sign flips in the negligible inner tail are not nodes; the two innermost
    // samples carry the end-point error of the inward integration.
    int nodes = 0;
    int last_sign = 0;
    for (std::size_t k = std::min<std::size_t>(2, sol.u.size()); k < sol.u.size(); ++k) {
        const double v = sol.u[k];
        if (std::abs(v) < 1e-6 * peak) continue;
        const int sign = v < 0.0 ? -1 : 1;
        if (last_sign != 0 && sign != last_sign) ++nodes;
        last_sign = sign;
    }
    sol.nodes = nodes;
    return sol;
}

double overlap_radial_integral(const RadialSolution& a, const RadialSolution& b) {
    if (a.step != b.step) throw NumericalError("radial grids differ; matrix element needs a common step");
    const std::size_t first = std::max(a.first_index, b.first_index);
    const std::size_t last = std::min(a.last_index(), b.last_index());
    if (last <= first) return 0.0;
    const std::size_t oa = first - a.first_index;
    const std::size_t ob = first - b.first_index;
    return integrate_dr(last - first + 1, a.step, first,
                        [&](std::size_t i) { return a.u[oa + i] * a.r[oa + i] * b.u[ob + i]; });
}

double radial_matrix_element(const Species& species, const RydbergLevel& a, const RydbergLevel& b, int points) {
    if (std::abs(a.l - b.l) != 1) {
        throw InvalidArgument("dipole selection rule: |L_a - L_b| must be 1 (" + a.label() + ", " + b.label() + ")");
    }
    const double step = std::min(default_step(species, a, points), default_step(species, b, points));
    const auto sa = radial_wavefunction(species, a, GridSpec{points, step});
    const auto sb = radial_wavefunction(species, b, GridSpec{points, step});
    return overlap_radial_integral(sa, sb);
}

double radiative_rate(const Species& species, const RydbergLevel& level) {
    const double n_star = effective_quantum_number(species, level);
    const auto& e = species.lifetime_entry(level.l);
    return 1.0 / (e.tau_s_ns * 1e-9 * std::pow(n_star, e.alpha));
}

double blackbody_rate(const Species& species, const RydbergLevel& level, double temperature_k) {
    if (temperature_k < 0.0) throw InvalidArgument("temperature must be >= 0 K");
    const double n_star = effective_quantum_number(species, level);
    return species.blackbody_rate_per_k * temperature_k / (n_star * n_star);
}

double decay_rate(const Species& species, const RydbergLevel& level, double temperature_k) {
    return radiative_rate(species, level) + blackbody_rate(species, level, temperature_k);
}

Atom::Atom(Species species, int points) : species_(std::move(species)), points_(points) {}

std::shared_ptr<const RadialSolution> Atom::solution(const RydbergLevel& level, double step) const {
    const auto key = std::pair{level, step};
    {
        std::lock_guard lock(mutex_);
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }
    auto fresh = std::make_shared<const RadialSolution>(radial_wavefunction(species_, level, GridSpec{points_, step}));
    std::lock_guard lock(mutex_);
    return cache_.emplace(key, std::move(fresh)).first->second;
}

double Atom::radial_matrix_element(const RydbergLevel& a, const RydbergLevel& b) const {
    if (std::abs(a.l - b.l) != 1) {
        throw InvalidArgument("dipole selection rule: |L_a - L_b| must be 1 (" + a.label() + ", " + b.label() + ")");
    }
    const double step = std::min(default_step(species_, a, points_), default_step(species_, b, points_));
    return overlap_radial_integral(*solution(a, step), *solution(b, step));
}

}  // namespace rydgate::qdt
