#pragma once

// Quantum-defect description of alkali Rydberg levels: energies, radial
// wavefunctions, radial dipole matrix elements and decay rates.

#include <compare>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rydgate::qdt {

/// A fine-structure level |n L J>. J is stored doubled so half-integers stay exact.
struct RydbergLevel {
    int n = 0;
    int l = 0;
    int two_j = 1;

    /// Validates |L - 1/2| <= J <= L + 1/2 and L < n; throws InvalidArgument.
    static RydbergLevel make(int n, int l, double j);

    double j() const { return 0.5 * two_j; }
    /// Spectroscopic label, e.g. "70S1/2".
    std::string label() const;

    auto operator<=>(const RydbergLevel&) const = default;
};

/// Rydberg-Ritz coefficients: delta(n) = delta0 + delta2 / (n - delta0)^2.
struct DefectEntry {
    double delta0 = 0.0;
    double delta2 = 0.0;
};

/// Radiative lifetime scaling tau = tau_s * (n*)^alpha.
struct LifetimeEntry {
    double tau_s_ns = 0.0;
    double alpha = 0.0;
};

struct Species {
    std::string name;
    double mass_kg = 0.0;
    double rydberg_hz = 0.0;  // mass-corrected R c
    /// Inner Numerov cutoff is core_radius_scale * (n*)^(1/3) Bohr radii (0 for hydrogen-like).
    double core_radius_scale = 0.0;
    int min_n = 1;
    /// Blackbody-induced rate per kelvin at n* = 1: Gamma_bb = rate * T / n*^2.
    double blackbody_rate_per_k = 0.0;
    std::map<std::pair<int, int>, DefectEntry> defects;  // keyed by (L, 2J)
    std::map<int, LifetimeEntry> lifetimes;              // keyed by L
    std::string digest;                                  // FNV-1a of the source text

    /// Parses the species file format (see data/README or the project README).
    static Species parse(std::string_view text, const std::string& origin = "<species>");
    static Species load(const std::string& path);
    /// The shipped 87Rb data file, embedded at build time.
    static const Species& rubidium87();
    /// Shipped zero-defect species used for analytic hydrogen checks.
    static const Species& hydrogen();

    const DefectEntry* find_defect(int l, int two_j) const;
    const LifetimeEntry& lifetime_entry(int l) const;
};

/// 64-bit FNV-1a as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view text);

double quantum_defect(const Species& species, const RydbergLevel& level);
/// n* = n - delta(n); throws DataError for a missing (L, J) entry with L <= 4.
double effective_quantum_number(const Species& species, const RydbergLevel& level);
/// E/h in Hz, relative to the ionization limit (negative).
double level_energy(const Species& species, const RydbergLevel& level);

struct GridSpec {
    int points = 2000;  // points between the origin and the outer radius
    double step = 0.0;  // explicit step in sqrt(a0); overrides points when > 0
};

/// Radial function u(r) = r R(r) sampled on x_k = k * step, r = x^2 (Bohr radii).
struct RadialSolution {
    double step = 0.0;
    std::size_t first_index = 0;  // index k of x.front()
    std::vector<double> x;
    std::vector<double> r;
    std::vector<double> u;
    int nodes = 0;
    double norm_error = 0.0;
    double inner_cutoff = 0.0;  // Bohr radii
    double outer_radius = 0.0;  // Bohr radii

    std::size_t last_index() const { return first_index + x.size() - 1; }
    double mean_radius() const;
};

/// Numerov inward integration on a grid uniform in sqrt(r) for a pure Coulomb
/// potential at the quantum-defect energy -1/(2 n*^2) Hartree.
RadialSolution radial_wavefunction(const Species& species, const RydbergLevel& level, const GridSpec& grid = {});

/// Step (in sqrt(a0)) the default grid uses for a level.
double default_step(const Species& species, const RydbergLevel& level, int points = 2000);

/// <a| r |b> in Bohr radii over the overlap of both grids (same step required).
double overlap_radial_integral(const RadialSolution& a, const RadialSolution& b);

/// Radial dipole integral in units of e a0; requires |L_a - L_b| = 1.
double radial_matrix_element(const Species& species, const RydbergLevel& a, const RydbergLevel& b,
                             int points = 2000);

/// Total decay rate (s^-1): radiative plus blackbody at the given temperature in kelvin.
double decay_rate(const Species& species, const RydbergLevel& level, double temperature_k);
double radiative_rate(const Species& species, const RydbergLevel& level);
double blackbody_rate(const Species& species, const RydbergLevel& level, double temperature_k);

/// Species plus a thread-safe memo of radial solutions. Cached results are
/// bit-identical to fresh ones since the solver is deterministic.
class Atom {
public:
    explicit Atom(Species species, int points = 2000);

    const Species& species() const { return species_; }
    int points() const { return points_; }

    std::shared_ptr<const RadialSolution> solution(const RydbergLevel& level, double step) const;
    double radial_matrix_element(const RydbergLevel& a, const RydbergLevel& b) const;
    double energy(const RydbergLevel& level) const { return level_energy(species_, level); }

private:
    Species species_;
    int points_;
    mutable std::mutex mutex_;
    mutable std::map<std::pair<RydbergLevel, double>, std::shared_ptr<const RadialSolution>> cache_;
};

}  // namespace rydgate::qdt
