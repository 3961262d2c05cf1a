#pragma once

// Parameter sweeps behind the command-line front end. Values on the sweep
// axes are in user units: MHz of ordinary frequency for Rabi frequencies,
// microkelvin for the atomic temperature.

#include "rydgate/dephasing.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rydgate::sweep {

enum class Axis { omega_mu, omega_c, n, q, temperature };
Axis parse_axis(const std::string& name);
std::string to_string(Axis axis);
/// Column-friendly unit suffix, e.g. "mhz" or "uk".
std::string axis_unit(Axis axis);

/// "a,b,c", "a:b:step" (inclusive) or "log:a:b:count". Values must be strictly
/// monotone. Throws InvalidArgument quoting the offending token.
std::vector<double> parse_values(const std::string& spec);
/// "70", "30:100", "30:100:5" or "38,39,40".
std::vector<int> parse_n_values(const std::string& spec);

struct D11Mode {
    bool optimize = true;
    double fixed_um = 0.0;

    /// "opt" or "fixed:<um>".
    static D11Mode parse(const std::string& text);
    std::string str() const;
};

gate::GateParams apply_axis(gate::GateParams params, Axis axis, double value);

struct SweepSpec {
    Axis axis = Axis::omega_mu;
    std::vector<double> values;
    gate::GateParams fixed;
    D11Mode d11;
    pair::ChannelOptions channels;
    dephasing::OptimizeOptions optimizer;
    int quadrature_points = 41;

    void validate() const;
};

struct FidelityRow {
    double axis_value = 0.0;
    std::optional<dephasing::AveragedFidelity> result;
    bool window_ok = false;
    std::string error;  // empty when the row succeeded
};

/// Rows in input order; a failing row records its error and the run continues.
std::vector<FidelityRow> run_fidelity(const qdt::Atom& atom, const SweepSpec& spec, int workers = 1);

/// f_total for one fully specified parameter set and d11 policy.
dephasing::AveragedFidelity evaluate_point(const dephasing::FidelityModel& model, const D11Mode& d11,
                                           const dephasing::OptimizeOptions& optimizer = {});

struct BestPoint {
    double omega_mu_mhz = 0.0;
    dephasing::AveragedFidelity result;
    bool interior = false;  // the grid maximum was not at either end
};

/// Maximizes f_total over Omega_mu/2pi in [lo, hi] MHz: log grid then golden
/// section in log Omega_mu. Points with an empty gate window count as zero.
BestPoint best_over_omega_mu(const qdt::Atom& atom, const gate::GateParams& params, const D11Mode& d11,
                             const pair::ChannelOptions& channels = {}, double lo_mhz = 0.01, double hi_mhz = 10.0,
                             int grid_points = 31, int workers = 1);

struct ForsterRow {
    int n = 0;
    pair::ForsterChannel channel;
};

/// Förster-flagged channels out of (nS1/2, (n+1)S1/2) for every n, sorted by
/// |defect| (ties by n, then final-state label).
std::vector<ForsterRow> forster_scan(const qdt::Atom& atom, const std::vector<int>& n_values,
                                     const pair::ChannelOptions& channels, int workers = 1);

}  // namespace rydgate::sweep
