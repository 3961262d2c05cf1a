#pragma once

// Run configuration: the species-file grammar with one section per module.
// Settings are kept as text so a resolved configuration can be written to a
// manifest and replayed exactly.
//
//   [qdt]         species, grid_points
//   [pair]        max_delta_n, max_l, resonance_threshold_mhz, c6_branch
//   [gate]        n, omega_mu_mhz, omega_c_mhz, omega_eit_mhz, d_far_factor,
//                 temperature_uk, environment_temperature_k, eta_c
//   [dephasing]   q, lambda_um, quadrature_points, d11
//   [radii]       n, omega_mhz
//   [merit]       n, temperature_k
//   [fidelity]    axis, values
//   [forster]     n

#include "rydgate/keyvalue.hpp"
#include "rydgate/sweep.hpp"

#include <map>
#include <string>
#include <vector>

namespace rydgate::config {

using Settings = std::map<std::string, std::map<std::string, std::string>>;

Settings defaults();

/// Overrides `settings` with every entry of the document. Unknown sections or
/// keys raise DataError with the line number.
void merge(Settings& settings, const KeyValueDocument& doc);
/// Sets one known key; InvalidArgument for unknown names.
void set(Settings& settings, const std::string& section, const std::string& key, const std::string& value);
/// Renders settings in the config grammar (sections and keys sorted).
std::string to_text(const Settings& settings);

struct Resolved {
    std::string species;  // "builtin:rb87", "builtin:hydrogen" or a path
    int grid_points = 2000;
    pair::ChannelOptions channels;
    gate::GateParams gate;
    sweep::D11Mode d11;
    int quadrature_points = 41;
    std::vector<int> radii_n;
    double radii_omega_mhz = 1.0;
    std::vector<int> merit_n;
    double merit_temperature_k = 0.0;
    sweep::Axis axis = sweep::Axis::omega_mu;
    std::vector<double> values;
    std::vector<int> forster_n;
};

/// Parses every value; InvalidArgument names the offending section.key.
Resolved resolve(const Settings& settings);

/// Loads a species by the [qdt] species setting (DataError when unreadable).
qdt::Species load_species(const std::string& spec);

}  // namespace rydgate::config
