#pragma once

// Two-atom dipole-dipole interactions: resonant C3 exchange, Förster channels,
// second-order C6 and a brute-force pair-Hamiltonian diagonalization used to
// validate both asymptotes.
//
// Energies are E/h in Hz; C3 in Hz um^3, C6 in Hz um^6 (divide by 1e9 for GHz).

#include "rydgate/qdt.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rydgate::pair {

using qdt::Atom;
using qdt::RydbergLevel;

/// Atom A in level a, atom B in level b; two_M = 2 (m_a + m_b) about the interatomic axis.
struct PairState {
    RydbergLevel a;
    RydbergLevel b;
    int two_M = 0;

    std::string label() const;
};

struct ForsterChannel {
    PairState initial;
    PairState final_state;
    double defect_hz = 0.0;        // E(final) - E(initial)
    double coupling_hz_um3 = 0.0;  // RMS coupling out of the pair manifold (both radial integrals included)
    double c6_contribution_hz_um6 = 0.0;
    bool resonant = false;
};

/// Which eigenvalue of the second-order operator on the degenerate pair
/// manifold (|ab>, |ba>, all m in the M block) is reported as C6.
enum class C6Branch {
    smallest,  // smallest magnitude: the weakest-shifted stationary pair state
    mean,      // trace / N: the direct (diagonal) van der Waals shift
    largest,   // largest magnitude
};

C6Branch parse_c6_branch(const std::string& name);
std::string to_string(C6Branch branch);

struct ChannelOptions {
    int max_delta_n = 5;
    int max_l = 2;
    /// |defect| below this marks a Förster resonance (E/h, Hz).
    double resonance_threshold_hz = 10e6;
    C6Branch branch = C6Branch::smallest;
};

struct InteractionCoefficients {
    std::optional<double> c3_hz_um3;
    double c6_hz_um6 = 0.0;  // signed: positive means the pair shifts upward
    double c6_direct_hz_um6 = 0.0;
    std::vector<double> c6_branches_hz_um6;  // ascending
    C6Branch branch = C6Branch::smallest;
    /// Channel contributions are projections onto the selected branch and sum to c6.
    std::vector<ForsterChannel> channels;
};

struct ResonantCoupling {
    double c3_hz_um3 = 0.0;        // magnitude of the strongest branch
    std::vector<double> branches;  // signed first-order shifts (Hz um^3), sorted
    double angular = 0.0;
    double radial_a = 0.0;  // <a|r|c> in a0
    double radial_b = 0.0;  // <b|r|d> in a0
};

/// Resonant exchange |r' p> <-> |p r'> in the M block; throws InvalidArgument
/// when the two levels are not dipole coupled.
ResonantCoupling c3_coefficient(const Atom& atom, const RydbergLevel& r_prime, const RydbergLevel& p, int two_M = 0);

/// Dipole-allowed two-atom channels out of `pair` (or its swapped ordering),
/// sorted by |coupling^2 / defect| descending. Contributions are direct (mean-branch) values.
std::vector<ForsterChannel> forster_channels(const Atom& atom, const PairState& pair, const ChannelOptions& options = {});

/// Second-order C6 from the effective operator W = -sum_k V P_k V / defect_k on
/// the degenerate pair manifold; the reported value is the eigenvalue picked by
/// options.branch. Throws ResonanceError if any channel is within the resonance
/// threshold.
InteractionCoefficients c6_coefficient(const Atom& atom, const PairState& pair, const ChannelOptions& options = {});

struct BasisSpec {
    int max_delta_n = 3;
    int max_l = 3;
    /// Pair states further than this from the initial pair energy are dropped.
    /// Zero selects three times the local level spacing 2R/n*^3.
    double energy_window_hz = 0.0;
};

struct PairShift {
    double mean_shift_hz = 0.0;       // mean of the eigenvalues adiabatically connected to the pair
    std::vector<double> shifts_hz;    // those eigenvalues, ascending
    double min_overlap = 0.0;         // smallest weight of a selected eigenvector on the pair manifold
    std::size_t basis_size = 0;
};

/// Diagonalizes the truncated two-atom Hamiltonian (pair energies plus V_dd at
/// distance d) in the M block. The pair manifold is every m configuration of
/// |ab> and of the swapped |ba>. Throws NumericalError when a selected
/// eigenvector has less than half its weight on the manifold.
PairShift pair_hamiltonian_shift(const Atom& atom, const PairState& pair, double distance_um,
                                 const BasisSpec& basis = {});

/// Levels dipole-coupled to `level` within the channel truncation.
std::vector<RydbergLevel> dipole_partners(const qdt::Species& species, const RydbergLevel& level, int max_delta_n,
                                          int max_l);

double c6_au_to_hz_um6(double c6_au);
double c6_hz_um6_to_au(double c6_hz_um6);

}  // namespace rydgate::pair
