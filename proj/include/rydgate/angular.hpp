#pragma once

// Angular-momentum algebra for electric-dipole couplings between fine-structure
// levels, with the quantization axis along the interatomic axis.
//
// All angular momenta are passed doubled (two_j = 2j) so half-integers are exact.

#include "rydgate/qdt.hpp"

#include <Eigen/Dense>

#include <vector>

namespace rydgate::angular {

double wigner_3j(int two_j1, int two_j2, int two_j3, int two_m1, int two_m2, int two_m3);
double wigner_6j(int two_j1, int two_j2, int two_j3, int two_j4, int two_j5, int two_j6);

/// Angular part of <l j m| r_q |l' j' m'> (the factor multiplying the radial integral).
double dipole_angular(const qdt::RydbergLevel& bra, int two_m_bra, const qdt::RydbergLevel& ket, int two_m_ket,
                      int q);

/// Angular part of <c mc, d md| V_dd |a ma, b mb> in units of R_ac R_bd / R^3:
///   -sum_q (1 + delta_q0) <c mc|r_q|a ma> <d md|r_-q|b mb>.
double pair_coupling(const qdt::RydbergLevel& a, int two_ma, const qdt::RydbergLevel& b, int two_mb,
                     const qdt::RydbergLevel& c, int two_mc, const qdt::RydbergLevel& d, int two_md);

/// Magnetic sub-level configurations (2 m_a, 2 m_b) with m_a + m_b = M.
std::vector<std::pair<int, int>> m_configurations(const qdt::RydbergLevel& a, const qdt::RydbergLevel& b, int two_M);

/// Coupling matrix between the M blocks of |ab> (columns) and |cd> (rows).
Eigen::MatrixXd coupling_block(const qdt::RydbergLevel& a, const qdt::RydbergLevel& b, const qdt::RydbergLevel& c,
                               const qdt::RydbergLevel& d, int two_M);

/// Geometric factor of the M block: largest singular value of coupling_block.
/// Zero for selection-rule-forbidden channels. Invariant under swapping the atoms.
double angular_factor(const qdt::RydbergLevel& a, const qdt::RydbergLevel& b, const qdt::RydbergLevel& c,
                      const qdt::RydbergLevel& d, int two_M = 0);

/// Root-mean-square channel strength over the initial M block:
/// sqrt(|coupling_block|_F^2 / N_initial). Enters second-order sums.
double channel_strength(const qdt::RydbergLevel& a, const qdt::RydbergLevel& b, const qdt::RydbergLevel& c,
                        const qdt::RydbergLevel& d, int two_M = 0);

/// Dipole selection rule between two fine-structure levels (|dL| = 1, |dJ| <= 1).
bool dipole_allowed(const qdt::RydbergLevel& a, const qdt::RydbergLevel& b);

}  // namespace rydgate::angular
