#include "rydgate/pair.hpp"

#include "rydgate/angular.hpp"
#include "rydgate/error.hpp"
#include "rydgate/units.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <tuple>

namespace rydgate::pair {

namespace {

bool has_defect(const qdt::Species& species, int l, int two_j) {
    return l > 4 || species.find_defect(l, two_j) != nullptr;
}

double pair_energy(const Atom& atom, const RydbergLevel& a, const RydbergLevel& b) {
    return atom.energy(a) + atom.energy(b);
}

struct SingleState {
    RydbergLevel level;
    int two_m;
    double energy;
};

}  // namespace

std::string PairState::label() const { return "|" + a.label() + "," + b.label() + ">"; }

double c6_au_to_hz_um6(double c6_au) { return c6_au * units::c6_au_to_hz_um6; }
double c6_hz_um6_to_au(double c6_hz_um6) { return c6_hz_um6 / units::c6_au_to_hz_um6; }

std::vector<RydbergLevel> dipole_partners(const qdt::Species& species, const RydbergLevel& level, int max_delta_n,
                                          int max_l) {
    std::vector<RydbergLevel> out;
    for (int n = level.n - max_delta_n; n <= level.n + max_delta_n; ++n) {
        if (n < species.min_n) continue;
        for (int l : {level.l - 1, level.l + 1}) {
            if (l < 0 || l > max_l || l >= n) continue;
            for (int two_j : {2 * l - 1, 2 * l + 1}) {
                if (two_j < 1 || std::abs(two_j - level.two_j) > 2) continue;
                if (!has_defect(species, l, two_j)) continue;
                out.push_back(RydbergLevel{n, l, two_j});
            }
        }
    }
    return out;
}

ResonantCoupling c3_coefficient(const Atom& atom, const RydbergLevel& r_prime, const RydbergLevel& p, int two_M) {
    if (!angular::dipole_allowed(r_prime, p)) {
        throw InvalidArgument("C3 needs a dipole-allowed pair (|dL| = 1, |dJ| <= 1): " + r_prime.label() + " and " +
                              p.label());
    }
    // First-order block on {|r' p>, |p r'>}: off-diagonal exchange couplings only.
    const Eigen::MatrixXd exchange = angular::coupling_block(r_prime, p, p, r_prime, two_M);
    const auto n = exchange.rows();
    const auto m = exchange.cols();
    Eigen::MatrixXd block = Eigen::MatrixXd::Zero(n + m, n + m);
    block.topRightCorner(m, n) = exchange.transpose();
    block.bottomLeftCorner(n, m) = exchange;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(block, Eigen::EigenvaluesOnly);

    ResonantCoupling out;
    out.radial_a = atom.radial_matrix_element(r_prime, p);
    out.radial_b = out.radial_a;
    const double radial = out.radial_a * out.radial_b;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const double v = solver.eigenvalues()(i) * radial * units::c3_au_to_hz_um3;
        if (out.branches.empty() || std::abs(v - out.branches.back()) > 1e-9 * std::abs(v)) out.branches.push_back(v);
    }
    out.angular = angular::angular_factor(r_prime, p, p, r_prime, two_M);
    out.c3_hz_um3 = out.angular * std::abs(radial) * units::c3_au_to_hz_um3;
    return out;
}

namespace {

struct ManifoldState {
    RydbergLevel a;
    RydbergLevel b;
    int two_ma;
    int two_mb;
};

// Every m configuration of |ab> in the M block, followed by those of |ba>.
std::vector<ManifoldState> pair_manifold(const PairState& pair) {
    std::vector<ManifoldState> out;
    for (const auto& [ma, mb] : angular::m_configurations(pair.a, pair.b, pair.two_M)) {
        out.push_back({pair.a, pair.b, ma, mb});
    }
    if (pair.a != pair.b) {
        for (const auto& [ma, mb] : angular::m_configurations(pair.b, pair.a, pair.two_M)) {
            out.push_back({pair.b, pair.a, ma, mb});
        }
    }
    return out;
}

struct ChannelTerm {
    ForsterChannel channel;
    Eigen::MatrixXd w;  // second-order operator on the manifold, Hz um^6
};

std::vector<ChannelTerm> channel_terms(const Atom& atom, const PairState& pair, const ChannelOptions& options) {
    if (options.max_delta_n < 0) throw InvalidArgument("max_delta_n must be >= 0");
    const auto& species = atom.species();
    const double e_initial = pair_energy(atom, pair.a, pair.b);
    const auto manifold = pair_manifold(pair);
    const auto dim = static_cast<Eigen::Index>(manifold.size());

    std::vector<RydbergLevel> targets = dipole_partners(species, pair.a, options.max_delta_n, options.max_l);
    if (pair.a != pair.b) {
        for (const auto& lv : dipole_partners(species, pair.b, options.max_delta_n, options.max_l)) targets.push_back(lv);
    }
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

    auto radial = [&](const RydbergLevel& x, const RydbergLevel& y) {
        return angular::dipole_allowed(x, y) ? atom.radial_matrix_element(x, y) : 0.0;
    };

    std::vector<ChannelTerm> terms;
    for (const auto& c : targets) {
        for (const auto& d : targets) {
            const auto finals = angular::m_configurations(c, d, pair.two_M);
            Eigen::MatrixXd u = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(finals.size()), dim);
            bool any = false;
            for (Eigen::Index i = 0; i < dim; ++i) {
                const auto& st = manifold[static_cast<std::size_t>(i)];
                const double rad = radial(st.a, c) * radial(st.b, d);
                if (rad == 0.0) continue;
                for (std::size_t f = 0; f < finals.size(); ++f) {
                    const double ang = angular::pair_coupling(st.a, st.two_ma, st.b, st.two_mb, c, finals[f].first, d,
                                                              finals[f].second);
                    u(static_cast<Eigen::Index>(f), i) = ang * rad;
                    any = any || ang != 0.0;
                }
            }
            if (!any) continue;

            ChannelTerm term;
            auto& ch = term.channel;
            ch.initial = pair;
            ch.final_state = PairState{c, d, pair.two_M};
            ch.defect_hz = pair_energy(atom, c, d) - e_initial;
            ch.coupling_hz_um3 = std::sqrt(u.squaredNorm() / static_cast<double>(dim)) * units::c3_au_to_hz_um3;
            ch.resonant = std::abs(ch.defect_hz) < options.resonance_threshold_hz;
            const double defect_au = ch.defect_hz / units::hartree_hz;
            term.w = -(u.transpose() * u) / defect_au * units::c6_au_to_hz_um6;
            ch.c6_contribution_hz_um6 = term.w.trace() / static_cast<double>(dim);
            terms.push_back(std::move(term));
        }
    }
    std::stable_sort(terms.begin(), terms.end(), [](const ChannelTerm& x, const ChannelTerm& y) {
        const double wx = std::abs(x.channel.c6_contribution_hz_um6);
        const double wy = std::abs(y.channel.c6_contribution_hz_um6);
        if (wx != wy) return wx > wy;
        return std::tie(x.channel.final_state.a, x.channel.final_state.b) <
               std::tie(y.channel.final_state.a, y.channel.final_state.b);
    });
    return terms;
}

}  // namespace

C6Branch parse_c6_branch(const std::string& name) {
    if (name == "smallest") return C6Branch::smallest;
    if (name == "mean" || name == "direct") return C6Branch::mean;
    if (name == "largest") return C6Branch::largest;
    throw InvalidArgument("unknown C6 branch '" + name + "' (expected smallest, mean or largest)");
}

std::string to_string(C6Branch branch) {
    switch (branch) {
        case C6Branch::smallest: return "smallest";
        case C6Branch::mean: return "mean";
        case C6Branch::largest: return "largest";
    }
    return "?";
}

std::vector<ForsterChannel> forster_channels(const Atom& atom, const PairState& pair, const ChannelOptions& options) {
    std::vector<ForsterChannel> out;
    for (auto& term : channel_terms(atom, pair, options)) out.push_back(std::move(term.channel));
    return out;
}

InteractionCoefficients c6_coefficient(const Atom& atom, const PairState& pair, const ChannelOptions& options) {
    auto terms = channel_terms(atom, pair, options);
    for (const auto& t : terms) {
        if (t.channel.resonant) {
            throw ResonanceError(pair.label() + " is Förster-resonant with " + t.channel.final_state.label() +
                                 " (defect " + std::to_string(t.channel.defect_hz / 1e6) +
                                 " MHz); the perturbative C6 is meaningless, choose another pair");
        }
    }

    const auto dim = static_cast<Eigen::Index>(pair_manifold(pair).size());
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(dim, dim);
    // Fixed smallest-first order keeps the sum reproducible.
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) w += it->w;

    InteractionCoefficients out;
    out.branch = options.branch;
    out.c6_direct_hz_um6 = w.trace() / static_cast<double>(dim);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(w);
    for (Eigen::Index i = 0; i < dim; ++i) out.c6_branches_hz_um6.push_back(solver.eigenvalues()(i));

    if (options.branch == C6Branch::mean) {
        out.c6_hz_um6 = out.c6_direct_hz_um6;
        for (const auto& t : terms) out.channels.push_back(t.channel);
    } else {
        Eigen::Index pick = 0;
        for (Eigen::Index i = 1; i < dim; ++i) {
            const double cur = std::abs(solver.eigenvalues()(i));
            const double best = std::abs(solver.eigenvalues()(pick));
            if (options.branch == C6Branch::smallest ? cur < best : cur > best) pick = i;
        }
        const Eigen::VectorXd v = solver.eigenvectors().col(pick);
        double total = 0.0;
        for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
            it->channel.c6_contribution_hz_um6 = v.dot(it->w * v);
        }
        for (const auto& t : terms) out.channels.push_back(t.channel);
        for (auto it = out.channels.rbegin(); it != out.channels.rend(); ++it) total += it->c6_contribution_hz_um6;
        out.c6_hz_um6 = total;
    }
    return out;
}

PairShift pair_hamiltonian_shift(const Atom& atom, const PairState& pair, double distance_um, const BasisSpec& basis) {
    if (!(distance_um > 0.0)) throw InvalidArgument("pair distance must be positive");
    const auto& species = atom.species();
    const double e0 = pair_energy(atom, pair.a, pair.b);

    double window = basis.energy_window_hz;
    if (window <= 0.0) {
        const double n_star = std::min(qdt::effective_quantum_number(species, pair.a),
                                       qdt::effective_quantum_number(species, pair.b));
        window = 3.0 * 2.0 * species.rydberg_hz / (n_star * n_star * n_star);
    }

    // Single-atom states shared by both atoms.
    const int n_lo = std::min(pair.a.n, pair.b.n) - basis.max_delta_n;
    const int n_hi = std::max(pair.a.n, pair.b.n) + basis.max_delta_n;
    std::vector<SingleState> singles;
    for (int n = std::max(n_lo, species.min_n); n <= n_hi; ++n) {
        for (int l = 0; l <= basis.max_l && l < n; ++l) {
            for (int two_j : {2 * l - 1, 2 * l + 1}) {
                if (two_j < 1 || !has_defect(species, l, two_j)) continue;
                const RydbergLevel level{n, l, two_j};
                const double e = atom.energy(level);
                for (int m = -two_j; m <= two_j; m += 2) singles.push_back({level, m, e});
            }
        }
    }

    const int parity = (pair.a.l + pair.b.l) % 2;
    std::vector<std::pair<std::size_t, std::size_t>> states;
    for (std::size_t i = 0; i < singles.size(); ++i) {
        for (std::size_t j = 0; j < singles.size(); ++j) {
            if (singles[i].two_m + singles[j].two_m != pair.two_M) continue;
            if ((singles[i].level.l + singles[j].level.l) % 2 != parity) continue;
            if (std::abs(singles[i].energy + singles[j].energy - e0) > window) continue;
            states.emplace_back(i, j);
        }
    }
    const auto dim = static_cast<Eigen::Index>(states.size());

    const double d_au = distance_um / units::bohr_radius_um;
    const double scale = units::hartree_hz / (d_au * d_au * d_au);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    std::vector<char> in_manifold(states.size(), 0);
    for (Eigen::Index s = 0; s < dim; ++s) {
        const auto& [i, j] = states[static_cast<std::size_t>(s)];
        h(s, s) = singles[i].energy + singles[j].energy - e0;
        const auto& la = singles[i].level;
        const auto& lb = singles[j].level;
        in_manifold[static_cast<std::size_t>(s)] =
            (la == pair.a && lb == pair.b) || (la == pair.b && lb == pair.a);
    }
    for (Eigen::Index s = 0; s < dim; ++s) {
        const auto& [ia, ib] = states[static_cast<std::size_t>(s)];
        for (Eigen::Index t = s + 1; t < dim; ++t) {
            const auto& [ic, id] = states[static_cast<std::size_t>(t)];
            const auto& a = singles[ia];
            const auto& b = singles[ib];
            const auto& c = singles[ic];
            const auto& d = singles[id];
            if (!angular::dipole_allowed(a.level, c.level) || !angular::dipole_allowed(b.level, d.level)) continue;
            const double ang = angular::pair_coupling(a.level, a.two_m, b.level, b.two_m, c.level, c.two_m, d.level,
                                                      d.two_m);
            if (ang == 0.0) continue;
            const double v = ang * atom.radial_matrix_element(a.level, c.level) *
                             atom.radial_matrix_element(b.level, d.level) * scale;
            h(s, t) = v;
            h(t, s) = v;
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    const auto& vecs = solver.eigenvectors();
    std::vector<double> weight(static_cast<std::size_t>(dim), 0.0);
    for (Eigen::Index k = 0; k < dim; ++k) {
        double w = 0.0;
        for (Eigen::Index s = 0; s < dim; ++s) {
            if (in_manifold[static_cast<std::size_t>(s)]) w += vecs(s, k) * vecs(s, k);
        }
        weight[static_cast<std::size_t>(k)] = w;
    }
    const auto manifold_size =
        static_cast<std::size_t>(std::count(in_manifold.begin(), in_manifold.end(), static_cast<char>(1)));
    std::vector<std::size_t> order(static_cast<std::size_t>(dim));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return weight[x] > weight[y]; });

    PairShift out;
    out.basis_size = states.size();
    out.min_overlap = 1.0;
    for (std::size_t k = 0; k < manifold_size; ++k) {
        const std::size_t idx = order[k];
        out.shifts_hz.push_back(solver.eigenvalues()(static_cast<Eigen::Index>(idx)));
        out.min_overlap = std::min(out.min_overlap, weight[idx]);
    }
    if (out.min_overlap < 0.5) {
        throw NumericalError(pair.label() + " at d=" + std::to_string(distance_um) +
                             " um: eigenvector overlap with the pair manifold fell to " +
                             std::to_string(out.min_overlap) +
                             " (level crossing); increase the distance or enlarge the basis");
    }
    std::sort(out.shifts_hz.begin(), out.shifts_hz.end());
    out.mean_shift_hz = std::accumulate(out.shifts_hz.begin(), out.shifts_hz.end(), 0.0) /
                        static_cast<double>(out.shifts_hz.size());
    return out;
}

}  // namespace rydgate::pair
