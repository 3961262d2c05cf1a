#include "rydgate/angular.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>

namespace rydgate::angular {

namespace {

constexpr int kMaxFactorial = 170;

const std::array<double, kMaxFactorial + 1>& factorial_table() {
    static const auto table = [] {
        std::array<double, kMaxFactorial + 1> t{};
        t[0] = 1.0;
        for (int i = 1; i <= kMaxFactorial; ++i) t[i] = t[i - 1] * i;
        return t;
    }();
    return table;
}

// Factorial of a doubled argument; the caller guarantees two_n is even and >= 0.
double fact2(int two_n) { return factorial_table()[two_n / 2]; }

bool triangle(int a, int b, int c) {
    return c >= std::abs(a - b) && c <= a + b && ((a + b + c) % 2 == 0);
}

double delta_coefficient(int a, int b, int c) {
    return fact2(a + b - c) * fact2(a - b + c) * fact2(-a + b + c) / fact2(a + b + c + 2);
}

int parity_sign(int two_exponent) {
    // (-1)^(two_exponent / 2); two_exponent is even.
    return ((two_exponent / 2) % 2 == 0) ? 1 : -1;
}

}  // namespace

double wigner_3j(int j1, int j2, int j3, int m1, int m2, int m3) {
    if (m1 + m2 + m3 != 0) return 0.0;
    if (!triangle(j1, j2, j3)) return 0.0;
    if (std::abs(m1) > j1 || std::abs(m2) > j2 || std::abs(m3) > j3) return 0.0;
    if ((j1 + m1) % 2 || (j2 + m2) % 2 || (j3 + m3) % 2) return 0.0;

    const int k_min = std::max({0, j2 - j3 - m1, j1 - j3 + m2});
    const int k_max = std::min({j1 + j2 - j3, j1 - m1, j2 + m2});
    double sum = 0.0;
    for (int k = k_min; k <= k_max; k += 2) {
        const double denom = fact2(k) * fact2(j3 - j2 + k + m1) * fact2(j3 - j1 + k - m2) * fact2(j1 + j2 - j3 - k) *
                             fact2(j1 - k - m1) * fact2(j2 - k + m2);
        sum += parity_sign(k) / denom;
    }
    const double root = std::sqrt(delta_coefficient(j1, j2, j3) * fact2(j1 + m1) * fact2(j1 - m1) * fact2(j2 + m2) *
                                  fact2(j2 - m2) * fact2(j3 + m3) * fact2(j3 - m3));
    return parity_sign(j1 - j2 - m3) * root * sum;
}

double wigner_6j(int j1, int j2, int j3, int j4, int j5, int j6) {
    if (!triangle(j1, j2, j3) || !triangle(j1, j5, j6) || !triangle(j4, j2, j6) || !triangle(j4, j5, j3)) return 0.0;

    const int t_min = std::max({j1 + j2 + j3, j1 + j5 + j6, j4 + j2 + j6, j4 + j5 + j3});
    const int t_max = std::min({j1 + j2 + j4 + j5, j2 + j3 + j5 + j6, j3 + j1 + j6 + j4});
    double sum = 0.0;
    for (int t = t_min; t <= t_max; t += 2) {
        const double denom = fact2(t - j1 - j2 - j3) * fact2(t - j1 - j5 - j6) * fact2(t - j4 - j2 - j6) *
                             fact2(t - j4 - j5 - j3) * fact2(j1 + j2 + j4 + j5 - t) * fact2(j2 + j3 + j5 + j6 - t) *
                             fact2(j3 + j1 + j6 + j4 - t);
        sum += parity_sign(t) * fact2(t + 2) / denom;
    }
    const double root = std::sqrt(delta_coefficient(j1, j2, j3) * delta_coefficient(j1, j5, j6) *
                                  delta_coefficient(j4, j2, j6) * delta_coefficient(j4, j5, j3));
    return root * sum;
}

bool dipole_allowed(const qdt::RydbergLevel& a, const qdt::RydbergLevel& b) {
    return std::abs(a.l - b.l) == 1 && std::abs(a.two_j - b.two_j) <= 2;
}

double dipole_angular(const qdt::RydbergLevel& bra, int two_m_bra, const qdt::RydbergLevel& ket, int two_m_ket,
                      int q) {
    if (!dipole_allowed(bra, ket)) return 0.0;
    const int lb = 2 * bra.l;
    const int lk = 2 * ket.l;
    const int jb = bra.two_j;
    const int jk = ket.two_j;
    // Wigner-Eckart in j, then decouple the spin (s = 1/2) to reach <l||C1||l'>.
    const double m_part = parity_sign(jb - two_m_bra) * wigner_3j(jb, 2, jk, -two_m_bra, 2 * q, two_m_ket);
    if (m_part == 0.0) return 0.0;
    const double j_reduced = parity_sign(lb + 1 + jk + 2) * std::sqrt((jb + 1.0) * (jk + 1.0)) *
                             wigner_6j(lb, jb, 1, jk, lk, 2);
    const double l_reduced = parity_sign(lb) * std::sqrt((lb + 1.0) * (lk + 1.0)) * wigner_3j(lb, 2, lk, 0, 0, 0);
    return m_part * j_reduced * l_reduced;
}

double pair_coupling(const qdt::RydbergLevel& a, int two_ma, const qdt::RydbergLevel& b, int two_mb,
                     const qdt::RydbergLevel& c, int two_mc, const qdt::RydbergLevel& d, int two_md) {
    double sum = 0.0;
    for (int q = -1; q <= 1; ++q) {
        const double weight = (q == 0) ? 2.0 : 1.0;
        const double first = dipole_angular(c, two_mc, a, two_ma, q);
        if (first == 0.0) continue;
        sum += weight * first * dipole_angular(d, two_md, b, two_mb, -q);
    }
    return -sum;
}

std::vector<std::pair<int, int>> m_configurations(const qdt::RydbergLevel& a, const qdt::RydbergLevel& b, int two_M) {
    std::vector<std::pair<int, int>> out;
    for (int ma = -a.two_j; ma <= a.two_j; ma += 2) {
        const int mb = two_M - ma;
        if (std::abs(mb) <= b.two_j && (b.two_j - mb) % 2 == 0) out.emplace_back(ma, mb);
    }
    return out;
}

Eigen::MatrixXd coupling_block(const qdt::RydbergLevel& a, const qdt::RydbergLevel& b, const qdt::RydbergLevel& c,
                               const qdt::RydbergLevel& d, int two_M) {
    const auto initial = m_configurations(a, b, two_M);
    const auto final_ = m_configurations(c, d, two_M);
    Eigen::MatrixXd block = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(final_.size()),
                                                  static_cast<Eigen::Index>(initial.size()));
    for (std::size_t f = 0; f < final_.size(); ++f) {
        for (std::size_t i = 0; i < initial.size(); ++i) {
            block(static_cast<Eigen::Index>(f), static_cast<Eigen::Index>(i)) =
                pair_coupling(a, initial[i].first, b, initial[i].second, c, final_[f].first, d, final_[f].second);
        }
    }
    return block;
}

double angular_factor(const qdt::RydbergLevel& a, const qdt::RydbergLevel& b, const qdt::RydbergLevel& c,
                      const qdt::RydbergLevel& d, int two_M) {
    if (!dipole_allowed(a, c) || !dipole_allowed(b, d)) return 0.0;
    const Eigen::MatrixXd block = coupling_block(a, b, c, d, two_M);
    if (block.size() == 0) return 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(block);
    return svd.singularValues()(0);
}

double channel_strength(const qdt::RydbergLevel& a, const qdt::RydbergLevel& b, const qdt::RydbergLevel& c,
                        const qdt::RydbergLevel& d, int two_M) {
    if (!dipole_allowed(a, c) || !dipole_allowed(b, d)) return 0.0;
    const Eigen::MatrixXd block = coupling_block(a, b, c, d, two_M);
    if (block.cols() == 0) return 0.0;
    return std::sqrt(block.squaredNorm() / static_cast<double>(block.cols()));
}

}  // namespace rydgate::angular
