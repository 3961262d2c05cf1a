#include "rydgate/dephasing.hpp"

#include "rydgate/error.hpp"
#include "rydgate/units.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

namespace rydgate::dephasing {

double motional_dephasing(const DephasingParams& p) {
    if (p.temperature_k < 0.0) throw InvalidArgument("temperature must be >= 0");
    if (p.pulse_time_s < 0.0) throw InvalidArgument("pulse time must be >= 0");
    if (p.temperature_k == 0.0 || p.pulse_time_s == 0.0 || p.w0_um == 0.0) return 1.0;
    if (!(p.mass_kg > 0.0) || !(p.lambda_sw_um > 0.0) || p.w0_um < 0.0) {
        throw InvalidArgument("dephasing needs mass > 0, Lambda > 0 and w0 >= 0");
    }
    const double v = std::sqrt(units::boltzmann * p.temperature_k / p.mass_kg);
    const double xi = p.w0_um * 1e-6 / v;
    const double tau = p.lambda_sw_um * 1e-6 / (units::two_pi * v);
    const double t = p.pulse_time_s;
    return std::exp(-(t * t / (tau * tau)) / (1.0 + t * t / (xi * xi)));
}

const GaussHermiteRule& gauss_hermite(int points) {
    if (points < 1) throw InvalidArgument("Gauss-Hermite needs at least one node");
    static std::mutex mutex;
    static std::map<int, GaussHermiteRule> cache;
    std::lock_guard lock(mutex);
    if (auto it = cache.find(points); it != cache.end()) return it->second;

    // Jacobi matrix of the Hermite recurrence: off-diagonal sqrt(k/2).
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(points, points);
    for (int k = 1; k < points; ++k) {
        jacobi(k, k - 1) = jacobi(k - 1, k) = std::sqrt(0.5 * k);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
    GaussHermiteRule rule;
    const double mu0 = std::sqrt(units::pi);
    for (int k = 0; k < points; ++k) {
        rule.nodes.push_back(solver.eigenvalues()(k));
        const double v0 = solver.eigenvectors()(0, k);
        rule.weights.push_back(mu0 * v0 * v0);
    }
    // Exact symmetry; the eigen-solver leaves ~1e-16 asymmetry otherwise.
    for (int k = 0; k < points / 2; ++k) {
        const int m = points - 1 - k;
        const double x = 0.5 * (rule.nodes[k] - rule.nodes[m]);
        const double w = 0.5 * (rule.weights[k] + rule.weights[m]);
        rule.nodes[k] = x;
        rule.nodes[m] = -x;
        rule.weights[k] = rule.weights[m] = w;
    }
    if (points % 2 == 1) rule.nodes[points / 2] = 0.0;
    return cache.emplace(points, std::move(rule)).first->second;
}

namespace {

double gaussian_mean(const std::function<double(double)>& f, double center, double sigma, int points) {
    const auto& rule = gauss_hermite(points);
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        const double s = center + std::sqrt(2.0) * sigma * rule.nodes[k];
        if (s <= 0.0) continue;
        num += rule.weights[k] * f(s);
        den += rule.weights[k];
    }
    if (den == 0.0) throw NumericalError("Gaussian site average has no support at s > 0");
    return num / den;
}

}  // namespace

SiteAverage site_average(const std::function<double(double)>& f0, double d11_um, double r_b6_um, double q,
                         int points, int max_points) {
    if (q < 0.0) throw InvalidArgument("q must be >= 0");
    if (!(d11_um > 0.0)) throw InvalidArgument("d11 must be positive");
    SiteAverage out;
    const double sigma = std::sqrt(2.0) * q * r_b6_um;
    if (sigma == 0.0) {
        out.f0_avg = f0(d11_um);
        return out;
    }
    out.f0_avg = gaussian_mean(f0, d11_um, sigma, points);
    out.points_used = points;
    if (max_points <= 0) return out;
    out.converged = false;
    for (int n = 2 * points; n <= std::max(max_points, 2 * points); n *= 2) {
        const double refined = gaussian_mean(f0, d11_um, sigma, n);
        out.quadrature_change = std::abs(refined - out.f0_avg);
        out.f0_avg = refined;
        out.points_used = n;
        if (out.quadrature_change <= 1e-6) {
            out.converged = true;
            return out;
        }
    }

    const double lo = std::max(0.0, d11_um - 10.0 * sigma);
    const double hi = d11_um + 10.0 * sigma;
    auto density = [&](double s) {
        const double z = (s - d11_um) / sigma;
        return std::exp(-0.5 * z * z);
    };
    using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;
    double err_num = 0.0, err_den = 0.0;
    const double num = Rule::integrate([&](double s) { return density(s) * f0(s); }, lo, hi, 10, 1e-8, &err_num);
    const double den = Rule::integrate(density, lo, hi, 10, 1e-8, &err_den);
    out.f0_avg = num / den;
    out.adaptive = true;
    out.points_used = 0;
    out.quadrature_change = (err_num + out.f0_avg * err_den) / den;
    out.converged = out.quadrature_change <= 1e-6;
    return out;
}

FidelityModel::FidelityModel(gate::GateParams params, double mass_kg, int quadrature_points)
    : params_(std::move(params)), mass_kg_(mass_kg), quadrature_points_(quadrature_points) {
    params_.validate();
    if (!(mass_kg_ > 0.0)) throw InvalidArgument("atomic mass must be positive");
    radii_ = lengthscales::blockade_radii(params_.c3_hz_um3, params_.c6_hz_um6, params_.effective_omega_eit(),
                                          params_.omega_mu);
}

FidelityModel FidelityModel::build(const qdt::Atom& atom, gate::GateParams params,
                                   const pair::ChannelOptions& channels, int quadrature_points) {
    const auto sys = lengthscales::system_coefficients(atom, params.n, params.lifetime_temperature_k(), channels);
    return from_coefficients(sys, std::move(params), atom.species().mass_kg, quadrature_points);
}

FidelityModel FidelityModel::from_coefficients(const lengthscales::SystemCoefficients& sys, gate::GateParams params,
                                               double mass_kg, int quadrature_points) {
    if (sys.levels.r_prime.n != params.n) throw InvalidArgument("coefficients were computed for a different n");
    params.c3_hz_um3 = sys.c3_hz_um3;
    params.c6_hz_um6 = sys.c6_hz_um6();
    params.gamma_r = sys.gamma_r;
    params.gamma_rp = sys.gamma_r_prime;
    params.gamma_p = sys.gamma_p;
    return FidelityModel(std::move(params), mass_kg, quadrature_points);
}

double FidelityModel::dephasing_factor() const {
    DephasingParams d;
    d.temperature_k = params_.temperature_k;
    d.mass_kg = mass_kg_;
    d.w0_um = params_.q * radii_.r_b6_um;
    d.lambda_sw_um = params_.lambda_sw_um;
    d.pulse_time_s = gate::pulse_time(params_.omega_mu);
    return motional_dephasing(d);
}

namespace {

// Only the adjacent pair jitters; the far pairs stay at the nominal distance.
gate::GateParams with_fixed_far(const gate::GateParams& params, double d11_um) {
    gate::GateParams fixed = params;
    fixed.d_far_um = params.d_far(d11_um);
    return fixed;
}

}  // namespace

double FidelityModel::quick_total(double d11_um) const {
    if (!(d11_um > 0.0)) throw InvalidArgument("d11 must be positive");
    const gate::GateParams fixed = with_fixed_far(params_, d11_um);
    auto f0 = [&](double s) { return gate::gate_fidelity_pointwise(fixed, s).f0; };
    return dephasing_factor() * site_average(f0, d11_um, radii_.r_b6_um, params_.q, quadrature_points_, 0).f0_avg;
}

AveragedFidelity FidelityModel::evaluate(double d11_um) const {
    if (!(d11_um > 0.0)) throw InvalidArgument("d11 must be positive");
    const gate::GateParams fixed = with_fixed_far(params_, d11_um);
    auto f0 = [&](double s) { return gate::gate_fidelity_pointwise(fixed, s).f0; };

    AveragedFidelity out;
    out.d11_used = d11_um;
    out.f0_point = f0(d11_um);
    const auto avg = site_average(f0, d11_um, radii_.r_b6_um, params_.q, quadrature_points_);
    out.f0_avg = avg.f0_avg;
    out.quadrature_converged = avg.converged;
    if (!avg.converged) {
        std::ostringstream msg;
        msg << "site average not converged: estimated error " << avg.quadrature_change;
        out.warning = msg.str();
    }
    out.eta_m = dephasing_factor();
    out.f_total = out.eta_m * out.f0_avg;
    out.coupling_budget = params_.eta_c * params_.eta_c;
    return out;
}

AveragedFidelity optimize_d11(const FidelityModel& model, const OptimizeOptions& options) {
    const auto& radii = model.radii();
    if (!radii.window_ok()) {
        std::ostringstream msg;
        msg << "empty gate window: R_b3 = " << radii.r_b3_um << " um <= max(R_b6, R_mu) = " << radii.window_low_um()
            << " um; lower Omega_mu, raise Omega or move to higher n";
        throw InvalidArgument(msg.str());
    }
    if (options.prescan_points < 3) throw InvalidArgument("prescan needs at least 3 points");
    const double lo = 0.8 * options.low_scale * radii.window_low_um();
    const double hi = 1.2 * options.high_scale * radii.window_high_um();

    auto value = [&](double d) { return model.evaluate(d).f_total; };
    // The pre-scan only has to find the right bracket; the fixed rule is enough.
    auto coarse = [&](double d) { return model.quick_total(d); };
    const int m = options.prescan_points;
    std::vector<double> grid(static_cast<std::size_t>(m));
    std::vector<double> vals(grid.size());
    std::size_t best = 0;
    for (int k = 0; k < m; ++k) {
        grid[k] = lo + (hi - lo) * k / (m - 1);
        vals[k] = coarse(grid[k]);
        if (vals[k] > vals[best]) best = static_cast<std::size_t>(k);
    }

    // The fixed rule can misplace the peak by a cell or two; re-score the
    // neighbourhood with the converged average before bracketing.
    const std::size_t reach = 4;
    const std::size_t first = best > reach ? best - reach : 0;
    const std::size_t last = std::min(best + reach, grid.size() - 1);
    double best_full = -1.0;
    for (std::size_t k = first; k <= last; ++k) {
        const double v = value(grid[k]);
        if (v > best_full) {
            best_full = v;
            best = k;
        }
    }

    double a = grid[best == 0 ? 0 : best - 1];
    double b = grid[std::min(best + 1, grid.size() - 1)];
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - ratio * (b - a), x2 = a + ratio * (b - a);
    double f1 = value(x1), f2 = value(x2);
    while (b - a > options.tolerance_um) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - ratio * (b - a);
            f1 = value(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + ratio * (b - a);
            f2 = value(x2);
        }
    }
    const double d_best = f1 >= f2 ? x1 : x2;
    auto result = model.evaluate(d_best);
    const auto at_grid = model.evaluate(grid[best]);
    return at_grid.f_total > result.f_total ? at_grid : result;
}

}  // namespace rydgate::dephasing
