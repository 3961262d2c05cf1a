#pragma once

// From pointwise F0(d11) to the reported fidelity: Gaussian averaging over the
// site separation, motional dephasing of the stored spin wave, and the d11
// optimizer. The storage efficiency eta_c is carried as a separate budget.

#include "rydgate/gate.hpp"
#include "rydgate/lengthscales.hpp"

#include <functional>
#include <string>
#include <vector>

namespace rydgate::dephasing {

struct DephasingParams {
    double temperature_k = 0.0;
    double mass_kg = 0.0;
    double w0_um = 0.0;  // site waist
    double lambda_sw_um = 1.25;
    double pulse_time_s = 0.0;
};

/// eta_m = exp[-(t^2/tau^2) / (1 + t^2/xi^2)], v = sqrt(kT/m), xi = w0/v, tau = Lambda/(2 pi v).
double motional_dephasing(const DephasingParams& params);

/// Nodes and weights for integrals against exp(-x^2) (Golub-Welsch).
struct GaussHermiteRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussHermiteRule& gauss_hermite(int points);

struct SiteAverage {
    double f0_avg = 0.0;
    double quadrature_change = 0.0;  // |result(2N nodes) - result(N nodes)| at the last doubling
    int points_used = 0;             // Gauss-Hermite nodes, 0 when the adaptive fallback was used
    bool adaptive = false;
    bool converged = true;
};

/// Mean of f0(s) for s ~ Normal(d11, w^2), w = sqrt(2) q r_b6, restricted to s > 0
/// with the weights renormalized. q = 0 returns f0(d11).
///
/// Gauss-Hermite with `points` nodes, doubled until two successive rules agree
/// to 1e-6. If that has not happened by `max_points`, the integrand has
/// structure the rule cannot resolve (F0 oscillates quickly inside R_mu) and
/// adaptive Gauss-Kronrod over d11 +- 10 w takes over; converged = false only
/// if that also misses its error target. max_points <= 0 evaluates the single
/// `points` rule without any check.
SiteAverage site_average(const std::function<double(double)>& f0, double d11_um, double r_b6_um, double q,
                         int points = 41, int max_points = 164);

struct AveragedFidelity {
    double f0_avg = 0.0;
    double f0_point = 0.0;  // F0 at d11 itself
    double eta_m = 1.0;
    double f_total = 0.0;   // eta_m * f0_avg
    double d11_used = 0.0;
    double coupling_budget = 0.0;  // eta_c^2, never folded into f_total
    bool quadrature_converged = true;
    std::string warning;
};

/// Gate parameters with all atomic inputs resolved, plus the derived radii.
class FidelityModel {
public:
    FidelityModel(gate::GateParams params, double mass_kg, int quadrature_points = 41);

    /// Fills C3, C6 and the three decay rates from atomic structure for params.n.
    /// Throws ResonanceError for a Förster-resonant (nS, (n+1)S) pair.
    static FidelityModel build(const qdt::Atom& atom, gate::GateParams params,
                               const pair::ChannelOptions& channels = {}, int quadrature_points = 41);
    /// Same, from coefficients computed earlier (they must belong to params.n).
    static FidelityModel from_coefficients(const lengthscales::SystemCoefficients& sys, gate::GateParams params,
                                           double mass_kg, int quadrature_points = 41);

    const gate::GateParams& params() const { return params_; }
    const lengthscales::Lengthscales& radii() const { return radii_; }
    double mass_kg() const { return mass_kg_; }

    double dephasing_factor() const;
    AveragedFidelity evaluate(double d11_um) const;
    /// f_total from the fixed Gauss-Hermite rule alone; cheap, for pre-scans.
    double quick_total(double d11_um) const;

private:
    gate::GateParams params_;
    lengthscales::Lengthscales radii_;
    double mass_kg_;
    int quadrature_points_;
};

struct OptimizeOptions {
    double tolerance_um = 1e-3;
    int prescan_points = 64;
    double low_scale = 1.0;   // perturbs the lower bracket end
    double high_scale = 1.0;  // perturbs the upper bracket end
};

/// Maximizes f_total over d11 in [0.8 max(R_b6, R_mu), 1.2 R_b3]: grid pre-scan,
/// then golden section around the best grid point. Throws InvalidArgument for
/// an empty gate window.
AveragedFidelity optimize_d11(const FidelityModel& model, const OptimizeOptions& options = {});

}  // namespace rydgate::dephasing
