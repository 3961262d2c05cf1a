#include "rydgate/dephasing.hpp"
#include "rydgate/error.hpp"
#include "rydgate/units.hpp"

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace rydgate;

namespace {

// Frequencies cross the Python boundary as MHz of ordinary frequency, like the CLI.
gate::GateParams make_params(int n, double omega_mu_mhz, double omega_c_mhz, double omega_eit_mhz,
                             double temperature_uk, double q, double lambda_um, double eta_c,
                             std::optional<double> environment_temperature_k, double d_far_factor) {
    gate::GateParams p;
    p.n = n;
    p.omega_mu = units::mhz_to_rad_per_s(omega_mu_mhz);
    p.omega_c = units::mhz_to_rad_per_s(omega_c_mhz);
    p.omega_eit = units::mhz_to_rad_per_s(omega_eit_mhz);
    p.temperature_k = temperature_uk * 1e-6;
    p.q = q;
    p.lambda_sw_um = lambda_um;
    p.eta_c = eta_c;
    p.environment_temperature_k = environment_temperature_k;
    p.d_far_factor = d_far_factor;
    return p;
}

pair::ChannelOptions make_channels(int max_delta_n, int max_l, double threshold_mhz, const std::string& branch) {
    pair::ChannelOptions c;
    c.max_delta_n = max_delta_n;
    c.max_l = max_l;
    c.resonance_threshold_hz = threshold_mhz * 1e6;
    c.branch = pair::parse_c6_branch(branch);
    return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "rydgate C++ core";
    m.def("version", [] { return std::string(RYDGATE_VERSION); });

    py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception<ResonanceError>(m, "ResonanceError", PyExc_ValueError);
    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);

    py::class_<qdt::RydbergLevel>(m, "RydbergLevel")
        .def(py::init(&qdt::RydbergLevel::make), py::arg("n"), py::arg("l"), py::arg("j"))
        .def_readonly("n", &qdt::RydbergLevel::n)
        .def_readonly("l", &qdt::RydbergLevel::l)
        .def_property_readonly("j", &qdt::RydbergLevel::j)
        .def("label", &qdt::RydbergLevel::label)
        .def("__repr__", [](const qdt::RydbergLevel& l) { return "RydbergLevel(" + l.label() + ")"; });

    py::class_<qdt::Species>(m, "Species")
        .def_static("load", &qdt::Species::load)
        .def_static("parse", &qdt::Species::parse, py::arg("text"), py::arg("origin") = "<species>")
        .def_static("rubidium87", &qdt::Species::rubidium87, py::return_value_policy::copy)
        .def_static("hydrogen", &qdt::Species::hydrogen, py::return_value_policy::copy)
        .def_readonly("name", &qdt::Species::name)
        .def_readonly("mass_kg", &qdt::Species::mass_kg)
        .def_readonly("rydberg_hz", &qdt::Species::rydberg_hz)
        .def_readonly("digest", &qdt::Species::digest);

    py::class_<qdt::Atom, std::shared_ptr<qdt::Atom>>(m, "Atom")
        .def(py::init<qdt::Species, int>(), py::arg("species") = qdt::Species::rubidium87(), py::arg("points") = 2000)
        .def_property_readonly("species", &qdt::Atom::species)
        .def("energy_hz", &qdt::Atom::energy)
        .def("radial_matrix_element", &qdt::Atom::radial_matrix_element, py::call_guard<py::gil_scoped_release>());

    m.def("effective_quantum_number", &qdt::effective_quantum_number);
    m.def("level_energy", &qdt::level_energy, "E/h in Hz relative to the ionization limit");
    m.def("radial_matrix_element", &qdt::radial_matrix_element, py::arg("species"), py::arg("a"), py::arg("b"),
          py::arg("points") = 2000, "radial dipole integral in e a0");
    m.def("decay_rate", &qdt::decay_rate, py::arg("species"), py::arg("level"), py::arg("temperature_k"),
          "total decay rate in 1/s");

    py::class_<pair::InteractionCoefficients>(m, "InteractionCoefficients")
        .def_readonly("c6_hz_um6", &pair::InteractionCoefficients::c6_hz_um6)
        .def_readonly("c6_direct_hz_um6", &pair::InteractionCoefficients::c6_direct_hz_um6)
        .def_readonly("c6_branches_hz_um6", &pair::InteractionCoefficients::c6_branches_hz_um6)
        .def_property_readonly("channels", [](const pair::InteractionCoefficients& c) {
            py::list out;
            for (const auto& ch : c.channels) {
                py::dict d;
                d["final"] = ch.final_state.label();
                d["defect_hz"] = ch.defect_hz;
                d["coupling_hz_um3"] = ch.coupling_hz_um3;
                d["c6_contribution_hz_um6"] = ch.c6_contribution_hz_um6;
                d["resonant"] = ch.resonant;
                out.append(d);
            }
            return out;
        });

    m.def(
        "c3_coefficient",
        [](const qdt::Atom& atom, const qdt::RydbergLevel& r_prime, const qdt::RydbergLevel& p) {
            return pair::c3_coefficient(atom, r_prime, p).c3_hz_um3;
        },
        py::arg("atom"), py::arg("r_prime"), py::arg("p"), "C3 in Hz um^3 (M = 0)");
    m.def(
        "c6_coefficient",
        [](const qdt::Atom& atom, const qdt::RydbergLevel& a, const qdt::RydbergLevel& b, int max_delta_n, int max_l,
           double threshold_mhz, const std::string& branch) {
            py::gil_scoped_release release;
            return pair::c6_coefficient(atom, {a, b, 0}, make_channels(max_delta_n, max_l, threshold_mhz, branch));
        },
        py::arg("atom"), py::arg("a"), py::arg("b"), py::arg("max_delta_n") = 5, py::arg("max_l") = 2,
        py::arg("threshold_mhz") = 10.0, py::arg("branch") = "smallest");
    m.def(
        "forster_channels",
        [](const qdt::Atom& atom, const qdt::RydbergLevel& a, const qdt::RydbergLevel& b, int max_delta_n, int max_l,
           double threshold_mhz) {
            py::list out;
            for (const auto& ch : pair::forster_channels(atom, {a, b, 0},
                                                         make_channels(max_delta_n, max_l, threshold_mhz, "mean"))) {
                py::dict d;
                d["final"] = ch.final_state.label();
                d["defect_hz"] = ch.defect_hz;
                d["coupling_hz_um3"] = ch.coupling_hz_um3;
                d["resonant"] = ch.resonant;
                out.append(d);
            }
            return out;
        },
        py::arg("atom"), py::arg("a"), py::arg("b"), py::arg("max_delta_n") = 5, py::arg("max_l") = 2,
        py::arg("threshold_mhz") = 10.0);

    py::class_<lengthscales::Lengthscales>(m, "Lengthscales")
        .def_readonly("r_b3_um", &lengthscales::Lengthscales::r_b3_um)
        .def_readonly("r_b6_um", &lengthscales::Lengthscales::r_b6_um)
        .def_readonly("r_mu_um", &lengthscales::Lengthscales::r_mu_um)
        .def_property_readonly("window_ok", &lengthscales::Lengthscales::window_ok);
    m.def(
        "blockade_radii",
        [](double c3_hz_um3, double c6_hz_um6, double omega_mhz, double omega_mu_mhz) {
            return lengthscales::blockade_radii(c3_hz_um3, c6_hz_um6, units::mhz_to_rad_per_s(omega_mhz),
                                                units::mhz_to_rad_per_s(omega_mu_mhz));
        },
        py::arg("c3_hz_um3"), py::arg("c6_hz_um6"), py::arg("omega_mhz"), py::arg("omega_mu_mhz"));
    m.def(
        "figure_of_merit",
        [](const qdt::Atom& atom, int n, double temperature_k) {
            py::gil_scoped_release release;
            const auto p = lengthscales::figure_of_merit(atom, n, temperature_k);
            return std::make_pair(p.merit, p.gamma_used);
        },
        py::arg("atom"), py::arg("n"), py::arg("temperature_k") = 0.0, "(O, gamma_used in 1/s)");
    m.def(
        "radii_scan",
        [](const qdt::Atom& atom, const std::vector<int>& ns, double omega_mhz, int workers) {
            std::vector<lengthscales::RadiiRow> rows;
            {
                py::gil_scoped_release release;
                rows = lengthscales::radii_scan(atom, ns, units::mhz_to_rad_per_s(omega_mhz), {}, workers);
            }
            py::list out;
            for (const auto& r : rows) {
                py::dict d;
                d["n"] = r.n;
                d["r_b6_cross_um"] = r.r_b6_cross_um;
                d["r_b6_same_um"] = r.r_b6_same_um;
                d["r_b3_um"] = r.r_b3_um;
                d["resonance"] = r.resonance;
                out.append(d);
            }
            return out;
        },
        py::arg("atom"), py::arg("n_values"), py::arg("omega_mhz") = 1.0, py::arg("workers") = 1);

    m.def(
        "two_level_pulse",
        [](double omega_mu, double delta_p, double delta_r, double gamma_r, double gamma_p, double duration) {
            return gate::two_level_pulse(omega_mu, delta_p, delta_r, gamma_r, gamma_p, duration);
        },
        py::arg("omega_mu"), py::arg("delta_p"), py::arg("delta_r"), py::arg("gamma_r"), py::arg("gamma_p"),
        py::arg("duration"), "return amplitude of |r>; all rates in rad/s, duration in s");
    m.def("two_level_pulse_ode", &gate::two_level_pulse_ode, py::arg("omega_mu"), py::arg("delta_p"),
          py::arg("delta_r"), py::arg("gamma_r"), py::arg("gamma_p"), py::arg("duration"),
          py::arg("tolerance") = 1e-12);

    py::class_<gate::GateParams>(m, "GateParams")
        .def(py::init(&make_params), py::arg("n") = 70, py::arg("omega_mu_mhz") = 1.0, py::arg("omega_c_mhz") = 10.0,
             py::arg("omega_eit_mhz") = 0.0, py::arg("temperature_uk") = 0.1, py::arg("q") = 0.2,
             py::arg("lambda_um") = 1.25, py::arg("eta_c") = 0.9, py::arg("environment_temperature_k") = py::none(),
             py::arg("d_far_factor") = 5.0)
        .def_readwrite("n", &gate::GateParams::n)
        .def_readwrite("q", &gate::GateParams::q)
        .def_readwrite("c3_hz_um3", &gate::GateParams::c3_hz_um3)
        .def_readwrite("c6_hz_um6", &gate::GateParams::c6_hz_um6)
        .def_readwrite("gamma_r", &gate::GateParams::gamma_r)
        .def_readwrite("gamma_rp", &gate::GateParams::gamma_rp)
        .def_readwrite("gamma_p", &gate::GateParams::gamma_p)
        .def_property(
            "omega_mu_mhz", [](const gate::GateParams& p) { return units::rad_per_s_to_mhz(p.omega_mu); },
            [](gate::GateParams& p, double v) { p.omega_mu = units::mhz_to_rad_per_s(v); });

    py::class_<gate::GateResult>(m, "GateResult")
        .def_readonly("f0", &gate::GateResult::f0)
        .def_readonly("pulse_time", &gate::GateResult::pulse_time)
        .def_property_readonly("amplitudes", [](const gate::GateResult& r) {
            py::dict d;
            for (const auto& a : r.amplitudes) d[py::str(gate::to_string(a.label))] = a.amplitude;
            return d;
        });
    m.def("gate_fidelity_pointwise", &gate::gate_fidelity_pointwise, py::arg("params"), py::arg("d11_um"));

    m.def(
        "motional_dephasing",
        [](double temperature_k, double mass_kg, double w0_um, double lambda_um, double pulse_time_s) {
            return dephasing::motional_dephasing({temperature_k, mass_kg, w0_um, lambda_um, pulse_time_s});
        },
        py::arg("temperature_k"), py::arg("mass_kg"), py::arg("w0_um"), py::arg("lambda_um"),
        py::arg("pulse_time_s"));
    m.def(
        "site_average",
        [](const std::function<double(double)>& f0, double d11_um, double r_b6_um, double q, int points) {
            return dephasing::site_average(f0, d11_um, r_b6_um, q, points).f0_avg;
        },
        py::arg("f0"), py::arg("d11_um"), py::arg("r_b6_um"), py::arg("q"), py::arg("points") = 41);

    py::class_<dephasing::AveragedFidelity>(m, "AveragedFidelity")
        .def_readonly("f0_avg", &dephasing::AveragedFidelity::f0_avg)
        .def_readonly("eta_m", &dephasing::AveragedFidelity::eta_m)
        .def_readonly("f_total", &dephasing::AveragedFidelity::f_total)
        .def_readonly("d11_used", &dephasing::AveragedFidelity::d11_used)
        .def_readonly("coupling_budget", &dephasing::AveragedFidelity::coupling_budget)
        .def_readonly("warning", &dephasing::AveragedFidelity::warning);

    py::class_<dephasing::FidelityModel>(m, "FidelityModel")
        .def_property_readonly("params", &dephasing::FidelityModel::params)
        .def_property_readonly("radii", &dephasing::FidelityModel::radii)
        .def("evaluate", &dephasing::FidelityModel::evaluate, py::arg("d11_um"));
    m.def(
        "fidelity_model",
        [](const qdt::Atom& atom, const gate::GateParams& params) {
            py::gil_scoped_release release;
            return dephasing::FidelityModel::build(atom, params);
        },
        py::arg("atom"), py::arg("params"), "resolves C3, C6 and decay rates for params.n");
    m.def(
        "optimize_d11",
        [](const dephasing::FidelityModel& model) {
            py::gil_scoped_release release;
            return dephasing::optimize_d11(model);
        },
        py::arg("model"));
}
