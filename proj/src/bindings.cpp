// Python module: thin functional bindings over the main operations —
// sideband coefficients, eigenvalue branches and phase classification,
// driven-response coefficients, and the experiment drivers.
#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <variant>

#include "ptqed/config.hpp"
#include "ptqed/drive.hpp"
#include "ptqed/errors.hpp"
#include "ptqed/experiments.hpp"
#include "ptqed/inout.hpp"
#include "ptqed/ptspectrum.hpp"
#include "ptqed/table.hpp"
#include "ptqed/version.hpp"

namespace py = pybind11;

namespace {

ptqed::MMode parse_mode(const std::string& mode) {
    if (mode == "rwa") return ptqed::MMode::Rwa;
    if (mode == "nonrwa") return ptqed::MMode::NonRwa;
    throw ptqed::ValidationError("mode must be 'rwa' or 'nonrwa', got '" + mode + "'");
}

py::dict table_to_dict(const ptqed::ResultTable& table) {
    py::dict metadata;
    for (const auto& [key, value] : table.metadata) metadata[py::str(key)] = value;
    py::list rows;
    for (const auto& row : table.rows) {
        py::list converted;
        for (const ptqed::Cell& cell : row)
            converted.append(
                std::visit([](const auto& v) -> py::object { return py::cast(v); }, cell));
        rows.append(converted);
    }
    py::dict out;
    out["metadata"] = metadata;
    out["columns"] = table.columns;
    out["rows"] = rows;
    return out;
}

py::dict point_to_dict(const ptqed::PhasePoint& point) {
    py::dict out;
    out["J"] = point.J;
    out["eigenvalues"] = point.eigenvalues;
    out["phase"] = std::string(ptqed::phase_name(point.phase));
    out["is_ep"] = point.is_ep;
    out["pt_defect"] = point.pt_defect_value;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() =
        "Driven circuit-QED sideband engineering: effective coupled-resonator models, "
        "their symmetry phases, steady states, and transmission spectra.";
    m.attr("__version__") = ptqed::kVersion;

    const py::object base = py::register_exception<ptqed::Error>(m, "Error");
    py::register_exception<ptqed::ValidationError>(m, "ValidationError", base.ptr());
    py::register_exception<ptqed::NumericalError>(m, "NumericalError", base.ptr());

    m.def(
        "sideband_g",
        [](double eps0, double lambda_plus, double lambda_minus, double omega_plus,
           double omega_minus) {
            ptqed::DriveParams drive;
            drive.eps0 = eps0;
            drive.lambda_plus = lambda_plus;
            drive.lambda_minus = lambda_minus;
            drive.omega_plus = omega_plus;
            drive.omega_minus = omega_minus;
            ptqed::validate_drive(drive);
            const ptqed::GCoefficients g = ptqed::bessel_g(drive);
            return py::make_tuple(g.g_plus, g.g_minus);
        },
        py::arg("eps0") = 5.0, py::arg("lambda_plus") = 2.0, py::arg("lambda_minus") = 2.0,
        py::arg("omega_plus") = 6.1, py::arg("omega_minus") = 3.9,
        "Sideband coefficients (G_plus, G_minus) of a two-tone drive.");

    m.def(
        "eigenvalues",
        [](double delta, double j, double gamma_tilde_1, double gamma_tilde_2,
           const std::string& mode) {
            return ptqed::eigenvalues_closed_form(delta, j, {gamma_tilde_1, gamma_tilde_2},
                                                  parse_mode(mode));
        },
        py::arg("delta"), py::arg("j"), py::arg("gamma_tilde_1") = 0.1,
        py::arg("gamma_tilde_2") = 0.1, py::arg("mode") = "nonrwa",
        "Closed-form first-moment eigenvalues (w+, w-, -w+*, -w-* pattern).");

    m.def(
        "classify",
        [](double delta, double j, double gamma_tilde_1, double gamma_tilde_2,
           const std::string& mode) {
            return point_to_dict(
                ptqed::classify(delta, j, {gamma_tilde_1, gamma_tilde_2}, parse_mode(mode)));
        },
        py::arg("delta"), py::arg("j"), py::arg("gamma_tilde_1") = 0.1,
        py::arg("gamma_tilde_2") = 0.1, py::arg("mode") = "nonrwa",
        "Phase classification of one grid point: eigenvalues, phase name, EP flag, defect.");

    m.def(
        "critical_couplings",
        [](double delta, double gamma_tilde_1, double gamma_tilde_2) {
            const auto pair =
                ptqed::critical_couplings(delta, {gamma_tilde_1, gamma_tilde_2});
            return py::make_tuple(pair.first, pair.second);
        },
        py::arg("delta"), py::arg("gamma_tilde_1") = 0.1, py::arg("gamma_tilde_2") = 0.1,
        "Both critical couplings (J_c1, J_c2) of the coupled pair.");

    m.def(
        "transmission_coefficient",
        [](double delta, double omega_d, double j, double gamma_tilde_1, double gamma_tilde_2,
           double kappa, const std::string& mode) {
            const ptqed::MomentMatrix matrix =
                ptqed::build_m(delta, j, {gamma_tilde_1, gamma_tilde_2}, parse_mode(mode));
            ptqed::InputSignal input;
            input.omega_d = omega_d;
            input.kappa = kappa;
            const Eigen::Vector4cd response = ptqed::numeric_response(matrix, input);
            return ptqed::transmission(input, ptqed::Port::P2R, response);
        },
        py::arg("delta"), py::arg("omega_d"), py::arg("j"), py::arg("gamma_tilde_1") = 0.1,
        py::arg("gamma_tilde_2") = 0.1, py::arg("kappa") = 0.02, py::arg("mode") = "nonrwa",
        "Steady transmission coefficient from resonator 1's left port to resonator 2's "
        "right port.");

    m.def(
        "run_experiment",
        [](const std::string& config_text, int jobs) {
            const ptqed::RunConfig config = ptqed::parse_config(config_text, "<config>");
            return table_to_dict(ptqed::run_experiment(config, jobs));
        },
        py::arg("config_text"), py::arg("jobs") = 1,
        "Run the experiment described by config text (key = value lines); returns "
        "{metadata, columns, rows}.");

    m.def(
        "run_experiment_file",
        [](const std::string& path, int jobs) {
            return table_to_dict(ptqed::run_experiment(ptqed::load_config(path), jobs));
        },
        py::arg("path"), py::arg("jobs") = 1,
        "Run the experiment described by a config file; returns {metadata, columns, rows}.");

    m.def(
        "dump_config",
        [](const std::string& config_text) {
            return ptqed::dump_config(ptqed::parse_config(config_text, "<config>"));
        },
        py::arg("config_text"), "Canonical form of a config: every key with its value.");

    m.def(
        "config_hash",
        [](const std::string& config_text) {
            return ptqed::config_hash(ptqed::parse_config(config_text, "<config>"));
        },
        py::arg("config_text"), "Hash identifying the physics content of a config.");

    m.def(
        "plot_script",
        [](const std::string& config_text) {
            return ptqed::plot_script(ptqed::parse_config(config_text, "<config>"));
        },
        py::arg("config_text"), "Matplotlib script rendering the experiment's csv output.");
}
