// pybind11 bindings for the main operations: special-function kernels,
// scenario construction (from JSON or presets), the closed forms and the
// seeded Monte Carlo estimators.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "risioi/analytic.hpp"
#include "risioi/channel.hpp"
#include "risioi/montecarlo.hpp"
#include "risioi/quadrature.hpp"
#include "risioi/specfun.hpp"
#include "risioi/sweep.hpp"

namespace py = pybind11;
using namespace risioi;

namespace {

analytic::YSplit split_from_string(const std::string& s) {
    if (s == "paper") return analytic::YSplit::kPaper;
    if (s == "circular") return analytic::YSplit::kCircularY;
    throw std::invalid_argument("y_split must be 'paper' or 'circular'");
}

channel::Scenario scenario_from_json(const std::string& text) {
    // Reuse the strict sweep-config parser; only the scenario block is needed.
    const std::string wrapped =
        "{\"schema\":1,\"scenario\":" + text +
        ",\"p_db_range\":{\"start\":0,\"stop\":0,\"step\":1},"
        "\"outputs\":[\"analytic_se\"]}";
    return sweep::parse_config_json(wrapped).scenario;
}

mc::RunSpec make_run(std::uint64_t seed, std::uint64_t trials, std::uint32_t chunks) {
    mc::RunSpec run{seed, trials, chunks};
    run.validate();
    return run;
}

} // namespace

PYBIND11_MODULE(_risioi, m) {
    m.doc() = "inter-operator RIS interference: closed forms and Monte Carlo";

    auto sf = m.def_submodule("specfun", "special-function kernels");
    sf.def("ln_gamma", &specfun::ln_gamma, py::arg("x"));
    sf.def("lower_gamma_regularized", &specfun::lower_gamma_regularized, py::arg("a"),
           py::arg("x"));
    sf.def("upper_gamma_regularized", &specfun::upper_gamma_regularized, py::arg("a"),
           py::arg("x"));
    sf.def("digamma", &specfun::digamma, py::arg("x"));
    sf.def("exp_integral_gamma0", &specfun::exp_integral_gamma0, py::arg("x"));
    sf.def("sinc", &specfun::sinc, py::arg("x"));
    sf.def("rician_mean_factor", &specfun::rician_mean_factor, py::arg("kappa"));
    sf.def("marcum_q1", &specfun::marcum_q1, py::arg("a"), py::arg("b"));

    py::class_<channel::Scenario>(m, "Scenario")
        .def_static("from_json", &scenario_from_json, py::arg("json_text"))
        .def_property_readonly("id", [](const channel::Scenario& s) { return s.id; })
        .def_property_readonly("n", &channel::Scenario::reference_elements)
        .def_property_readonly("m_total", &channel::Scenario::total_external_elements);

    m.def("preset_names", &sweep::preset_names);
    m.def("preset_json", &sweep::preset_json, py::arg("name"));
    m.def(
        "preset_scenario",
        [](const std::string& name) {
            return sweep::parse_config_json(sweep::preset_json(name)).scenario;
        },
        py::arg("name"));

    py::class_<analytic::Moments>(m, "Moments")
        .def_readonly("mu_x", &analytic::Moments::mu_x)
        .def_readonly("v_x", &analytic::Moments::v_x)
        .def_readonly("p_x", &analytic::Moments::p_x)
        .def_readonly("v_d", &analytic::Moments::v_d)
        .def_readonly("v_y", &analytic::Moments::v_y)
        .def_readonly("n", &analytic::Moments::n)
        .def_readonly("m_list", &analytic::Moments::m_list)
        .def_readonly("sigma2", &analytic::Moments::sigma2)
        .def_readonly("gamma_bar", &analytic::Moments::gamma_bar)
        .def_readonly("m_n", &analytic::Moments::m_n);

    m.def(
        "derive_moments",
        [](const channel::Scenario& s, const std::string& split) {
            return analytic::derive_moments(s, split_from_string(split));
        },
        py::arg("scenario"), py::arg("y_split") = "paper");
    m.def(
        "quantizer_moments",
        [](py::object q) {
            const channel::Quantizer quant =
                q.is_none() ? channel::Quantizer::perfect()
                            : channel::Quantizer::with_bits(q.cast<int>());
            const auto qm = analytic::quantizer_moments(quant);
            return std::make_pair(qm.theta1, qm.theta2);
        },
        py::arg("q_bits"), "q_bits=None means a perfect quantizer");
    m.def("aggregate_external_variance", &analytic::aggregate_external_variance,
          py::arg("scenario"));
    m.def("snr_cdf", &analytic::snr_cdf, py::arg("x"), py::arg("p_linear"),
          py::arg("moments"));
    m.def("outage_probability", &analytic::outage_probability, py::arg("gamma_th"),
          py::arg("p_linear"), py::arg("moments"));
    m.def("outage_asymptotic", &analytic::outage_asymptotic, py::arg("gamma_th"),
          py::arg("p_linear"), py::arg("moments"));
    m.def("spectral_efficiency", &analytic::spectral_efficiency, py::arg("p_linear"),
          py::arg("moments"));
    m.def("spectral_efficiency_asymptotic", &analytic::spectral_efficiency_asymptotic,
          py::arg("p_linear"), py::arg("moments"));
    m.def("no_ris_cdf", &analytic::no_ris_cdf, py::arg("x"), py::arg("p_linear"),
          py::arg("m_total_vy"), py::arg("v_d"));
    m.def(
        "no_ris_spectral_efficiency",
        [](double p, double mvy, double vd) {
            const auto r = analytic::no_ris_spectral_efficiency(p, mvy, vd);
            return py::dict(py::arg("as_printed") = r.as_printed,
                            py::arg("reduced") = r.reduced,
                            py::arg("rel_deviation") = r.rel_deviation);
        },
        py::arg("p_linear"), py::arg("m_total_vy"), py::arg("v_d"));

    py::class_<mc::MetricEstimate>(m, "MetricEstimate")
        .def_readonly("value", &mc::MetricEstimate::value)
        .def_readonly("std_error", &mc::MetricEstimate::std_error)
        .def_readonly("num_samples", &mc::MetricEstimate::num_samples)
        .def("__repr__", [](const mc::MetricEstimate& e) {
            return "MetricEstimate(value=" + std::to_string(e.value) +
                   ", std_error=" + std::to_string(e.std_error) +
                   ", num_samples=" + std::to_string(e.num_samples) + ")";
        });

    m.def(
        "estimate_outage",
        [](const channel::Scenario& s, double p, double gth, std::uint64_t seed,
           std::uint64_t trials, std::uint32_t chunks, int threads) {
            return mc::estimate_outage(s, p, gth, make_run(seed, trials, chunks), threads);
        },
        py::arg("scenario"), py::arg("p_linear"), py::arg("gamma_th"),
        py::arg("seed") = 12345, py::arg("trials") = 100000, py::arg("chunks") = 64,
        py::arg("threads") = 0);
    m.def(
        "estimate_spectral_efficiency",
        [](const channel::Scenario& s, double p, std::uint64_t seed, std::uint64_t trials,
           std::uint32_t chunks, int threads) {
            return mc::estimate_spectral_efficiency(s, p, make_run(seed, trials, chunks),
                                                    threads);
        },
        py::arg("scenario"), py::arg("p_linear"), py::arg("seed") = 12345,
        py::arg("trials") = 100000, py::arg("chunks") = 64, py::arg("threads") = 0);
    m.def(
        "empirical_cdf",
        [](const channel::Scenario& s, double p, const std::vector<double>& grid,
           std::uint64_t seed, std::uint64_t trials, std::uint32_t chunks, int threads) {
            const auto curve = mc::empirical_cdf(s, p, grid, make_run(seed, trials, chunks),
                                                 threads);
            return std::make_pair(curve.grid, curve.values);
        },
        py::arg("scenario"), py::arg("p_linear"), py::arg("grid"), py::arg("seed") = 12345,
        py::arg("trials") = 100000, py::arg("chunks") = 64, py::arg("threads") = 0);

    m.def("db_to_linear", &sweep::db_to_linear, py::arg("db"));
    m.def(
        "run_sweep_csv",
        [](const std::string& config_json, int threads) {
            const auto cfg = sweep::parse_config_json(config_json);
            return sweep::rows_to_csv(sweep::run_sweep(cfg, threads));
        },
        py::arg("config_json"), py::arg("threads") = 0);

    py::register_exception<sweep::ConfigError>(m, "ConfigError");
    py::register_exception<quadrature::QuadratureError>(m, "QuadratureError");
}
