#include "dwv/properties.hpp"
#include "dwv/suites.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;

namespace {

dwv::SuiteConfig config(const std::string& model, const std::vector<std::string>& suites, std::uint64_t seed,
                        int trials) {
    return {model, suites.empty() ? dwv::suite_names() : suites, seed, trials};
}

py::dict as_dict(const dwv::CheckResult& r) {
    py::dict d;
    d["check_id"] = r.check_id;
    d["paper_ref"] = r.paper_ref;
    d["status"] = dwv::to_string(r.status);
    d["residual_term_count"] = r.residual_term_count;
    d["elapsed_ms"] = r.elapsed_ms;
    d["detail"] = r.detail;
    return d;
}

}  // namespace

PYBIND11_MODULE(_dwv, m) {
    m.doc() = "Exact verification suites for the vielbein De Donder-Weyl computations";
    py::register_exception<std::invalid_argument>(m, "ConfigError", PyExc_ValueError);

    m.def("suite_names", &dwv::suite_names);
    m.def("model_dimension", &dwv::model_dimension, py::arg("model"));
    m.def(
        "run",
        [](const std::string& model, const std::vector<std::string>& suites, std::uint64_t seed, int trials) {
            std::vector<dwv::CheckResult> res;
            {
                py::gil_scoped_release release;
                res = dwv::run(config(model, suites, seed, trials));
            }
            py::list out;
            for (const dwv::CheckResult& r : res) out.append(as_dict(r));
            return out;
        },
        py::arg("model") = "vierbein", py::arg("suites") = std::vector<std::string>{}, py::arg("seed") = 42,
        py::arg("trials") = 5, "Run suites (all when empty); one dict per check.");
    m.def(
        "report_json",
        [](const std::string& model, const std::vector<std::string>& suites, std::uint64_t seed, int trials,
           bool stable) {
            const dwv::SuiteConfig cfg = config(model, suites, seed, trials);
            std::vector<dwv::CheckResult> res;
            {
                py::gil_scoped_release release;
                res = dwv::run(cfg);
            }
            return dwv::report_json(cfg, res, stable);
        },
        py::arg("model") = "vierbein", py::arg("suites") = std::vector<std::string>{}, py::arg("seed") = 42,
        py::arg("trials") = 5, py::arg("stable") = true, "The CLI's JSON report as a string.");
    m.def(
        "engine_checks",
        [](std::uint64_t seed, int cases) {
            py::dict out;
            for (const dwv::CheckOutcome& c : dwv::engine_property_checks(seed, cases)) out[py::str(c.id)] = c.residual_terms;
            return out;
        },
        py::arg("seed") = 42, py::arg("cases") = 20, "Residual term count of each graded-algebra law.");
}
