#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qtails/builders.hpp"
#include "qtails/catalog.hpp"
#include "qtails/dsl.hpp"
#include "qtails/partitions.hpp"
#include "qtails/quad_field.hpp"
#include "qtails/sequences.hpp"

#include <map>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace qtails;

namespace {

std::vector<std::string> coeff_strings(const QSeries& s) {
    std::vector<std::string> out;
    out.reserve(s.c.size());
    for (const auto& r : s.c) out.push_back(r.str());
    return out;
}

std::vector<std::string> sequence_coeffs(const std::string& name, int n, int order) {
    if (name == "omega") return coeff_strings(omega_n(n, order));
    if (name == "theta") return coeff_strings(theta_n(n, order));
    if (name == "v") return coeff_strings(v_m(n, order));
    if (name == "j") return coeff_strings(j_n(n, order));
    throw series_error("unknown sequence name: " + name);
}

py::dict script_result_dict(const ScriptResult& res) {
    py::dict d;
    d["all_pass"] = res.all_pass;
    py::list reports;
    for (const auto& r : res.asserts) reports.append(report_to_json(r));
    d["asserts"] = reports;
    d["dumps"] = res.dumps;
    return d;
}

}  // namespace

PYBIND11_MODULE(_qtails, m) {
    m.doc() = "exact q-series identity workbench bindings";

    m.def("catalog_ids", &catalog_ids, "list the identity ids the catalog can verify");
    m.def("named_series_ids", &named_series_ids, "list the series names the catalog exposes");
    m.def(
        "verify_json",
        [](const std::string& id, int order) { return report_to_json(verify_identity(id, order)); },
        py::arg("id"), py::arg("order"), "verify a catalog identity, returning the JSON report");
    m.def(
        "diagnose_json",
        [](const std::string& id, int order) {
            return report_to_json(diagnose_identity(id, order));
        },
        py::arg("id"), py::arg("order"),
        "search the correction space for a failing identity, returning the JSON report");
    m.def(
        "series_coeffs",
        [](const std::string& name, int order) { return coeff_strings(named_series(name, order)); },
        py::arg("name"), py::arg("order"),
        "coefficients of a named series as exact rational strings");
    m.def("sequence_coeffs", &sequence_coeffs, py::arg("name"), py::arg("n"), py::arg("order"),
          "coefficients of omega/theta/v/j at index n as exact rational strings");
    m.def(
        "eval_coeffs",
        [](const std::string& text, int order) {
            Value v = eval_expression(text, order);
            if (!std::holds_alternative<QSeries>(v))
                throw series_error("expression does not evaluate to a q-series");
            return coeff_strings(std::get<QSeries>(v));
        },
        py::arg("text"), py::arg("order"),
        "evaluate a script expression to q-series coefficients");
    m.def(
        "run_script",
        [](const std::string& text, int order) {
            return script_result_dict(run_script_text(text, order));
        },
        py::arg("text"), py::arg("order"), "run a script: dict of verdicts, reports, and dumps");
    m.def(
        "ideal_count_list",
        [](int max_norm) {
            IdealCountTable t = ideal_counts(max_norm);
            return t.counts;
        },
        py::arg("max_norm"), "ideal counts by norm, index 0 unused");
    m.def(
        "rank_count_map", [](int n) { return rank_counts(n); }, py::arg("n"),
        "partition counts of n keyed by rank");
}
