#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "obsel/catalog.hpp"
#include "obsel/errors.hpp"
#include "obsel/fermi.hpp"
#include "obsel/rules.hpp"
#include "obsel/scenario_format.hpp"

namespace py = pybind11;
using namespace obsel;

namespace {

std::vector<std::string> literals(const std::vector<Quantity>& qs) {
  std::vector<std::string> out;
  for (const auto& q : qs) out.push_back(q.to_literal());
  return out;
}

py::dict fermi_summary(double V, std::uint64_t samples, std::uint64_t seed, std::size_t threads) {
  const FermiPrior prior;
  SamplerOptions options;
  options.threads = threads;
  const auto s = sample_posterior(prior, {V}, samples, seed, options);
  py::dict d;
  d["V"] = V;
  d["accepted"] = s.accepted_count;
  d["proposals"] = s.proposal_count;
  d["acceptance_rate"] = s.acceptance_rate();
  for (auto parent : {FactorParent::kP, FactorParent::kF}) {
    const auto f = factor_posterior(prior, {-1.0, 0.2, parent, {}}, s);
    const std::string key = parent == FactorParent::kP ? "p1" : "f1";
    d[py::str(key + "_mean")] = f.mean_value;
    d[py::str(key + "_mean_se")] = f.mean_value_se;
    d[py::str(key + "_mean10")] = f.mean10;
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_obsel, m) {
  m.doc() = "Observer-selection inference: exact posteriors, scenario files and the Fermi model";

  auto error = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<RegimeViolationError>(m, "RegimeViolationError", error.ptr());

  py::enum_<Rule>(m, "Rule")
      .value("SSA_MINUS_SIA", Rule::kSsaMinusSia)
      .value("SSA_PLUS_SIA", Rule::kSsaPlusSia)
      .value("FNC", Rule::kFnc)
      .value("SIA", Rule::kSiaOnly);
  m.def("parse_rule", [](const std::string& s) { return parse_rule(s); });

  py::class_<ExactProb>(m, "ExactProb")
      .def(py::init([](std::int64_t n, std::int64_t d) { return ExactProb(n, d); }), py::arg("numerator"),
           py::arg("denominator") = 1)
      .def_static("parse", [](const std::string& s) { return ExactProb::parse(s); })
      .def("__float__", &ExactProb::to_double)
      .def("__str__", &ExactProb::to_string)
      .def("__repr__", [](const ExactProb& p) { return "ExactProb('" + p.to_string() + "')"; })
      .def("__eq__", [](const ExactProb& a, const ExactProb& b) { return a == b; })
      .def("__mul__", [](const ExactProb& a, const ExactProb& b) { return a * b; })
      .def("__add__", [](const ExactProb& a, const ExactProb& b) { return a + b; });

  py::class_<Posterior>(m, "Posterior")
      .def_property_readonly("names", &Posterior::names)
      .def_property_readonly("probs", &Posterior::probs)
      .def_property_readonly("exact",
                             [](const Posterior& p) -> std::optional<std::vector<std::string>> {
                               if (!p.exact_probs()) return std::nullopt;
                               std::vector<std::string> out;
                               for (const auto& x : *p.exact_probs()) out.push_back(x.to_string());
                               return out;
                             })
      .def_property_readonly("ledger",
                             [](const Posterior& p) {
                               std::vector<std::tuple<std::string, std::vector<std::string>, std::string>> out;
                               for (const auto& s : p.ledger()) out.emplace_back(s.label, literals(s.multipliers), s.note);
                               return out;
                             })
      .def("prob", &Posterior::prob)
      .def("odds", [](const Posterior& p, const std::string& a, const std::string& b) { return p.odds(a, b).to_literal(); });

  py::class_<Scenario>(m, "Scenario")
      .def_property_readonly("names", &Scenario::names)
      .def_property_readonly("exact_mode", &Scenario::exact_mode)
      .def("posterior",
           [](const Scenario& s, Rule rule, const std::string& cls, bool fnc_limit) {
             return posterior_under(rule, s, cls,
                                    fnc_limit ? FncLikelihood::kSmallProbabilityLimit : FncLikelihood::kAtLeastOne);
           },
           py::arg("rule"), py::arg("reference_class"), py::arg("fnc_limit") = false);

  py::class_<ScenarioDocument>(m, "ScenarioDocument")
      .def_readonly("name", &ScenarioDocument::name)
      .def_readonly("scenario", &ScenarioDocument::scenario)
      .def_readonly("rule", &ScenarioDocument::rule)
      .def_readonly("class_name", &ScenarioDocument::class_name);
  m.def("parse_scenario", [](const std::string& text) { return parse_scenario(text); });
  m.def("serialize_scenario", &serialize_scenario);

  m.def("catalog_names", [] {
    std::vector<std::string> out;
    for (const auto& e : catalog()) out.push_back(e.name);
    return out;
  });
  m.def(
      "run_entry",
      [](const std::string& name, const std::map<std::string, std::string>& params) {
        const auto r = run_entry(find_entry(name), Params(params.begin(), params.end()));
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& o : r.outputs) out.emplace_back(o.name, o.text);
        return out;
      },
      py::arg("name"), py::arg("params") = std::map<std::string, std::string>{});
  m.def("check_catalog", [] {
    std::size_t passed = 0;
    const auto outcomes = check_catalog();
    for (const auto& o : outcomes) passed += o.passed;
    return std::make_pair(passed, outcomes.size());
  });

  m.def("fermi", &fermi_summary, py::arg("V"), py::arg("samples") = 200000, py::arg("seed") = 1,
        py::arg("threads") = 1);
}
