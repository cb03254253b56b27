#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cstnu/dc_check.hpp"
#include "cstnu/error.hpp"
#include "cstnu/json_io.hpp"
#include "cstnu/projection.hpp"
#include "cstnu/propagation.hpp"
#include "cstnu/semantics.hpp"
#include "cstnu/workflow.hpp"

namespace py = pybind11;
using namespace cstnu;

namespace {

// Rationals and nested results cross the boundary as JSON text; the Python
// layer decodes them.
std::string dump(const Json& j) { return j.dump(); }

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw ParseError(e.what());
  }
}

DcResult check_any(const Network& net, const DcOptions& o) {
  switch (net.kind()) {
    case NetworkKind::Cstn: return check_dc_cstn(net, o);
    case NetworkKind::Stnu: return check_dc_stnu(unlabeled_part(net), o);
    default: return check_dc(net, o);
  }
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Conditional simple temporal networks with uncertainty";

  auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<InvalidNetwork>(m, "InvalidNetwork", base.ptr());
  auto pre = py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<EmbeddingError>(m, "EmbeddingError", pre.ptr());
  py::register_exception<CapExceeded>(m, "CapExceeded", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());

  py::class_<Label>(m, "Label")
      .def(py::init([](const std::string& text) { return Label::parse(text); }), py::arg("text") = "")
      .def("__str__", &Label::to_string)
      .def("__repr__", [](const Label& l) { return "Label('" + l.to_string() + "')"; })
      .def("__eq__", [](const Label& a, const Label& b) { return a == b; })
      .def("__hash__", [](const Label& l) { return std::hash<std::uint64_t>{}(l.positive_mask() * 31 + l.negative_mask()); })
      .def("__len__", &Label::size)
      .def("con", [](const Label& a, const Label& b) { return con(a, b); })
      .def("sub", [](const Label& a, const Label& b) { return sub(a, b); })
      .def("conjoin", [](const Label& a, const Label& b) { return conjoin(a, b); })
      .def("letters", [](const Label& l) {
        std::string out;
        for (Letter p : l.letters().to_vector()) out += p.symbol();
        return out;
      });

  m.def("enumerate_universe", [](const std::string& letters) { return enumerate_universe(LetterSet::parse(letters)); },
        py::arg("letters"));

  py::class_<Network>(m, "Network")
      .def_static("from_json", [](const std::string& text) { return network_from_json(parse(text)); })
      .def("to_json", [](const Network& n) { return dump(network_to_json(n)); })
      .def_property_readonly("kind", [](const Network& n) { return std::string(to_string(n.kind())); })
      .def_property_readonly("ids", [](const Network& n) {
        std::vector<std::string> ids;
        for (const auto& tp : n.timepoints()) ids.push_back(tp.id);
        return ids;
      })
      .def("__len__", &Network::size)
      .def("validate", [](const Network& n) { return dump(report_to_json(validate_cstnu(n))); });

  m.def("solve", [](const Network& n) {
    const Stn stn = unlabeled_part(n).stn;
    const DistanceMatrix d = solve(stn);
    Json doc = {{"consistent", d.consistent()}};
    if (d.consistent() && !stn.timepoints.empty()) {
      doc["schedule"] = schedule_to_json(earliest_solution(stn, stn.timepoints.front()));
    }
    return dump(doc);
  });

  m.def("project", [](const Network& n, const std::string& scenario, std::optional<std::string> situation) {
    const Scenario s = parse_scenario(scenario, n.letters());
    if (!situation) return dump(stn_to_json(scenario_projection(n, s)));
    return dump(stn_to_json(drama_projection(n, s, parse_situation(*situation))));
  }, py::arg("network"), py::arg("scenario") = "", py::arg("situation") = std::nullopt);

  m.def("propagate", [](const Network& n, std::size_t budget) {
    return dump(propagation_to_json(n, propagate_to_fixpoint(n, budget)));
  }, py::arg("network"), py::arg("budget") = 10000);

  m.def("label_modification", [](const Network& n, std::size_t edge, std::size_t target) {
    const auto& cs = n.constraints();
    if (edge >= cs.size() || target >= cs.size()) throw PreconditionError("constraint index out of range");
    const auto mod = label_modification(n, cs[edge], cs[target]);
    Json out = Json::array();
    for (const auto& c : mod.replacement) {
      out.push_back({{"from", n.id(c.from)}, {"to", n.id(c.to)}, {"delta", rational_to_json(c.delta)},
                     {"label", c.label.to_string()}});
    }
    return dump(out);
  });

  m.def("check_dc", [](const Network& n, std::size_t duration_samples, std::size_t time_candidates,
                       std::size_t node_budget, std::uint64_t seed, std::size_t jobs) {
    DcOptions o;
    o.duration_samples = duration_samples;
    o.time_candidates = time_candidates;
    o.node_budget = node_budget;
    o.seed = seed;
    o.jobs = jobs;
    DcResult r;
    {
      py::gil_scoped_release release;
      r = check_any(n, o);
    }
    return dump(dc_result_to_json(n, r));
  }, py::arg("network"), py::arg("duration_samples") = 3, py::arg("time_candidates") = 3,
     py::arg("node_budget") = 200000, py::arg("seed") = 0, py::arg("jobs") = 1);

  m.def("verify_strategy", [](const Network& n, const std::string& strategy) {
    const ExecutionStrategy s = strategy_from_json(parse(strategy), n);
    const auto v = is_viable(n, s);
    const auto d = is_dynamic_star(n, s);
    Json doc = {{"viable", v.viable}, {"dynamic_star", d.dynamic}};
    if (n.kind() == NetworkKind::Cstn) doc["dynamic"] = is_dynamic_cstn(n, s).dynamic;
    return dump(doc);
  });

  m.def("compile_workflow", [](const std::string& text) {
    const Compilation c = compile_workflow(parse_workflow(text));
    return py::make_tuple(c.network, dump(compilation_map_to_json(c.map)));
  });
}
