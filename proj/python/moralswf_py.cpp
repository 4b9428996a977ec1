#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <tuple>
#include <vector>

#include "moralswf/audit.hpp"
#include "moralswf/fanaticism.hpp"
#include "moralswf/functionals.hpp"
#include "moralswf/scenario.hpp"

namespace py = pybind11;
using namespace moralswf;

// Rational <-> fractions.Fraction. Loading also accepts int and exact
// strings ("99/100", "0.99"); floats are refused.
namespace pybind11::detail {
template <>
struct type_caster<Rational> {
  PYBIND11_TYPE_CASTER(Rational, const_name("fractions.Fraction"));

  bool load(handle src, bool) {
    if (!src || PyFloat_Check(src.ptr()) || PyBool_Check(src.ptr())) return false;
    std::string text;
    if (py::isinstance<py::str>(src)) {
      text = src.cast<std::string>();
    } else if (PyLong_Check(src.ptr())) {
      text = py::str(src).cast<std::string>();
    } else if (py::hasattr(src, "numerator") && py::hasattr(src, "denominator")) {
      text = py::str(src.attr("numerator")).cast<std::string>() + "/" +
             py::str(src.attr("denominator")).cast<std::string>();
    } else {
      return false;
    }
    try {
      value = Rational::parse(text);
    } catch (const Error&) {
      return false;
    }
    return true;
  }

  static handle cast(const Rational& r, return_value_policy, handle) {
    return py::module_::import("fractions").attr("Fraction")(r.str()).release();
  }
};
}  // namespace pybind11::detail

namespace {

using TheorySpec = std::tuple<std::string, Rational, std::map<std::string, Rational>>;

std::vector<CredencedTheory> toMembers(const std::vector<TheorySpec>& specs) {
  std::vector<CredencedTheory> out;
  for (const auto& [id, credence, evals] : specs) {
    out.push_back({Theory{id, {evals.begin(), evals.end()}}, credence});
  }
  return out;
}

std::vector<TheorySpec> fromFramework(const EthicalFramework& f) {
  std::vector<TheorySpec> out;
  for (const auto& [theory, credence] : f.members()) {
    out.emplace_back(theory.id, credence,
                     std::map<std::string, Rational>(theory.evaluations.begin(),
                                                     theory.evaluations.end()));
  }
  return out;
}

py::dict auditToDict(const AuditReport& r) {
  py::list suites;
  for (const auto& s : r.suites) {
    py::dict d;
    d["name"] = s.name;
    d["trials"] = s.trials;
    d["successes"] = s.successes;
    d["passed"] = s.passed();
    suites.append(d);
  }
  py::dict out;
  out["seed"] = r.seed;
  out["trials"] = r.trials;
  out["suites"] = suites;
  out["passed"] = r.passed();
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Social welfare functionals over ethical theories, with fanaticism witnesses";

  static py::exception<Error> errorType(m, "MoralSwfError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object inst = py::handle(errorType.ptr())(e.what());
      inst.attr("code") = std::string(errorCodeName(e.code()));
      PyErr_SetObject(errorType.ptr(), inst.ptr());
    }
  });

  py::class_<ActionSet>(m, "ActionSet")
      .def(py::init<std::vector<ActionId>>(), py::arg("actions"))
      .def_property_readonly("ids", &ActionSet::ids)
      .def("__len__", &ActionSet::size)
      .def("__contains__", [](const ActionSet& a, const std::string& id) { return a.contains(id); })
      .def("__eq__", [](const ActionSet& a, const ActionSet& b) { return a == b; })
      .def("__repr__", [](const ActionSet& a) {
        std::string s = "ActionSet([";
        for (std::size_t i = 0; i < a.size(); ++i) s += (i ? ", '" : "'") + a.ids()[i] + "'";
        return s + "])";
      });

  py::class_<EthicalFramework>(m, "EthicalFramework")
      .def(py::init([](const std::vector<TheorySpec>& specs) {
             return EthicalFramework(toMembers(specs));
           }),
           py::arg("theories"),
           "theories: list of (id, credence, {action: evaluation})")
      .def("theory_ids", &EthicalFramework::theoryIds)
      .def("credence", [](const EthicalFramework& f, const std::string& id) { return f.credenceOf(id); })
      .def("evaluation", [](const EthicalFramework& f, const std::string& id, const std::string& a) {
        auto i = f.indexOf(id);
        if (!i) throw Error(ErrorCode::UnknownTheoryId, "unknown theory '" + id + "'");
        return f.theory(*i).at(a);
      })
      .def("theories", &fromFramework)
      .def("__len__", &EthicalFramework::size)
      .def("__eq__", [](const EthicalFramework& a, const EthicalFramework& b) { return a == b; });

  py::class_<SwfSpec>(m, "SwfSpec")
      .def_static("mec", &SwfSpec::mec)
      .def_static("maximin", &SwfSpec::maximin)
      .def_static("hm", &SwfSpec::hm)
      .def_static("kthm", [](const Rational& k, const std::string& mode) {
             auto parsed = parseTrimMode(mode);
             if (!parsed) throw Error(ErrorCode::InvalidSpec, "unknown trim mode '" + mode + "'");
             SwfSpec spec = SwfSpec::kthm(k, *parsed);
             spec.validate();
             return spec;
           },
           py::arg("k"), py::arg("trim_mode") = "literal")
      .def_property_readonly("kind", [](const SwfSpec& s) { return std::string(swfKindName(s.kind)); })
      .def_property_readonly("k", [](const SwfSpec& s) { return s.k; })
      .def_property_readonly("trim_mode",
                             [](const SwfSpec& s) { return std::string(trimModeName(s.trimMode)); })
      .def("describe", &SwfSpec::describe)
      .def("__repr__", [](const SwfSpec& s) { return "SwfSpec(" + s.describe() + ")"; });

  m.def("validate_framework", &validateFramework, py::arg("framework"), py::arg("actions"));
  m.def("restrict", &restrict, py::arg("framework"), py::arg("theories"));
  m.def("extend", [](const EthicalFramework& f, const std::vector<TheorySpec>& added) {
    return extend(f, toMembers(added));
  }, py::arg("framework"), py::arg("added"));
  m.def("ranking_from_scores", [](const ScoreTable& scores) { return rankingFromScores(scores).groups; },
        py::arg("scores"));
  m.def("rankings_equal", [](const std::vector<std::vector<ActionId>>& a,
                             const std::vector<std::vector<ActionId>>& b) {
    return rankingsEqual(Ranking{a}, Ranking{b});
  });
  m.def("theory_ranking", [](const EthicalFramework& f, const std::string& id, const ActionSet& a) {
    auto i = f.indexOf(id);
    if (!i) throw Error(ErrorCode::UnknownTheoryId, "unknown theory '" + id + "'");
    return theoryRanking(f.theory(*i), a).groups;
  });

  m.def("wam", &wam, py::arg("framework"), py::arg("action"));
  m.def("min_evaluation", &minEvaluation, py::arg("framework"), py::arg("action"));
  m.def("sorted_evaluations", [](const EthicalFramework& f, const std::string& a) {
    std::vector<std::pair<std::string, Rational>> out;
    for (const auto& e : sortedEvaluations(f, a)) out.emplace_back(e.theory, e.value);
    return out;
  }, py::arg("framework"), py::arg("action"));
  m.def("bottom_k", &bottomK, py::arg("framework"), py::arg("action"), py::arg("k"));
  m.def("top_k", &topK, py::arg("framework"), py::arg("action"), py::arg("k"));
  m.def("trimmed_wam", [](const EthicalFramework& f, const std::string& a, const Rational& k,
                          const std::string& mode) {
    auto parsed = parseTrimMode(mode);
    if (!parsed) throw Error(ErrorCode::InvalidSpec, "unknown trim mode '" + mode + "'");
    return trimmedWam(f, a, k, *parsed);
  }, py::arg("framework"), py::arg("action"), py::arg("k"), py::arg("trim_mode") = "literal");
  m.def("wmedian", &wmedian, py::arg("framework"), py::arg("action"));
  m.def("aggregate", [](const SwfSpec& spec, const EthicalFramework& f, const ActionSet& a) {
    Aggregation agg = aggregate(spec, f, a);
    return std::make_pair(agg.scores, agg.ranking.groups);
  }, py::arg("swf"), py::arg("framework"), py::arg("actions"),
     "Returns (scores as [(action, score)], ranking as [[action, ...], ...] worst to best)");

  py::class_<DominanceVerdict>(m, "DominanceVerdict")
      .def_readonly("is_dominant", &DominanceVerdict::isDominant)
      .def_property_readonly("full_ranking", [](const DominanceVerdict& v) { return v.fullRanking.groups; })
      .def_property_readonly("dominant_ranking", [](const DominanceVerdict& v) { return v.dominantRanking.groups; })
      .def_property_readonly("yielding_ranking", [](const DominanceVerdict& v) { return v.yieldingRanking.groups; });

  py::class_<DominantSubset>(m, "DominantSubset")
      .def_readonly("theories", &DominantSubset::theories)
      .def_readonly("credence", &DominantSubset::credence)
      .def_readonly("verdict", &DominantSubset::verdict);

  m.def("is_dominant_subset", &isDominantSubset, py::arg("swf"), py::arg("framework"),
        py::arg("actions"), py::arg("dominant"));
  m.def("enumerate_dominant_subsets", &enumerateDominantSubsets, py::arg("swf"),
        py::arg("framework"), py::arg("actions"), py::arg("max_theories") = kDefaultMaxTheories);

  py::class_<WitnessReport>(m, "WitnessReport")
      .def_readonly("swf", &WitnessReport::swf)
      .def_readonly("extended_framework", &WitnessReport::extendedFramework)
      .def_property_readonly("fanatical_theory", [](const WitnessReport& w) {
        return std::make_pair(w.fanaticalTheory.id,
                              std::map<std::string, Rational>(w.fanaticalTheory.evaluations.begin(),
                                                              w.fanaticalTheory.evaluations.end()));
      })
      .def_readonly("injected_theories", &WitnessReport::injectedTheories)
      .def_readonly("total_credence", &WitnessReport::totalCredence)
      .def_readonly("verdict", &WitnessReport::verdict)
      .def_property_readonly("construction", [](const WitnessReport& w) {
        py::dict d;
        if (w.construction.s) d["s"] = *w.construction.s;
        if (w.construction.m) d["m"] = *w.construction.m;
        if (w.construction.floor) d["floor"] = *w.construction.floor;
        if (w.construction.pivot) d["pivot"] = *w.construction.pivot;
        if (!w.construction.permutation.empty()) d["permutation"] = w.construction.permutation;
        return d;
      });

  m.def("witness_mec", &witnessMec, py::arg("yielding"), py::arg("actions"), py::arg("k"),
        py::arg("target") = py::none());
  m.def("witness_maximin", [](const EthicalFramework& f, const ActionSet& a, const Rational& k,
                              const std::string& reading) {
    if (reading != "corrected" && reading != "literal") {
      throw Error(ErrorCode::InvalidSpec, "reading must be 'corrected' or 'literal'");
    }
    return witnessMaximin(f, a, k,
                          reading == "literal" ? MaximinReading::Literal : MaximinReading::Corrected);
  }, py::arg("yielding"), py::arg("actions"), py::arg("k"), py::arg("reading") = "corrected");
  m.def("witness_kthm", &witnessKthm, py::arg("yielding"), py::arg("actions"), py::arg("k"),
        py::arg("k_prime"), py::arg("target") = py::none());

  m.def("probe_kthm_non_fanatical", [](const Rational& k, const std::vector<TheorySpec>& adv) {
    return probeKthmNonFanatical(k, toMembers(adv));
  }, py::arg("k"), py::arg("adversary"));
  m.def("probe_hm_non_fanatical", [](const Rational& k, const std::vector<TheorySpec>& adv) {
    return probeHmNonFanatical(k, toMembers(adv));
  }, py::arg("k"), py::arg("adversary"));

  py::class_<ScenarioDocument>(m, "ScenarioDocument")
      .def_readonly("actions", &ScenarioDocument::actions)
      .def_readonly("framework", &ScenarioDocument::framework)
      .def_readonly("default_swf", &ScenarioDocument::defaultSwf);
  m.def("parse_scenario", &parseScenario, py::arg("text"));
  m.def("serialize_scenario", &serializeScenario, py::arg("document"));
  m.def("load_scenario", [](const std::string& path) { return loadScenarioFile(path); }, py::arg("path"));

  m.def("run_audit", [](std::uint64_t seed, std::size_t trials) { return auditToDict(runAudit(seed, trials)); },
        py::arg("seed") = 1, py::arg("trials") = kDefaultAuditTrials);
}
