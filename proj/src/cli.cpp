#include "moralswf/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "moralswf/audit.hpp"
#include "moralswf/fanaticism.hpp"
#include "moralswf/functionals.hpp"
#include "moralswf/scenario.hpp"

namespace moralswf {
namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kReportSchema = "moralswf.report/1";

// Thrown for flag combinations CLI11 cannot express; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rational flagRational(const std::string& flag, const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const Error& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

std::string approx(const Rational& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", r.toDouble());
  return buf;
}

// "-10099/100 (~ -100.99)"
std::string showRational(const Rational& r) {
  if (r.denominatorStr() == "1") return r.str();
  return r.str() + " (approx " + approx(r) + ")";
}

Json jsonInteger(bool fits, std::int64_t (Rational::*get)() const, std::string (Rational::*str)() const,
                 const Rational& r) {
  if (fits) return (r.*get)();
  return (r.*str)();
}

Json toJson(const Rational& r) {
  return Json{{"num", jsonInteger(r.numeratorFitsInt64(), &Rational::numeratorInt64,
                                  &Rational::numeratorStr, r)},
              {"den", jsonInteger(r.denominatorFitsInt64(), &Rational::denominatorInt64,
                                  &Rational::denominatorStr, r)}};
}

Json toJson(const Ranking& r) {
  Json groups = Json::array();
  for (const auto& g : r.groups) groups.push_back(g);
  return groups;
}

Json toJson(const SwfSpec& spec) {
  Json j{{"kind", std::string(swfKindName(spec.kind))}};
  if (spec.kind == SwfKind::Kthm && spec.k) {
    j["k"] = toJson(*spec.k);
    j["trim_mode"] = std::string(trimModeName(spec.trimMode));
  }
  return j;
}

Json toJson(const EthicalFramework& f, const ActionSet& actions) {
  Json theories = Json::array();
  for (const auto& [theory, credence] : f.members()) {
    Json evals = Json::object();
    for (const auto& a : actions) evals[a] = toJson(theory.at(a));
    theories.push_back(Json{{"id", theory.id}, {"credence", toJson(credence)}, {"evaluations", evals}});
  }
  return theories;
}

Json toJson(const DominanceVerdict& v) {
  return Json{{"is_dominant", v.isDominant},
              {"full_ranking", toJson(v.fullRanking)},
              {"dominant_ranking", toJson(v.dominantRanking)},
              {"yielding_ranking", toJson(v.yieldingRanking)}};
}

Json report(const std::string& command) {
  return Json{{"schema", kReportSchema}, {"command", command}};
}

std::string padRight(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

// Shared by rank / dominant: --swf, --k, --trim-mode.
struct SwfFlags {
  std::string swf;
  std::string k;
  std::string trimMode;

  void attach(CLI::App* cmd) {
    cmd->add_option("--swf", swf, "Functional: mec, maximin, kthm, hm");
    cmd->add_option("--k", k, "Trim level for kthm, e.g. 1/10");
    cmd->add_option("--trim-mode", trimMode, "kthm trim mode: literal (default) or renormalized");
  }

  SwfSpec resolve(const ScenarioDocument& doc) const {
    if (swf.empty()) {
      if (!k.empty() || !trimMode.empty()) throw UsageError("--k/--trim-mode need --swf kthm");
      return doc.defaultSwf.value_or(SwfSpec::mec());
    }
    auto kind = parseSwfKind(swf);
    if (!kind) throw UsageError("--swf: unknown functional '" + swf + "'");
    SwfSpec spec{*kind, std::nullopt, TrimMode::Literal};
    if (*kind == SwfKind::Kthm) {
      if (k.empty()) throw UsageError("--swf kthm requires --k");
      spec.k = flagRational("--k", k);
      if (!trimMode.empty()) {
        auto mode = parseTrimMode(trimMode);
        if (!mode) throw UsageError("--trim-mode: expected literal or renormalized");
        spec.trimMode = *mode;
      }
      try {
        spec.validate();
      } catch (const Error& e) {
        throw UsageError(e.what());
      }
    } else if (!k.empty() || !trimMode.empty()) {
      throw UsageError("--k/--trim-mode only apply to --swf kthm");
    }
    return spec;
  }
};

int cmdValidate(const std::string& path, bool json, std::ostream& out) {
  ScenarioDocument doc = loadScenarioFile(path);
  if (json) {
    Json j = report("validate");
    j["valid"] = true;
    j["theories"] = doc.framework.size();
    j["actions"] = doc.actions.ids();
    out << j.dump(2) << '\n';
  } else {
    out << "valid: " << doc.framework.size() << " theories, " << doc.actions.size()
        << " actions\n";
  }
  return kExitOk;
}

int cmdRank(const std::string& path, const SwfFlags& flags, bool json, std::ostream& out) {
  ScenarioDocument doc = loadScenarioFile(path);
  SwfSpec spec = flags.resolve(doc);
  Aggregation agg = aggregate(spec, doc.framework, doc.actions);
  if (json) {
    Json j = report("rank");
    j["swf"] = toJson(spec);
    Json scores = Json::array();
    for (const auto& [a, s] : agg.scores) scores.push_back(Json{{"action", a}, {"score", toJson(s)}});
    j["scores"] = scores;
    j["ranking"] = toJson(agg.ranking);
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  out << "functional: " << spec.describe() << '\n';
  out << "scores:\n";
  std::size_t width = 0;
  for (const auto& a : doc.actions) width = std::max(width, a.size());
  for (const auto& [a, s] : agg.scores) out << "  " << padRight(a, width) << "  " << showRational(s) << '\n';
  out << "ranking (worst to best): " << formatRanking(agg.ranking) << '\n';
  return kExitOk;
}

int cmdCompare(const std::string& path, const std::vector<std::string>& ks,
               const std::string& trimMode, bool json, std::ostream& out) {
  ScenarioDocument doc = loadScenarioFile(path);
  TrimMode mode = TrimMode::Literal;
  if (!trimMode.empty()) {
    auto m = parseTrimMode(trimMode);
    if (!m) throw UsageError("--trim-mode: expected literal or renormalized");
    mode = *m;
  }
  std::vector<SwfSpec> specs = {SwfSpec::mec(), SwfSpec::maximin()};
  for (const auto& k : ks) {
    SwfSpec spec = SwfSpec::kthm(flagRational("--k", k), mode);
    try {
      spec.validate();
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    specs.push_back(spec);
  }
  specs.push_back(SwfSpec::hm());

  std::vector<Aggregation> results;
  for (const auto& spec : specs) results.push_back(aggregate(spec, doc.framework, doc.actions));
  std::vector<std::pair<std::size_t, std::size_t>> disagreements;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    for (std::size_t j = i + 1; j < specs.size(); ++j) {
      if (!rankingsEqual(results[i].ranking, results[j].ranking)) disagreements.emplace_back(i, j);
    }
  }

  if (json) {
    Json j = report("compare");
    Json columns = Json::array();
    for (std::size_t i = 0; i < specs.size(); ++i) {
      Json scores = Json::object();
      for (const auto& [a, s] : results[i].scores) scores[a] = toJson(s);
      columns.push_back(Json{{"swf", toJson(specs[i])},
                             {"scores", scores},
                             {"ranking", toJson(results[i].ranking)}});
    }
    j["functionals"] = columns;
    Json dis = Json::array();
    for (auto [a, b] : disagreements) dis.push_back({specs[a].describe(), specs[b].describe()});
    j["disagreements"] = dis;
    out << j.dump(2) << '\n';
    return kExitOk;
  }

  std::vector<std::string> header = {"action"};
  for (const auto& s : specs) header.push_back(s.describe());
  std::vector<std::vector<std::string>> rows;
  for (std::size_t r = 0; r < doc.actions.size(); ++r) {
    std::vector<std::string> row = {doc.actions.ids()[r]};
    for (const auto& res : results) row.push_back(res.scores[r].second.str());
    rows.push_back(row);
  }
  std::vector<std::size_t> widths(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    widths[c] = header[c].size();
    for (const auto& row : rows) widths[c] = std::max(widths[c], row[c].size());
  }
  auto printRow = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << (c ? "  " : "") << (c + 1 < row.size() ? padRight(row[c], widths[c]) : row[c]);
    }
    out << '\n';
  };
  printRow(header);
  for (const auto& row : rows) printRow(row);
  std::size_t nameWidth = 0;
  for (const auto& spec : specs) nameWidth = std::max(nameWidth, spec.describe().size());
  out << "rankings (worst to best):\n";
  for (std::size_t i = 0; i < specs.size(); ++i) {
    out << "  " << padRight(specs[i].describe(), nameWidth) << "  "
        << formatRanking(results[i].ranking) << '\n';
  }
  if (disagreements.empty()) {
    out << "disagreements: none\n";
  } else {
    out << "disagreements:\n";
    for (auto [a, b] : disagreements) {
      out << "  " << specs[a].describe() << " vs " << specs[b].describe() << '\n';
    }
  }
  return kExitOk;
}

int cmdDominant(const std::string& path, const SwfFlags& flags, std::size_t maxTheories, bool json,
                std::ostream& out) {
  ScenarioDocument doc = loadScenarioFile(path);
  SwfSpec spec = flags.resolve(doc);
  auto subsets = enumerateDominantSubsets(spec, doc.framework, doc.actions, maxTheories);
  if (json) {
    Json j = report("dominant");
    j["swf"] = toJson(spec);
    Json list = Json::array();
    for (const auto& s : subsets) {
      list.push_back(Json{{"theories", s.theories},
                          {"credence", toJson(s.credence)},
                          {"verdict", toJson(s.verdict)}});
    }
    j["dominant_subsets"] = list;
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  out << "functional: " << spec.describe() << '\n';
  if (subsets.empty()) {
    out << "dominant subsets: none\n";
    return kExitOk;
  }
  out << "dominant subsets (smallest first):\n";
  for (const auto& s : subsets) {
    std::string ids = "{";
    for (std::size_t i = 0; i < s.theories.size(); ++i) ids += (i ? ", " : "") + s.theories[i];
    ids += "}";
    out << "  " << ids << "  credence " << showRational(s.credence) << "  ranking "
        << formatRanking(s.verdict.fullRanking) << '\n';
  }
  return kExitOk;
}

struct WitnessFlags {
  std::string swf;
  std::string credence;
  std::string k;
  std::string kPrime;
  std::string target;
  std::string reading;
  std::string outPath;
};

int cmdWitness(const std::string& path, const WitnessFlags& f, bool json, std::ostream& out) {
  ScenarioDocument doc = loadScenarioFile(path);
  std::optional<ActionId> target;
  if (!f.target.empty()) target = f.target;
  WitnessReport w;
  if (f.swf == "mec" || f.swf == "maximin") {
    if (f.credence.empty()) throw UsageError("--swf " + f.swf + " requires --credence");
    if (!f.k.empty() || !f.kPrime.empty()) throw UsageError("--k/--kprime only apply to --swf kthm");
    Rational c = flagRational("--credence", f.credence);
    if (f.swf == "mec") {
      if (!f.reading.empty()) throw UsageError("--reading only applies to --swf maximin");
      w = witnessMec(doc.framework, doc.actions, c, target);
    } else {
      if (target) throw UsageError("--target does not apply to --swf maximin");
      MaximinReading reading = MaximinReading::Corrected;
      if (f.reading == "literal") {
        reading = MaximinReading::Literal;
      } else if (!f.reading.empty() && f.reading != "corrected") {
        throw UsageError("--reading: expected corrected or literal");
      }
      w = witnessMaximin(doc.framework, doc.actions, c, reading);
    }
  } else if (f.swf == "kthm") {
    // The injected credence is k'; --credence is not used here.
    if (f.k.empty() || f.kPrime.empty()) throw UsageError("--swf kthm requires --k and --kprime");
    w = witnessKthm(doc.framework, doc.actions, flagRational("--k", f.k),
                    flagRational("--kprime", f.kPrime), target);
  } else {
    throw UsageError("--swf: witness supports mec, maximin or kthm");
  }

  ScenarioDocument extended{doc.actions, w.extendedFramework, w.swf};
  if (!f.outPath.empty()) saveScenarioFile(f.outPath, extended);

  if (json) {
    Json j = report("witness");
    j["swf"] = toJson(w.swf);
    Json ft = Json::object();
    for (const auto& a : doc.actions) ft[a] = toJson(w.fanaticalTheory.at(a));
    j["fanatical_theory"] = Json{{"id", w.fanaticalTheory.id}, {"evaluations", ft}};
    j["injected_theories"] = w.injectedTheories;
    j["total_credence"] = toJson(w.totalCredence);
    Json c = Json::object();
    if (w.construction.s) c["s"] = toJson(*w.construction.s);
    if (w.construction.m) c["m"] = toJson(*w.construction.m);
    if (w.construction.floor) c["floor"] = toJson(*w.construction.floor);
    if (w.construction.pivot) c["pivot"] = *w.construction.pivot;
    if (!w.construction.permutation.empty()) c["permutation"] = w.construction.permutation;
    j["construction"] = c;
    j["extended_framework"] = toJson(w.extendedFramework, doc.actions);
    j["verdict"] = toJson(w.verdict);
    if (!f.outPath.empty()) j["written"] = f.outPath;
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  out << "functional: " << w.swf.describe() << '\n';
  out << "fanatical theory: " << w.fanaticalTheory.id << " (credence "
      << showRational(w.totalCredence) << ")\n";
  for (const auto& a : doc.actions) {
    out << "  " << a << " = " << showRational(w.fanaticalTheory.at(a)) << '\n';
  }
  out << "construction:\n";
  if (w.construction.s) out << "  s = " << showRational(*w.construction.s) << '\n';
  if (w.construction.m) out << "  m = " << showRational(*w.construction.m) << '\n';
  if (w.construction.floor) out << "  M = " << showRational(*w.construction.floor) << '\n';
  if (w.construction.pivot) out << "  pivot = " << *w.construction.pivot << '\n';
  if (!w.construction.permutation.empty()) {
    out << "  permutation =";
    for (const auto& a : w.construction.permutation) out << ' ' << a;
    out << '\n';
  }
  out << "extended framework:\n";
  for (const auto& [theory, credence] : w.extendedFramework.members()) {
    out << "  " << theory.id << "  credence " << showRational(credence) << '\n';
  }
  out << "rankings (worst to best):\n";
  out << "  full      " << formatRanking(w.verdict.fullRanking) << '\n';
  out << "  dominant  " << formatRanking(w.verdict.dominantRanking) << '\n';
  out << "  yielding  " << formatRanking(w.verdict.yieldingRanking) << '\n';
  out << "verdict: dominant (verified)\n";
  if (!f.outPath.empty()) out << "wrote " << f.outPath << '\n';
  return kExitOk;
}

int cmdAudit(std::uint64_t seed, std::size_t trials, bool json, std::ostream& out) {
  AuditReport r = runAudit(seed, trials);
  if (json) {
    Json j = report("audit");
    j["seed"] = seed;
    j["trials"] = trials;
    Json suites = Json::array();
    for (const auto& s : r.suites) {
      suites.push_back(Json{{"name", s.name},
                            {"trials", s.trials},
                            {"successes", s.successes},
                            {"passed", s.passed()}});
    }
    j["suites"] = suites;
    j["passed"] = r.passed();
    out << j.dump(2) << '\n';
    return r.passed() ? kExitOk : kExitDomainError;
  }
  out << "audit seed=" << seed << " trials=" << trials << '\n';
  if (trials == 0) out << "note: 0 trials; every suite passes vacuously\n";
  std::size_t width = 0;
  for (const auto& s : r.suites) width = std::max(width, s.name.size());
  for (const auto& s : r.suites) {
    out << "  " << padRight(s.name, width) << "  " << s.successes << '/' << s.trials << "  "
        << (s.passed() ? "ok" : "FAILED") << '\n';
  }
  // suites: [0..2] mec, [3..5] maximin, [6..7] kthm witness, [8] kthm probe, [9..12] hm probe
  auto count = [&](std::size_t from, std::size_t to) {
    std::size_t n = 0;
    for (std::size_t i = from; i < to; ++i) n += r.suites[i].passed();
    return n;
  };
  auto failures = [&](std::size_t from, std::size_t to) {
    std::size_t n = 0;
    for (std::size_t i = from; i < to; ++i) n += r.suites[i].trials - r.suites[i].successes;
    return n;
  };
  out << "summary:\n";
  out << "  mec           Pascalian witnessed at " << count(0, 3) << "/3 k-levels (1/100, 1/10, 2/5)\n";
  out << "  maximin       Pascalian witnessed at " << count(3, 6) << "/3 k-levels (1/100, 1/10, 2/5)\n";
  out << "  kthm(k=1/10)  witnessed at " << count(6, 8) << "/2 k' levels (1/5, 2/5); "
      << failures(8, 9) << " failed probes with adversary mass <= 1/10\n";
  out << "  hm            " << failures(9, 13)
      << " failed probes at k in {1/100, 1/10, 2/5, 49/100}\n";
  out << "result: " << (r.passed() ? "all suites passed" : "DEVIATION FOUND") << '\n';
  return r.passed() ? kExitOk : kExitDomainError;
}

}  // namespace

int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Aggregate ethical theories under moral uncertainty and audit fanaticism",
               "moralswf"};
  app.require_subcommand(1);

  std::string path;
  bool json = false;
  SwfFlags swfFlags;
  WitnessFlags witnessFlags;
  std::vector<std::string> compareKs;
  std::string compareTrim;
  std::size_t maxTheories = kDefaultMaxTheories;
  std::uint64_t seed = 1;
  std::size_t trials = kDefaultAuditTrials;

  auto* validate = app.add_subcommand("validate", "Check a scenario file");
  validate->add_option("scenario", path, "Scenario file")->required();
  validate->add_flag("--json", json, "Machine-readable report");

  auto* rank = app.add_subcommand("rank", "Score and rank actions under one functional");
  rank->add_option("scenario", path, "Scenario file")->required();
  swfFlags.attach(rank);
  rank->add_flag("--json", json, "Machine-readable report");

  auto* compare = app.add_subcommand("compare", "Side-by-side scores under all functionals");
  compare->add_option("scenario", path, "Scenario file")->required();
  compare->add_option("--k", compareKs, "kthm trim levels (repeatable; default 1/10)");
  compare->add_option("--trim-mode", compareTrim, "kthm trim mode: literal or renormalized");
  compare->add_flag("--json", json, "Machine-readable report");

  auto* dominant = app.add_subcommand("dominant", "Enumerate dominant subsets of theories");
  dominant->add_option("scenario", path, "Scenario file")->required();
  swfFlags.attach(dominant);
  dominant->add_option("--max-theories", maxTheories, "Refuse frameworks larger than this");
  dominant->add_flag("--json", json, "Machine-readable report");

  auto* witness = app.add_subcommand("witness", "Construct a fanatical theory and verify it");
  witness->add_option("scenario", path, "Scenario file (the yielding framework)")->required();
  witness->add_option("--swf", witnessFlags.swf, "mec, maximin or kthm")->required();
  witness->add_option("--credence", witnessFlags.credence, "Credence of the injected theory");
  witness->add_option("--k", witnessFlags.k, "kthm trim level");
  witness->add_option("--kprime", witnessFlags.kPrime, "kthm: credence of the injected theory");
  witness->add_option("--target", witnessFlags.target, "Action the injected theory ranks best");
  witness->add_option("--reading", witnessFlags.reading, "maximin pivot: corrected or literal");
  witness->add_option("--out", witnessFlags.outPath, "Write the extended scenario here");
  witness->add_flag("--json", json, "Machine-readable report");

  auto* audit = app.add_subcommand("audit", "Run the randomized fanaticism suites");
  audit->add_option("--seed", seed, "Random seed");
  audit->add_option("--trials", trials, "Trials per suite");
  audit->add_flag("--json", json, "Machine-readable report");

  std::vector<std::string> argvStorage;
  argvStorage.reserve(args.size() + 1);
  argvStorage.push_back("moralswf");
  argvStorage.insert(argvStorage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argvStorage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (validate->parsed()) return cmdValidate(path, json, out);
    if (rank->parsed()) return cmdRank(path, swfFlags, json, out);
    if (compare->parsed()) {
      if (compareKs.empty()) compareKs.push_back("1/10");
      return cmdCompare(path, compareKs, compareTrim, json, out);
    }
    if (dominant->parsed()) return cmdDominant(path, swfFlags, maxTheories, json, out);
    if (witness->parsed()) return cmdWitness(path, witnessFlags, json, out);
    if (audit->parsed()) return cmdAudit(seed, trials, json, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error [" << errorCodeName(e.code()) << "]: " << e.what() << '\n';
    return kExitDomainError;
  }
  return kExitUsage;
}

}  // namespace moralswf
