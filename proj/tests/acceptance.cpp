// Acceptance suite: one PASS/FAIL line per criterion, each checked at its
// stated tolerance (exact equality) and time limit. Exit status is nonzero
// if any criterion fails.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "moralswf/audit.hpp"
#include "moralswf/fanaticism.hpp"
#include "moralswf/functionals.hpp"
#include "moralswf/scenario.hpp"
#include "oracle.hpp"

using namespace moralswf;
using fixtures::ranking;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

int failures = 0;

void criterion(int id, const char* title, double limitSeconds, const std::function<Outcome()>& body) {
  auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs > limitSeconds) o.require(false, "exceeded time limit");
  if (!o.ok) ++failures;
  std::printf("[%s] %2d %s (%.3fs, limit %gs)%s%s\n", o.ok ? "PASS" : "FAIL", id, title, secs, limitSeconds,
              o.detail.empty() ? "" : ": ", o.detail.c_str());
  std::fflush(stdout);
}

Rational scoreOf(const Aggregation& agg, const std::string& a) {
  for (const auto& [id, v] : agg.scores) {
    if (id == a) return v;
  }
  throw std::logic_error("missing score for " + a);
}

std::string readFile(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string counts(std::size_t good, std::size_t total) {
  return std::to_string(good) + "/" + std::to_string(total);
}

const Rational kLevels[] = {Rational(1, 100), Rational(1, 10), Rational(2, 5)};

Outcome golden() {
  Outcome o;
  auto f = fixtures::frobo();
  auto a = fixtures::lr();
  auto mec = aggregate(SwfSpec::mec(), f, a);
  o.require(scoreOf(mec, "l") == Rational(-10099, 100) && scoreOf(mec, "r") == Rational(-599, 50), "mec scores");
  o.require(mec.ranking == ranking({{"l"}, {"r"}}), "mec ranking");
  auto mm = aggregate(SwfSpec::maximin(), f, a);
  o.require(scoreOf(mm, "l") == Rational(-10000) && scoreOf(mm, "r") == Rational(-1000), "maximin scores");
  o.require(mm.ranking == ranking({{"l"}, {"r"}}), "maximin ranking");
  auto ren = aggregate(SwfSpec::kthm(Rational(1, 10), TrimMode::Renormalized), f, a);
  o.require(scoreOf(ren, "l") == Rational(-1) && scoreOf(ren, "r") == Rational(-2), "kthm renormalized scores");
  o.require(ren.ranking == ranking({{"r"}, {"l"}}), "kthm renormalized ranking");
  auto lit = aggregate(SwfSpec::kthm(Rational(1, 10), TrimMode::Literal), f, a);
  o.require(scoreOf(lit, "l") == Rational(-99, 100) && scoreOf(lit, "r") == Rational(-99, 50),
            "kthm literal scores");
  o.require(lit.ranking == ranking({{"r"}, {"l"}}), "kthm literal ranking");
  auto hm = aggregate(SwfSpec::hm(), f, a);
  o.require(scoreOf(hm, "l") == Rational(-1) && scoreOf(hm, "r") == Rational(-2), "hm medians");
  o.require(hm.ranking == ranking({{"r"}, {"l"}}), "hm ranking");
  return o;
}

bool listed(const std::vector<DominantSubset>& found, const TheoryIdSet& s, const Rational& credence) {
  for (const auto& d : found) {
    if (TheoryIdSet(d.theories.begin(), d.theories.end()) == s && d.credence == credence) return true;
  }
  return false;
}

std::string describe(const std::vector<DominantSubset>& found) {
  std::string out;
  for (const auto& d : found) {
    out += out.empty() ? "{" : ", {";
    bool first = true;
    for (const auto& t : d.theories) {
      out += (first ? "" : ",") + t;
      first = false;
    }
    out += "} credence " + d.credence.str();
  }
  return out.empty() ? "none" : out;
}

Outcome dominantSubsets() {
  Outcome o;
  auto lr = fixtures::lr();
  auto froboMec = enumerateDominantSubsets(SwfSpec::mec(), fixtures::frobo(), lr);
  o.require(listed(froboMec, {"d"}, Rational(1, 100)), "mec: {d} not dominant in frobo");
  o.require(oracle::isDominant(SwfSpec::mec(), fixtures::frobo(), lr, {"d"}), "oracle disagrees on {d}");
  auto tieMec = enumerateDominantSubsets(SwfSpec::mec(), fixtures::tiebreaker(), lr);
  o.require(listed(tieMec, {"t"}, Rational(1, 100)), "mec: {t} not dominant in tiebreaker");
  o.require(oracle::isDominant(SwfSpec::mec(), fixtures::tiebreaker(), lr, {"t"}), "oracle disagrees on {t}");
  auto froboHm = enumerateDominantSubsets(SwfSpec::hm(), fixtures::frobo(), lr);
  o.require(froboHm.empty(), "hm: expected no dominant subset in frobo, enumeration found " + describe(froboHm));
  return o;
}

// Shared body of the mec / maximin witness criteria.
Outcome witnessSuite(const SwfSpec& spec, const std::function<WitnessReport(const RandomInstance&, const Rational&,
                                                                             InstanceGenerator&)>& make,
                     std::uint64_t seed) {
  Outcome o;
  InstanceGenerator gen(seed);
  std::size_t good = 0, total = 0;
  for (int i = 0; i < 200; ++i) {
    auto inst = gen.framework();
    for (const auto& k : kLevels) {
      ++total;
      try {
        auto w = make(inst, k, gen);
        bool credenceExact = w.totalCredence == k && w.extendedFramework.credenceOf(w.fanaticalTheory.id) == k;
        if (w.verdict.isDominant && credenceExact &&
            oracle::isDominant(spec, w.extendedFramework, inst.actions, w.injectedTheories)) {
          ++good;
        }
      } catch (const Error&) {
      }
    }
  }
  o.require(good == total, "verified " + counts(good, total));
  if (o.ok) o.detail = "verified " + counts(good, total);
  return o;
}

Outcome kthmWitness() {
  Outcome o;
  InstanceGenerator gen(303);
  const Rational k(1, 10);
  std::size_t good = 0, total = 0;
  for (int i = 0; i < 200; ++i) {
    auto inst = gen.framework();
    for (const Rational& kPrime : {Rational(1, 5), Rational(2, 5)}) {
      ++total;
      try {
        auto target = gen.nonMaximalTarget(
            aggregate(SwfSpec::kthm(k), inst.framework, inst.actions).ranking, inst.actions);
        auto w = witnessKthm(inst.framework, inst.actions, k, kPrime, target);
        if (w.verdict.isDominant && w.totalCredence == kPrime &&
            oracle::isDominant(SwfSpec::kthm(k, TrimMode::Literal), w.extendedFramework, inst.actions,
                               w.injectedTheories)) {
          ++good;
        }
      } catch (const Error&) {
      }
    }
  }
  o.require(good == total, "verified " + counts(good, total));
  if (o.ok) o.detail = "verified " + counts(good, total);
  return o;
}

Outcome kthmProbes() {
  Outcome o;
  InstanceGenerator gen(404);
  std::size_t dominant = 0, broken = 0, total = 0;
  for (const auto& k : kLevels) {
    for (int i = 0; i < 500; ++i) {
      auto adv = gen.adversary(k);
      auto p = runKthmProbe(k, adv);
      TheoryIdSet ids;
      for (const auto& m : adv) ids.insert(m.theory.id);
      ++total;
      if (p.adversaryDominant || oracle::isDominant(SwfSpec::kthm(k), p.extendedFramework, canonicalActions(), ids))
        ++dominant;
      if (!p.baseRankingPreserved || p.ranking != ranking({{"b"}, {"a"}})) ++broken;
    }
  }
  o.require(dominant == 0, std::to_string(dominant) + " dominant adversaries");
  o.require(broken == 0, std::to_string(broken) + " trials lost the base ranking");
  if (o.ok) o.detail = "0 dominant in " + std::to_string(total) + " adversaries";
  return o;
}

Outcome medianProbes() {
  Outcome o;
  InstanceGenerator gen(505);
  const Rational bound(49, 100);
  std::size_t dominant = 0;
  for (int i = 0; i < 500; ++i) {
    auto adv = gen.adversary(bound);
    auto p = runHmProbe(bound, adv);
    TheoryIdSet ids;
    for (const auto& m : adv) ids.insert(m.theory.id);
    if (p.adversaryDominant || oracle::isDominant(SwfSpec::hm(), p.extendedFramework, canonicalActions(), ids))
      ++dominant;
  }
  o.require(dominant == 0, std::to_string(dominant) + "/500 dominant adversaries");

  std::size_t dictated = 0;
  for (int i = 0; i < 200; ++i) {
    std::size_t majority = 0;
    auto inst = gen.frameworkWithMajority(majority);
    if (rankingsEqual(aggregate(SwfSpec::hm(), inst.framework, inst.actions).ranking,
                      theoryRanking(inst.framework.theory(majority), inst.actions)) &&
        inst.framework.credence(majority) > Rational(1, 2)) {
      ++dictated;
    }
  }
  o.require(dictated == 200, "majority dictated " + counts(dictated, 200));
  if (o.ok) o.detail = "0/500 dominant; majority dictated 200/200";
  return o;
}

Outcome zeroTrim() {
  Outcome o;
  InstanceGenerator gen(606);
  std::size_t same = 0;
  for (int i = 0; i < 200; ++i) {
    auto inst = gen.framework();
    if (rankingsEqual(aggregate(SwfSpec::kthm(Rational(0)), inst.framework, inst.actions).ranking,
                      aggregate(SwfSpec::mec(), inst.framework, inst.actions).ranking)) {
      ++same;
    }
  }
  o.require(same == 200, "equal on " + counts(same, 200));
  return o;
}

Outcome oracles() {
  Outcome o;
  InstanceGenerator gen(707);
  std::size_t medianOk = 0;
  for (int i = 0; i < 500; ++i) {
    auto inst = gen.framework();
    auto frame = oracle::fromFramework(inst.framework, inst.actions);
    bool all = true;
    for (std::size_t a = 0; a < inst.actions.size(); ++a) {
      all = all && wmedian(inst.framework, inst.actions.ids()[a]) == oracle::wmedian(frame, a);
    }
    if (all) ++medianOk;
  }
  o.require(medianOk == 500, "wmedian agreed on " + counts(medianOk, 500));

  RandomFrameworkOptions small;
  small.maxTheories = 4;
  const SwfSpec specs[] = {SwfSpec::mec(), SwfSpec::maximin(), SwfSpec::hm(), SwfSpec::kthm(Rational(1, 10)),
                           SwfSpec::kthm(Rational(1, 4), TrimMode::Renormalized)};
  std::size_t enumOk = 0, enumTotal = 0;
  for (int i = 0; i < 200; ++i) {
    auto inst = gen.framework(small);
    auto frame = oracle::fromFramework(inst.framework, inst.actions);
    const std::size_t n = inst.framework.size();
    for (const auto& spec : specs) {
      ++enumTotal;
      std::vector<TheoryIdSet> expected;
      for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
        std::vector<bool> keep(n);
        TheoryIdSet ids;
        for (std::size_t t = 0; t < n; ++t) {
          keep[t] = (mask >> t) & 1u;
          if (keep[t]) ids.insert(inst.framework.theory(t).id);
        }
        if (oracle::isDominant(spec, frame, inst.actions.size(), keep)) expected.push_back(ids);
      }
      std::vector<TheoryIdSet> got;
      for (const auto& d : enumerateDominantSubsets(spec, inst.framework, inst.actions)) got.emplace_back(d.theories.begin(), d.theories.end());
      std::sort(expected.begin(), expected.end());
      std::sort(got.begin(), got.end());
      if (got == expected) ++enumOk;
    }
  }
  o.require(enumOk == enumTotal, "enumeration agreed on " + counts(enumOk, enumTotal));
  if (o.ok) o.detail = "wmedian 500/500, enumeration " + counts(enumOk, enumTotal);
  return o;
}

Outcome roundTrip() {
  Outcome o;
  InstanceGenerator gen(808);
  const std::optional<SwfSpec> swfs[] = {std::nullopt, SwfSpec::mec(), SwfSpec::maximin(), SwfSpec::hm(),
                                         SwfSpec::kthm(Rational(1, 10)),
                                         SwfSpec::kthm(Rational(7, 50), TrimMode::Renormalized)};
  std::size_t good = 0;
  for (int i = 0; i < 200; ++i) {
    auto inst = gen.framework();
    ScenarioDocument doc{inst.actions, inst.framework, swfs[gen.uniform(0, std::size(swfs) - 1)]};
    std::string text = serializeScenario(doc);
    ScenarioDocument back = parseScenario(text);
    if (back == doc && serializeScenario(back) == text) ++good;
  }
  o.require(good == 200, "generated documents " + counts(good, 200));
  for (const char* name : {"frobo.scenario", "tiebreaker.scenario"}) {
    std::string text = readFile(fixtures::scenario(name));
    o.require(serializeScenario(parseScenario(text)) == text, std::string(name) + " not byte-exact");
  }
  return o;
}

}  // namespace

int main() {
  auto start = std::chrono::steady_clock::now();

  criterion(1, "golden FROBO scores and rankings", 1, golden);
  criterion(2, "dominant subsets of FROBO and tiebreaker", 1, dominantSubsets);
  criterion(3, "mec witness suite", 10, [] {
    return witnessSuite(SwfSpec::mec(),
                        [](const RandomInstance& inst, const Rational& k, InstanceGenerator& gen) {
                          auto target = gen.nonMaximalTarget(
                              aggregate(SwfSpec::mec(), inst.framework, inst.actions).ranking, inst.actions);
                          return witnessMec(inst.framework, inst.actions, k, target);
                        },
                        101);
  });
  criterion(4, "maximin witness suite (corrected construction)", 10, [] {
    return witnessSuite(SwfSpec::maximin(),
                        [](const RandomInstance& inst, const Rational& k, InstanceGenerator&) {
                          return witnessMaximin(inst.framework, inst.actions, k);
                        },
                        202);
  });
  criterion(5, "kthm(k=1/10) witness suite at k' in {1/5, 2/5}", 10, kthmWitness);
  criterion(6, "kthm probes with adversary mass <= k", 10, kthmProbes);
  criterion(7, "hm probes and majority dictator", 10, medianProbes);
  criterion(8, "kthm(k=0) ranks like mec", 10, zeroTrim);
  criterion(9, "oracle equivalences (wmedian, enumeration)", 10, oracles);
  criterion(10, "scenario round-trip", 10, roundTrip);

  double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool inBudget = total <= 60;
  std::printf("total %.3fs (budget 60s)%s\n", total, inBudget ? "" : " EXCEEDED");
  std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 && inBudget ? 0 : 1;
}
