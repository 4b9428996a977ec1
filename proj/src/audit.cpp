#include "moralswf/audit.hpp"

#include <algorithm>
#include <numeric>

namespace moralswf {
namespace {

constexpr std::int64_t kAdversaryMagnitude = 1'000'000'000;

std::uint64_t mixSeed(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (std::uint64_t{out[0]} << 32) | out[1];
}

// Stable per-suite stream id so suites do not share random sequences.
std::uint64_t streamId(const std::string& name) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : name) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

template <typename Trial>
SuiteResult runSuite(std::string name, std::uint64_t seed, std::size_t trials, Trial trial) {
  SuiteResult result{name, trials, 0};
  InstanceGenerator gen(seed, streamId(name));
  for (std::size_t i = 0; i < trials; ++i) {
    try {
      if (trial(gen)) ++result.successes;
    } catch (const Error&) {
      // A thrown precondition or ConstructionFailed counts as a failed trial.
    }
  }
  return result;
}

}  // namespace

InstanceGenerator::InstanceGenerator(std::uint64_t seed) : rng_(seed) {}

InstanceGenerator::InstanceGenerator(std::uint64_t seed, std::uint64_t stream)
    : rng_(mixSeed(seed, stream)) {}

std::size_t InstanceGenerator::uniform(std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
}

Rational InstanceGenerator::evaluation(std::int64_t bound) {
  auto den = static_cast<std::int64_t>(uniform(1, 8));
  std::int64_t span = bound * den;
  auto num = std::uniform_int_distribution<std::int64_t>(-span, span)(rng_);
  return Rational(num, den);
}

std::vector<Rational> InstanceGenerator::credences(std::size_t n) {
  std::vector<std::int64_t> weights(n);
  for (auto& w : weights) w = static_cast<std::int64_t>(uniform(1, 20));
  std::int64_t total = std::accumulate(weights.begin(), weights.end(), std::int64_t{0});
  std::vector<Rational> out;
  out.reserve(n);
  for (auto w : weights) out.emplace_back(w, total);
  return out;
}

RandomInstance InstanceGenerator::framework(const RandomFrameworkOptions& options) {
  std::size_t nActions = uniform(options.minActions, options.maxActions);
  std::size_t nTheories = uniform(options.minTheories, options.maxTheories);
  std::vector<ActionId> ids;
  for (std::size_t i = 0; i < nActions; ++i) ids.push_back("a" + std::to_string(i + 1));
  auto weights = credences(nTheories);
  std::vector<CredencedTheory> members;
  std::vector<Rational> seen;
  for (std::size_t t = 0; t < nTheories; ++t) {
    Theory theory{"t" + std::to_string(t + 1), {}};
    for (const auto& a : ids) {
      // Reuse an earlier value now and then so ties get exercised.
      Rational v = (!seen.empty() && uniform(0, 4) == 0) ? seen[uniform(0, seen.size() - 1)]
                                                          : evaluation(options.evaluationBound);
      seen.push_back(v);
      theory.evaluations[a] = v;
    }
    members.push_back({std::move(theory), weights[t]});
  }
  return {EthicalFramework(std::move(members)), ActionSet(std::move(ids))};
}

RandomInstance InstanceGenerator::frameworkWithMajority(std::size_t& majority,
                                                        const RandomFrameworkOptions& options) {
  RandomInstance inst = framework(options);
  std::size_t n = inst.framework.size();
  majority = uniform(0, n - 1);
  std::vector<std::int64_t> weights(n);
  std::int64_t rest = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == majority) continue;
    weights[i] = static_cast<std::int64_t>(uniform(1, 20));
    rest += weights[i];
  }
  weights[majority] = rest + static_cast<std::int64_t>(uniform(1, 20));
  std::int64_t total = rest + weights[majority];
  std::vector<CredencedTheory> members = inst.framework.members();
  for (std::size_t i = 0; i < n; ++i) members[i].credence = Rational(weights[i], total);
  inst.framework = EthicalFramework(std::move(members));
  return inst;
}

std::vector<CredencedTheory> InstanceGenerator::adversary(const Rational& maxMass) {
  std::size_t count = uniform(1, 3);
  Rational mass = maxMass;
  if (uniform(0, 3) != 0) {
    mass = maxMass * Rational(static_cast<std::int64_t>(uniform(1, 1000)), 1000);
  }
  std::vector<std::int64_t> weights(count);
  for (auto& w : weights) w = static_cast<std::int64_t>(uniform(1, 10));
  std::int64_t total = std::accumulate(weights.begin(), weights.end(), std::int64_t{0});

  auto extreme = [&](std::int64_t canonical) {
    switch (uniform(0, 4)) {
      case 0: return Rational(canonical);
      case 1: return Rational(kAdversaryMagnitude);
      case 2: return Rational(-kAdversaryMagnitude);
      default:
        return Rational(std::uniform_int_distribution<std::int64_t>(
            -kAdversaryMagnitude, kAdversaryMagnitude)(rng_));
    }
  };
  std::vector<CredencedTheory> out;
  for (std::size_t i = 0; i < count; ++i) {
    Theory theory{"x" + std::to_string(i + 1), {{"a", extreme(1)}, {"b", extreme(0)}}};
    out.push_back({std::move(theory), mass * Rational(weights[i], total)});
  }
  return out;
}

ActionId InstanceGenerator::nonMaximalTarget(const Ranking& ranking, const ActionSet& actions) {
  std::vector<ActionId> candidates;
  const auto& best = ranking.groups.back();
  for (const auto& a : actions) {
    if (best.size() == 1 && best.front() == a) continue;
    candidates.push_back(a);
  }
  return candidates[uniform(0, candidates.size() - 1)];
}

bool AuditReport::passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const auto& s) { return s.passed(); });
}

SuiteResult runMecWitnessSuite(std::uint64_t seed, std::size_t trials, const Rational& k) {
  return runSuite("mec witness k=" + k.str(), seed, trials, [&](InstanceGenerator& gen) {
    auto inst = gen.framework();
    auto base = rankUnchecked(SwfSpec::mec(), inst.framework, inst.actions);
    auto report = witnessMec(inst.framework, inst.actions, k, gen.nonMaximalTarget(base, inst.actions));
    return report.verdict.isDominant && report.totalCredence == k;
  });
}

SuiteResult runMaximinWitnessSuite(std::uint64_t seed, std::size_t trials, const Rational& k) {
  return runSuite("maximin witness k=" + k.str(), seed, trials, [&](InstanceGenerator& gen) {
    auto inst = gen.framework();
    auto report = witnessMaximin(inst.framework, inst.actions, k);
    return report.verdict.isDominant && report.totalCredence == k;
  });
}

SuiteResult runKthmWitnessSuite(std::uint64_t seed, std::size_t trials, const Rational& k,
                                const Rational& kPrime) {
  std::string name = "kthm(k=" + k.str() + ") witness k'=" + kPrime.str();
  return runSuite(name, seed, trials, [&](InstanceGenerator& gen) {
    auto inst = gen.framework();
    auto base = rankUnchecked(SwfSpec::kthm(k), inst.framework, inst.actions);
    auto report = witnessKthm(inst.framework, inst.actions, k, kPrime,
                              gen.nonMaximalTarget(base, inst.actions));
    return report.verdict.isDominant && report.totalCredence == kPrime;
  });
}

SuiteResult runKthmProbeSuite(std::uint64_t seed, std::size_t trials, const Rational& k) {
  return runSuite("kthm(k=" + k.str() + ") probe mass<=" + k.str(), seed, trials,
                  [&](InstanceGenerator& gen) {
                    auto r = runKthmProbe(k, gen.adversary(k));
                    return r.adversaryNeutralised && r.baseRankingPreserved &&
                           !r.adversaryDominant;
                  });
}

SuiteResult runHmProbeSuite(std::uint64_t seed, std::size_t trials, const Rational& k) {
  return runSuite("hm probe mass<=" + k.str(), seed, trials, [&](InstanceGenerator& gen) {
    auto r = runHmProbe(k, gen.adversary(k));
    return r.adversaryNeutralised && r.baseRankingPreserved && !r.adversaryDominant;
  });
}

AuditReport runAudit(std::uint64_t seed, std::size_t trials) {
  AuditReport report{seed, trials, {}};
  const std::vector<Rational> levels = {Rational(1, 100), Rational(1, 10), Rational(2, 5)};
  for (const auto& k : levels) report.suites.push_back(runMecWitnessSuite(seed, trials, k));
  for (const auto& k : levels) report.suites.push_back(runMaximinWitnessSuite(seed, trials, k));
  const Rational trim(1, 10);
  for (const auto& kp : {Rational(1, 5), Rational(2, 5)}) {
    report.suites.push_back(runKthmWitnessSuite(seed, trials, trim, kp));
  }
  report.suites.push_back(runKthmProbeSuite(seed, trials, trim));
  for (const auto& k : {Rational(1, 100), Rational(1, 10), Rational(2, 5), Rational(49, 100)}) {
    report.suites.push_back(runHmProbeSuite(seed, trials, k));
  }
  return report;
}

}  // namespace moralswf
