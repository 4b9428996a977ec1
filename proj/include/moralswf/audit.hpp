#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "moralswf/fanaticism.hpp"

namespace moralswf {

struct RandomFrameworkOptions {
  std::size_t minTheories = 2;
  std::size_t maxTheories = 5;
  std::size_t minActions = 2;
  std::size_t maxActions = 4;
  std::int64_t evaluationBound = 100;  // evaluations lie in [-bound, bound]
};

struct RandomInstance {
  EthicalFramework framework;
  ActionSet actions;
};

// Seeded generator for the randomized property suites. The same seed always
// produces the same sequence of instances.
class InstanceGenerator {
 public:
  explicit InstanceGenerator(std::uint64_t seed);
  InstanceGenerator(std::uint64_t seed, std::uint64_t stream);

  std::size_t uniform(std::size_t lo, std::size_t hi);  // inclusive
  Rational evaluation(std::int64_t bound);

  RandomInstance framework(const RandomFrameworkOptions& options = {});
  // Like framework(), but one theory (at a random position) holds credence
  // strictly above 1/2. Its index is written to `majority`.
  RandomInstance frameworkWithMajority(std::size_t& majority,
                                       const RandomFrameworkOptions& options = {});
  // 1 to 3 theories "x1".."x3" over {a, b}, total credence in (0, maxMass],
  // hitting maxMass exactly about a quarter of the time. Evaluations are
  // extreme (up to 1e9 in magnitude) or tie the canonical theory.
  std::vector<CredencedTheory> adversary(const Rational& maxMass);
  // A uniformly chosen action that is not the unique best under `ranking`.
  ActionId nonMaximalTarget(const Ranking& ranking, const ActionSet& actions);

 private:
  std::vector<Rational> credences(std::size_t n);

  std::mt19937_64 rng_;
};

struct SuiteResult {
  std::string name;
  std::size_t trials = 0;
  std::size_t successes = 0;
  bool passed() const { return successes == trials; }
};

struct AuditReport {
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::vector<SuiteResult> suites;
  bool passed() const;
};

inline constexpr std::size_t kDefaultAuditTrials = 200;

// One success per trial whose witness verifies with credence exactly k.
SuiteResult runMecWitnessSuite(std::uint64_t seed, std::size_t trials, const Rational& k);
SuiteResult runMaximinWitnessSuite(std::uint64_t seed, std::size_t trials, const Rational& k);
SuiteResult runKthmWitnessSuite(std::uint64_t seed, std::size_t trials, const Rational& k,
                                const Rational& kPrime);
// One success per adversary that is neutralised, leaves [{b}, {a}] intact
// and is not dominant.
SuiteResult runKthmProbeSuite(std::uint64_t seed, std::size_t trials, const Rational& k);
SuiteResult runHmProbeSuite(std::uint64_t seed, std::size_t trials, const Rational& k);

// Pascalian witnesses for mec and maximin at k in {1/100, 1/10, 2/5};
// kthm(1/10) witnesses at k' in {1/5, 2/5} and probes at 1/10; hm probes at
// k in {1/100, 1/10, 2/5, 49/100}.
AuditReport runAudit(std::uint64_t seed, std::size_t trials = kDefaultAuditTrials);

}  // namespace moralswf
