#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "moralswf/core.hpp"
#include "moralswf/functionals.hpp"

namespace moralswf {

// Outcome of testing T_d against the dominant-subset conditions:
// f(F) = f(F_d) and f(F_d) != f(F_y).
struct DominanceVerdict {
  bool isDominant = false;
  Ranking fullRanking;
  Ranking dominantRanking;
  Ranking yieldingRanking;
};

// Requires T_d and T \ T_d both nonempty (NotProperSubset) and every id known
// (UnknownTheoryId).
DominanceVerdict isDominantSubset(const SwfSpec& spec, const EthicalFramework& framework,
                                  const ActionSet& actions, const TheoryIdSet& dominant);

struct DominantSubset {
  std::vector<TheoryId> theories;  // declaration order
  Rational credence;
  DominanceVerdict verdict;
};

inline constexpr std::size_t kDefaultMaxTheories = 16;

// Every proper nonempty subset, tested exhaustively. Results are sorted by
// size, then lexicographically by the members' declaration indices. A
// single-theory framework has no proper split and yields an empty list.
std::vector<DominantSubset> enumerateDominantSubsets(const SwfSpec& spec,
                                                     const EthicalFramework& framework,
                                                     const ActionSet& actions,
                                                     std::size_t maxTheories = kDefaultMaxTheories);

// Constants recorded while building a fanatical theory. Only the fields the
// chosen construction uses are set.
struct WitnessConstruction {
  std::optional<Rational> s;       // bound on the yielding side's scores
  std::optional<Rational> m;       // 2s + 1
  std::optional<Rational> floor;   // global minimum evaluation (maximin)
  std::optional<ActionId> pivot;   // the action pushed to the bottom (maximin)
  std::vector<ActionId> permutation;  // a_1 .. a_n, target last (mec, kthm)
};

struct WitnessReport {
  SwfSpec swf;
  EthicalFramework extendedFramework;
  Theory fanaticalTheory;
  TheoryIdSet injectedTheories;
  Rational totalCredence;
  DominanceVerdict verdict;
  WitnessConstruction construction;
};

// The two ways of choosing the action that the maximin witness pushes down.
//   Corrected: a maximal element of maximin(F_y) (first in action order).
//   Literal: the action with the smallest minimum evaluation, as the proof's
//            definition of a* reads. Can fail verification.
enum class MaximinReading { Corrected, Literal };

// Every witness constructor re-checks its result with isDominantSubset and
// throws ConstructionFailed if the check does not hold. `target` defaults to
// the worst-ranked action of F_y.

// Extends F_y with one theory of credence k in (0, 1/2) whose mec ranking is
// a strict chain ending at `target`: ft(a_i) = i * m / k, m = 2s + 1,
// s = max |wam(F_y, a)|.
WitnessReport witnessMec(const EthicalFramework& yielding, const ActionSet& actions,
                         const Rational& k, std::optional<ActionId> target = std::nullopt);

// ft(pivot) = M - 2 and ft(a) = M - 1 elsewhere, M the smallest evaluation
// any theory of F_y gives to any action.
WitnessReport witnessMaximin(const EthicalFramework& yielding, const ActionSet& actions,
                             const Rational& k,
                             MaximinReading reading = MaximinReading::Corrected);

// Dominance under kthm(k, literal) with one theory of credence kPrime,
// k < kPrime < 1/2. Uses s = (1 - kPrime) * max_a sum c_y(t) |t(a)| and
// ft(a_i) = i * m / kPrime.
WitnessReport witnessKthm(const EthicalFramework& yielding, const ActionSet& actions,
                          const Rational& k, const Rational& kPrime,
                          std::optional<ActionId> target = std::nullopt);

// The fixed counterexample used by both probes: one theory "t" with
// credence 1 over actions {a, b}, t(a) = 1, t(b) = 0.
EthicalFramework canonicalYieldingFramework();
ActionSet canonicalActions();

struct ProbeReport {
  EthicalFramework extendedFramework;
  Ranking ranking;               // f(F) of the extended framework
  bool baseRankingPreserved = false;  // ranking == [{b}, {a}]
  bool adversaryNeutralised = false;  // kthm: all trimmed; hm: median = t
  bool adversaryDominant = false;
};

// Extends the canonical framework with `adversary` (total credence <= k,
// CredenceTooHigh otherwise; 0 < k < 1/2, BadCredence otherwise).
ProbeReport runKthmProbe(const Rational& k, const std::vector<CredencedTheory>& adversary);
ProbeReport runHmProbe(const Rational& k, const std::vector<CredencedTheory>& adversary);

// True iff the adversary is not a dominant subset.
bool probeKthmNonFanatical(const Rational& k, const std::vector<CredencedTheory>& adversary);
bool probeHmNonFanatical(const Rational& k, const std::vector<CredencedTheory>& adversary);

}  // namespace moralswf
