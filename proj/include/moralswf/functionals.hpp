#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "moralswf/core.hpp"

namespace moralswf {

enum class SwfKind { Mec, Maximin, Kthm, Hm };

// How the k-trimmed mean treats the credence it trims away.
//   Literal: zero the trimmed credences and sum, no rescaling.
//   Renormalized: divide the literal sum by the surviving credence mass.
enum class TrimMode { Literal, Renormalized };

std::string_view swfKindName(SwfKind kind);  // "mec", "maximin", "kthm", "hm"
std::optional<SwfKind> parseSwfKind(std::string_view name);
std::string_view trimModeName(TrimMode mode);  // "literal", "renormalized"
std::optional<TrimMode> parseTrimMode(std::string_view name);

struct SwfSpec {
  SwfKind kind = SwfKind::Mec;
  std::optional<Rational> k;  // present iff kind == Kthm, 0 <= k < 1/2
  TrimMode trimMode = TrimMode::Literal;

  static SwfSpec mec() { return {SwfKind::Mec, std::nullopt, TrimMode::Literal}; }
  static SwfSpec maximin() { return {SwfKind::Maximin, std::nullopt, TrimMode::Literal}; }
  static SwfSpec hm() { return {SwfKind::Hm, std::nullopt, TrimMode::Literal}; }
  static SwfSpec kthm(Rational k, TrimMode mode = TrimMode::Literal) {
    return {SwfKind::Kthm, std::move(k), mode};
  }

  // Throws InvalidSpec.
  void validate() const;
  // "mec", "kthm(k=1/10, literal)", ...
  std::string describe() const;

  friend bool operator==(const SwfSpec&, const SwfSpec&) = default;
};

struct SortedEntry {
  TheoryId theory;
  std::size_t index = 0;  // declaration index in the framework
  Rational value;
};

// An action's evaluations sorted ascending, ties in declaration order.
using SortedEvaluations = std::vector<SortedEntry>;

// All score functions throw UnknownAction when no theory evaluates `action`
// and MissingEvaluation when only some do.

// Credence-weighted arithmetic mean: sum over t of c(t) * t(a).
Rational wam(const EthicalFramework& framework, std::string_view action);
Rational minEvaluation(const EthicalFramework& framework, std::string_view action);
SortedEvaluations sortedEvaluations(const EthicalFramework& framework, std::string_view action);

// Longest prefix (bottomK) / suffix (topK) of the sorted evaluations whose
// total credence is at most k. Requires 0 <= k < 1/2 (InvalidSpec otherwise).
TheoryIdSet bottomK(const EthicalFramework& framework, std::string_view action, const Rational& k);
TheoryIdSet topK(const EthicalFramework& framework, std::string_view action, const Rational& k);

Rational trimmedWam(const EthicalFramework& framework, std::string_view action, const Rational& k,
                    TrimMode mode);

// Weighted median over the sorted evaluations. With prefix credence sums
// P_0 = 0 < P_1 < ... < P_n = 1, index m qualifies iff P_{m-1} <= 1/2 and
// 1 - P_m <= 1/2. One or two indices qualify; two are averaged.
Rational wmedian(const EthicalFramework& framework, std::string_view action);

// Score of one action under the selected functional.
Rational swfScore(const SwfSpec& spec, const EthicalFramework& framework, std::string_view action);

struct Aggregation {
  ScoreTable scores;
  Ranking ranking;
};

// f(F, A). Validates the spec and the framework against `actions` first.
Aggregation aggregate(const SwfSpec& spec, const EthicalFramework& framework,
                      const ActionSet& actions);

// aggregate(...).ranking without re-validating the framework; for callers
// that already hold a validated framework.
Ranking rankUnchecked(const SwfSpec& spec, const EthicalFramework& framework,
                      const ActionSet& actions);

}  // namespace moralswf
