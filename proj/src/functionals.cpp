#include "moralswf/functionals.hpp"

#include <algorithm>

namespace moralswf {
namespace {

const Rational kHalf(1, 2);

const Rational& evaluationOf(const EthicalFramework& framework, std::size_t i,
                             std::string_view action) {
  const Theory& theory = framework.theory(i);
  auto it = theory.evaluations.find(std::string(action));
  if (it != theory.evaluations.end()) return it->second;
  bool anyHas = std::any_of(framework.members().begin(), framework.members().end(),
                            [&](const CredencedTheory& m) {
                              return m.theory.evaluations.count(std::string(action)) > 0;
                            });
  if (!anyHas) {
    throw Error(ErrorCode::UnknownAction, "unknown action '" + std::string(action) + "'");
  }
  return theory.at(action);
}

void requireTheories(const EthicalFramework& framework) {
  if (framework.size() == 0) {
    throw Error(ErrorCode::CredenceSumNotOne, "framework has no theories");
  }
}

void requireTrimLevel(const Rational& k) {
  if (k.sign() < 0 || k >= kHalf) {
    throw Error(ErrorCode::InvalidSpec, "trim level k = " + k.str() + " is outside [0, 1/2)");
  }
}

// Number of leading entries (in `order`) whose cumulative credence stays <= k.
template <typename It>
std::size_t trimCount(const EthicalFramework& framework, It first, It last, const Rational& k) {
  Rational mass;
  std::size_t count = 0;
  for (; first != last; ++first) {
    mass += framework.credence(first->index);
    if (mass > k) break;
    ++count;
  }
  return count;
}

}  // namespace

std::string_view swfKindName(SwfKind kind) {
  switch (kind) {
    case SwfKind::Mec: return "mec";
    case SwfKind::Maximin: return "maximin";
    case SwfKind::Kthm: return "kthm";
    case SwfKind::Hm: return "hm";
  }
  return "?";
}

std::optional<SwfKind> parseSwfKind(std::string_view name) {
  for (SwfKind k : {SwfKind::Mec, SwfKind::Maximin, SwfKind::Kthm, SwfKind::Hm}) {
    if (swfKindName(k) == name) return k;
  }
  return std::nullopt;
}

std::string_view trimModeName(TrimMode mode) {
  return mode == TrimMode::Literal ? "literal" : "renormalized";
}

std::optional<TrimMode> parseTrimMode(std::string_view name) {
  if (name == "literal") return TrimMode::Literal;
  if (name == "renormalized") return TrimMode::Renormalized;
  return std::nullopt;
}

void SwfSpec::validate() const {
  if (kind == SwfKind::Kthm) {
    if (!k) throw Error(ErrorCode::InvalidSpec, "kthm requires a trim level k");
    requireTrimLevel(*k);
  } else if (k) {
    throw Error(ErrorCode::InvalidSpec,
                "trim level k is only meaningful for kthm, not " + std::string(swfKindName(kind)));
  }
}

std::string SwfSpec::describe() const {
  std::string out(swfKindName(kind));
  if (kind == SwfKind::Kthm && k) {
    out += "(k=" + k->str() + ", " + std::string(trimModeName(trimMode)) + ")";
  }
  return out;
}

Rational wam(const EthicalFramework& framework, std::string_view action) {
  requireTheories(framework);
  Rational sum;
  for (std::size_t i = 0; i < framework.size(); ++i) {
    sum += framework.credence(i) * evaluationOf(framework, i, action);
  }
  return sum;
}

Rational minEvaluation(const EthicalFramework& framework, std::string_view action) {
  requireTheories(framework);
  Rational lowest = evaluationOf(framework, 0, action);
  for (std::size_t i = 1; i < framework.size(); ++i) {
    lowest = std::min(lowest, evaluationOf(framework, i, action));
  }
  return lowest;
}

SortedEvaluations sortedEvaluations(const EthicalFramework& framework, std::string_view action) {
  requireTheories(framework);
  SortedEvaluations sorted;
  sorted.reserve(framework.size());
  for (std::size_t i = 0; i < framework.size(); ++i) {
    sorted.push_back({framework.theory(i).id, i, evaluationOf(framework, i, action)});
  }
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const SortedEntry& a, const SortedEntry& b) { return a.value < b.value; });
  return sorted;
}

TheoryIdSet bottomK(const EthicalFramework& framework, std::string_view action, const Rational& k) {
  requireTrimLevel(k);
  auto sorted = sortedEvaluations(framework, action);
  std::size_t n = trimCount(framework, sorted.begin(), sorted.end(), k);
  TheoryIdSet out;
  for (std::size_t i = 0; i < n; ++i) out.insert(sorted[i].theory);
  return out;
}

TheoryIdSet topK(const EthicalFramework& framework, std::string_view action, const Rational& k) {
  requireTrimLevel(k);
  auto sorted = sortedEvaluations(framework, action);
  std::size_t n = trimCount(framework, sorted.rbegin(), sorted.rend(), k);
  TheoryIdSet out;
  for (std::size_t i = 0; i < n; ++i) out.insert(sorted[sorted.size() - 1 - i].theory);
  return out;
}

Rational trimmedWam(const EthicalFramework& framework, std::string_view action, const Rational& k,
                    TrimMode mode) {
  requireTrimLevel(k);
  auto sorted = sortedEvaluations(framework, action);
  std::size_t low = trimCount(framework, sorted.begin(), sorted.end(), k);
  std::size_t high = trimCount(framework, sorted.rbegin(), sorted.rend(), k);
  // Each side holds at most k < 1/2 of the mass, so the two never overlap.
  Rational sum;
  Rational kept;
  for (std::size_t i = low; i + high < sorted.size(); ++i) {
    const Rational& c = framework.credence(sorted[i].index);
    sum += c * sorted[i].value;
    kept += c;
  }
  if (mode == TrimMode::Renormalized) sum /= kept;
  return sum;
}

Rational wmedian(const EthicalFramework& framework, std::string_view action) {
  auto sorted = sortedEvaluations(framework, action);
  Rational prefix;
  for (std::size_t m = 0; m < sorted.size(); ++m) {
    prefix += framework.credence(sorted[m].index);
    if (prefix < kHalf) continue;
    if (prefix == kHalf && m + 1 < sorted.size()) {
      return (sorted[m].value + sorted[m + 1].value) / Rational(2);
    }
    return sorted[m].value;
  }
  // Unreachable for a framework whose credences sum to 1.
  throw Error(ErrorCode::CredenceSumNotOne, "credences sum below 1/2; no weighted median");
}

Rational swfScore(const SwfSpec& spec, const EthicalFramework& framework, std::string_view action) {
  switch (spec.kind) {
    case SwfKind::Mec: return wam(framework, action);
    case SwfKind::Maximin: return minEvaluation(framework, action);
    case SwfKind::Kthm:
      spec.validate();
      return trimmedWam(framework, action, *spec.k, spec.trimMode);
    case SwfKind::Hm: return wmedian(framework, action);
  }
  throw Error(ErrorCode::InvalidSpec, "unknown functional");
}

Ranking rankUnchecked(const SwfSpec& spec, const EthicalFramework& framework,
                      const ActionSet& actions) {
  ScoreTable scores;
  scores.reserve(actions.size());
  for (const auto& a : actions) scores.emplace_back(a, swfScore(spec, framework, a));
  return rankingFromScores(scores);
}

Aggregation aggregate(const SwfSpec& spec, const EthicalFramework& framework,
                      const ActionSet& actions) {
  spec.validate();
  validateFramework(framework, actions);
  Aggregation out;
  out.scores.reserve(actions.size());
  for (const auto& a : actions) out.scores.emplace_back(a, swfScore(spec, framework, a));
  out.ranking = rankingFromScores(out.scores);
  return out;
}

}  // namespace moralswf
