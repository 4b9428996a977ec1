#include "moralswf/fanaticism.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

namespace moralswf {
namespace {

const Rational kHalf(1, 2);

DominanceVerdict verdictFor(const SwfSpec& spec, const EthicalFramework& framework,
                            const ActionSet& actions, const TheoryIdSet& dominant,
                            const TheoryIdSet& yielding) {
  DominanceVerdict v;
  v.fullRanking = rankUnchecked(spec, framework, actions);
  v.dominantRanking = rankUnchecked(spec, restrict(framework, dominant), actions);
  v.yieldingRanking = rankUnchecked(spec, restrict(framework, yielding), actions);
  v.isDominant = rankingsEqual(v.fullRanking, v.dominantRanking) &&
                 !rankingsEqual(v.dominantRanking, v.yieldingRanking);
  return v;
}

void requireWitnessCredence(const Rational& k) {
  if (k.sign() <= 0 || k >= kHalf) {
    throw Error(ErrorCode::BadCredence, "witness credence " + k.str() + " is outside (0, 1/2)");
  }
}

void requireTwoActions(const ActionSet& actions) {
  if (actions.size() < 2) {
    throw Error(ErrorCode::TooFewActions, "a fanatical witness needs at least two actions");
  }
}

TheoryId freshTheoryId(const EthicalFramework& framework) {
  TheoryId id = "ft";
  for (int n = 2; framework.indexOf(id); ++n) id = "ft" + std::to_string(n);
  return id;
}

// Picks the witness target b and checks it is not the unique best action.
ActionId chooseTarget(const Ranking& yielding, const ActionSet& actions,
                      const std::optional<ActionId>& requested) {
  if (!requested) return yielding.groups.front().front();
  if (!actions.contains(*requested)) {
    throw Error(ErrorCode::UnknownAction, "unknown target action '" + *requested + "'");
  }
  const auto& best = yielding.groups.back();
  if (best.size() == 1 && best.front() == *requested) {
    throw Error(ErrorCode::TargetIsUniqueMaximizer,
                "target '" + *requested + "' is already the unique best action of the yielding "
                "framework " + formatRanking(yielding));
  }
  return *requested;
}

std::vector<ActionId> permutationEndingAt(const ActionSet& actions, const ActionId& target) {
  std::vector<ActionId> perm;
  for (const auto& a : actions) {
    if (a != target) perm.push_back(a);
  }
  perm.push_back(target);
  return perm;
}

// ft(a_i) = i * m / credence over the permutation.
Theory chainTheory(TheoryId id, const std::vector<ActionId>& perm, const Rational& m,
                   const Rational& credence) {
  Theory ft{std::move(id), {}};
  for (std::size_t i = 0; i < perm.size(); ++i) {
    ft.evaluations[perm[i]] = Rational(static_cast<std::int64_t>(i + 1)) * m / credence;
  }
  return ft;
}

WitnessReport finishWitness(const SwfSpec& spec, const EthicalFramework& yielding,
                            const ActionSet& actions, Theory ft, const Rational& credence,
                            WitnessConstruction construction) {
  WitnessReport report;
  report.swf = spec;
  report.extendedFramework = extend(yielding, {{ft, credence}});
  validateFramework(report.extendedFramework, actions);
  report.injectedTheories = {ft.id};
  report.totalCredence = report.extendedFramework.credenceOf(ft.id);
  report.verdict = isDominantSubset(spec, report.extendedFramework, actions, {ft.id});
  report.fanaticalTheory = std::move(ft);
  report.construction = std::move(construction);
  if (!report.verdict.isDominant) {
    throw Error(ErrorCode::ConstructionFailed,
                "constructed theory '" + report.fanaticalTheory.id + "' is not dominant under " +
                    spec.describe() + ": full " + formatRanking(report.verdict.fullRanking) +
                    ", dominant " + formatRanking(report.verdict.dominantRanking) +
                    ", yielding " + formatRanking(report.verdict.yieldingRanking));
  }
  return report;
}

void requireProbeBounds(const Rational& k, const std::vector<CredencedTheory>& adversary) {
  requireWitnessCredence(k);
  Rational mass;
  for (const auto& a : adversary) mass += a.credence;
  if (mass > k) {
    throw Error(ErrorCode::CredenceTooHigh,
                "adversary credence " + mass.str() + " exceeds k = " + k.str());
  }
}

ProbeReport probe(const SwfSpec& spec, const std::vector<CredencedTheory>& adversary) {
  const EthicalFramework base = canonicalYieldingFramework();
  const ActionSet actions = canonicalActions();
  ProbeReport report;
  report.extendedFramework = adversary.empty() ? base : extend(base, adversary);
  validateFramework(report.extendedFramework, actions);
  report.ranking = rankUnchecked(spec, report.extendedFramework, actions);
  report.baseRankingPreserved = rankingsEqual(report.ranking, Ranking{{{"b"}, {"a"}}});
  if (!adversary.empty()) {
    TheoryIdSet ids;
    for (const auto& a : adversary) ids.insert(a.theory.id);
    report.adversaryDominant =
        isDominantSubset(spec, report.extendedFramework, actions, ids).isDominant;
  }
  return report;
}

}  // namespace

DominanceVerdict isDominantSubset(const SwfSpec& spec, const EthicalFramework& framework,
                                  const ActionSet& actions, const TheoryIdSet& dominant) {
  spec.validate();
  validateFramework(framework, actions);
  for (const auto& id : dominant) {
    if (!framework.indexOf(id)) {
      throw Error(ErrorCode::UnknownTheoryId, "unknown theory '" + id + "'");
    }
  }
  TheoryIdSet yielding;
  for (const auto& m : framework.members()) {
    if (!dominant.count(m.theory.id)) yielding.insert(m.theory.id);
  }
  if (dominant.empty() || yielding.empty()) {
    throw Error(ErrorCode::NotProperSubset,
                "dominant candidate must be a nonempty proper subset of the theories");
  }
  return verdictFor(spec, framework, actions, dominant, yielding);
}

std::vector<DominantSubset> enumerateDominantSubsets(const SwfSpec& spec,
                                                     const EthicalFramework& framework,
                                                     const ActionSet& actions,
                                                     std::size_t maxTheories) {
  spec.validate();
  validateFramework(framework, actions);
  const std::size_t n = framework.size();
  if (n > maxTheories || n >= 64) {
    throw Error(ErrorCode::TooManyTheories, "framework has " + std::to_string(n) +
                                                " theories; the limit is " +
                                                std::to_string(maxTheories));
  }
  std::vector<std::pair<std::uint64_t, DominantSubset>> found;
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t mask = 1; mask < full; ++mask) {
    TheoryIdSet dominant, yielding;
    std::vector<TheoryId> members;
    Rational credence;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& id = framework.theory(i).id;
      if (mask >> i & 1) {
        dominant.insert(id);
        members.push_back(id);
        credence += framework.credence(i);
      } else {
        yielding.insert(id);
      }
    }
    auto verdict = verdictFor(spec, framework, actions, dominant, yielding);
    if (verdict.isDominant) {
      found.push_back({mask, {std::move(members), std::move(credence), std::move(verdict)}});
    }
  }
  auto indices = [n](std::uint64_t mask) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) out.push_back(i);
    }
    return out;
  };
  std::sort(found.begin(), found.end(), [&](const auto& x, const auto& y) {
    int px = std::popcount(x.first), py = std::popcount(y.first);
    if (px != py) return px < py;
    return indices(x.first) < indices(y.first);
  });
  std::vector<DominantSubset> out;
  out.reserve(found.size());
  for (auto& f : found) out.push_back(std::move(f.second));
  return out;
}

WitnessReport witnessMec(const EthicalFramework& yielding, const ActionSet& actions,
                         const Rational& k, std::optional<ActionId> target) {
  requireWitnessCredence(k);
  requireTwoActions(actions);
  validateFramework(yielding, actions);
  const SwfSpec spec = SwfSpec::mec();
  ActionId b = chooseTarget(rankUnchecked(spec, yielding, actions), actions, target);

  Rational s;
  for (const auto& a : actions) s = std::max(s, wam(yielding, a).abs());
  WitnessConstruction c;
  c.s = s;
  c.m = Rational(2) * s + Rational(1);
  c.permutation = permutationEndingAt(actions, b);
  Theory ft = chainTheory(freshTheoryId(yielding), c.permutation, *c.m, k);
  return finishWitness(spec, yielding, actions, std::move(ft), k, std::move(c));
}

WitnessReport witnessMaximin(const EthicalFramework& yielding, const ActionSet& actions,
                             const Rational& k, MaximinReading reading) {
  requireWitnessCredence(k);
  requireTwoActions(actions);
  validateFramework(yielding, actions);
  const SwfSpec spec = SwfSpec::maximin();
  Ranking base = rankUnchecked(spec, yielding, actions);

  Rational floor = minEvaluation(yielding, actions.ids().front());
  for (const auto& a : actions) floor = std::min(floor, minEvaluation(yielding, a));
  WitnessConstruction c;
  c.floor = floor;
  c.pivot = reading == MaximinReading::Corrected ? base.groups.back().front()
                                                 : base.groups.front().front();
  Theory ft{freshTheoryId(yielding), {}};
  for (const auto& a : actions) {
    ft.evaluations[a] = floor - Rational(a == *c.pivot ? 2 : 1);
  }
  return finishWitness(spec, yielding, actions, std::move(ft), k, std::move(c));
}

WitnessReport witnessKthm(const EthicalFramework& yielding, const ActionSet& actions,
                          const Rational& k, const Rational& kPrime,
                          std::optional<ActionId> target) {
  if (k.sign() < 0 || kPrime <= k || kPrime >= kHalf) {
    throw Error(ErrorCode::BadCredencePair, "need 0 <= k < k' < 1/2, got k = " + k.str() +
                                                ", k' = " + kPrime.str());
  }
  requireTwoActions(actions);
  validateFramework(yielding, actions);
  const SwfSpec spec = SwfSpec::kthm(k, TrimMode::Literal);
  ActionId b = chooseTarget(rankUnchecked(spec, yielding, actions), actions, target);

  // Trimming only zeroes credences, so the yielding theories contribute at
  // most (1 - k') * sum c_y(t) |t(a)| to any trimmed score.
  Rational spread;
  for (const auto& a : actions) {
    Rational total;
    for (const auto& m : yielding.members()) total += m.credence * m.theory.at(a).abs();
    spread = std::max(spread, total);
  }
  WitnessConstruction c;
  c.s = (Rational(1) - kPrime) * spread;
  c.m = Rational(2) * *c.s + Rational(1);
  c.permutation = permutationEndingAt(actions, b);
  Theory ft = chainTheory(freshTheoryId(yielding), c.permutation, *c.m, kPrime);
  return finishWitness(spec, yielding, actions, std::move(ft), kPrime, std::move(c));
}

EthicalFramework canonicalYieldingFramework() {
  Theory t{"t", {{"a", Rational(1)}, {"b", Rational(0)}}};
  return EthicalFramework({{std::move(t), Rational(1)}});
}

ActionSet canonicalActions() { return ActionSet({"a", "b"}); }

ProbeReport runKthmProbe(const Rational& k, const std::vector<CredencedTheory>& adversary) {
  requireProbeBounds(k, adversary);
  ProbeReport report = probe(SwfSpec::kthm(k, TrimMode::Literal), adversary);
  report.adversaryNeutralised = true;
  for (const auto& a : canonicalActions()) {
    TheoryIdSet trimmed = bottomK(report.extendedFramework, a, k);
    TheoryIdSet top = topK(report.extendedFramework, a, k);
    trimmed.insert(top.begin(), top.end());
    for (const auto& adv : adversary) {
      if (!trimmed.count(adv.theory.id)) report.adversaryNeutralised = false;
    }
  }
  return report;
}

ProbeReport runHmProbe(const Rational& k, const std::vector<CredencedTheory>& adversary) {
  requireProbeBounds(k, adversary);
  ProbeReport report = probe(SwfSpec::hm(), adversary);
  const Theory& t = report.extendedFramework.theory(0);
  report.adversaryNeutralised = true;
  for (const auto& a : canonicalActions()) {
    if (wmedian(report.extendedFramework, a) != t.at(a)) report.adversaryNeutralised = false;
  }
  return report;
}

bool probeKthmNonFanatical(const Rational& k, const std::vector<CredencedTheory>& adversary) {
  return !runKthmProbe(k, adversary).adversaryDominant;
}

bool probeHmNonFanatical(const Rational& k, const std::vector<CredencedTheory>& adversary) {
  return !runHmProbe(k, adversary).adversaryDominant;
}

}  // namespace moralswf
