#include "moralswf/core.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace moralswf {

bool isValidIdentifier(std::string_view id) {
  if (id.empty()) return false;
  for (char c : id) {
    switch (c) {
      case ' ': case '\t': case '\n': case '\r': case '\v': case '\f':
      case '=': case ',': case '[': case ']': case '#':
        return false;
      default:
        break;
    }
  }
  return true;
}

ActionSet::ActionSet(std::vector<ActionId> actions) : actions_(std::move(actions)) {
  if (actions_.empty()) throw Error(ErrorCode::EmptyActionSet, "action set is empty");
  std::set<std::string_view> seen;
  for (const auto& a : actions_) {
    if (!isValidIdentifier(a)) {
      throw Error(ErrorCode::InvalidIdentifier, "invalid action id '" + a + "'");
    }
    if (!seen.insert(a).second) {
      throw Error(ErrorCode::DuplicateActionId, "duplicate action '" + a + "'");
    }
  }
}

bool ActionSet::contains(std::string_view id) const { return indexOf(id).has_value(); }

std::optional<std::size_t> ActionSet::indexOf(std::string_view id) const {
  auto it = std::find(actions_.begin(), actions_.end(), id);
  if (it == actions_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - actions_.begin());
}

const Rational& Theory::at(std::string_view action) const {
  auto it = evaluations.find(std::string(action));
  if (it == evaluations.end()) {
    throw Error(ErrorCode::MissingEvaluation,
                "theory '" + id + "' has no evaluation for action '" + std::string(action) + "'");
  }
  return it->second;
}

EthicalFramework::EthicalFramework(std::vector<CredencedTheory> members)
    : members_(std::move(members)) {}

std::optional<std::size_t> EthicalFramework::indexOf(std::string_view id) const {
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i].theory.id == id) return i;
  }
  return std::nullopt;
}

const Rational& EthicalFramework::credenceOf(std::string_view id) const {
  auto i = indexOf(id);
  if (!i) throw Error(ErrorCode::UnknownTheoryId, "unknown theory '" + std::string(id) + "'");
  return members_[*i].credence;
}

std::vector<TheoryId> EthicalFramework::theoryIds() const {
  std::vector<TheoryId> ids;
  ids.reserve(members_.size());
  for (const auto& m : members_) ids.push_back(m.theory.id);
  return ids;
}

Rational EthicalFramework::totalCredence() const {
  Rational sum;
  for (const auto& m : members_) sum += m.credence;
  return sum;
}

CredenceSumError::CredenceSumError(const Rational& sum, const std::string& message)
    : Error(ErrorCode::CredenceSumNotOne, message), sum_(sum) {}

void validateFramework(const EthicalFramework& framework, const ActionSet& actions) {
  if (framework.size() == 0) {
    throw CredenceSumError(Rational(0), "framework has no theories (credence sum 0, deficit 1)");
  }
  std::set<std::string_view> seen;
  for (const auto& [theory, credence] : framework.members()) {
    if (!isValidIdentifier(theory.id)) {
      throw Error(ErrorCode::InvalidIdentifier, "invalid theory id '" + theory.id + "'");
    }
    if (!seen.insert(theory.id).second) {
      throw Error(ErrorCode::DuplicateTheoryId, "duplicate theory '" + theory.id + "'");
    }
    if (credence.sign() <= 0 || credence > Rational(1)) {
      throw Error(ErrorCode::CredenceOutOfRange,
                  "credence of theory '" + theory.id + "' is " + credence.str() +
                      ", outside (0, 1]");
    }
  }
  Rational sum = framework.totalCredence();
  if (sum != Rational(1)) {
    Rational deficit = Rational(1) - sum;
    std::string what = deficit.sign() > 0 ? "deficit " + deficit.str()
                                          : "surplus " + (-deficit).str();
    throw CredenceSumError(sum, "credences sum to " + sum.str() + " (" + what + ")");
  }
  for (const auto& m : framework.members()) {
    for (const auto& a : actions) m.theory.at(a);
  }
}

EthicalFramework restrict(const EthicalFramework& framework, const TheoryIdSet& subset) {
  if (subset.empty()) throw Error(ErrorCode::EmptyRestriction, "restriction to no theories");
  for (const auto& id : subset) {
    if (!framework.indexOf(id)) throw Error(ErrorCode::UnknownTheoryId, "unknown theory '" + id + "'");
  }
  Rational mass;
  for (const auto& m : framework.members()) {
    if (subset.count(m.theory.id)) mass += m.credence;
  }
  std::vector<CredencedTheory> kept;
  kept.reserve(subset.size());
  for (const auto& m : framework.members()) {
    if (subset.count(m.theory.id)) kept.push_back({m.theory, m.credence / mass});
  }
  return EthicalFramework(std::move(kept));
}

EthicalFramework extend(const EthicalFramework& framework,
                        const std::vector<CredencedTheory>& added) {
  Rational addedMass;
  std::set<std::string_view> ids;
  for (const auto& m : framework.members()) ids.insert(m.theory.id);
  for (const auto& a : added) {
    if (!ids.insert(a.theory.id).second) {
      throw Error(ErrorCode::DuplicateTheoryId, "theory '" + a.theory.id + "' already present");
    }
    if (a.credence.sign() <= 0 || a.credence >= Rational(1)) {
      throw Error(ErrorCode::CredenceOutOfRange,
                  "added theory '" + a.theory.id + "' has credence " + a.credence.str() +
                      ", outside (0, 1)");
    }
    addedMass += a.credence;
  }
  if (addedMass >= Rational(1)) {
    throw Error(ErrorCode::CredenceMassExceeded,
                "added credence mass " + addedMass.str() + " is not below 1");
  }
  Rational scale = (Rational(1) - addedMass) / framework.totalCredence();
  std::vector<CredencedTheory> members;
  members.reserve(framework.size() + added.size());
  for (const auto& m : framework.members()) members.push_back({m.theory, m.credence * scale});
  members.insert(members.end(), added.begin(), added.end());
  return EthicalFramework(std::move(members));
}

Ranking rankingFromScores(const ScoreTable& scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a].second < scores[b].second;
  });
  Ranking ranking;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto& [action, score] = scores[order[k]];
    if (k == 0 || score != scores[order[k - 1]].second) ranking.groups.emplace_back();
    ranking.groups.back().push_back(action);
  }
  return ranking;
}

bool rankingsEqual(const Ranking& lhs, const Ranking& rhs) {
  auto normalized = [](const Ranking& r) {
    std::vector<std::set<ActionId>> groups;
    for (const auto& g : r.groups) groups.emplace_back(g.begin(), g.end());
    return groups;
  };
  auto a = normalized(lhs);
  auto b = normalized(rhs);
  std::set<ActionId> coverA, coverB;
  for (const auto& g : a) coverA.insert(g.begin(), g.end());
  for (const auto& g : b) coverB.insert(g.begin(), g.end());
  if (coverA != coverB) {
    throw Error(ErrorCode::ActionSetMismatch, "rankings " + formatRanking(lhs) + " and " +
                                                  formatRanking(rhs) + " cover different actions");
  }
  return a == b;
}

Ranking theoryRanking(const Theory& theory, const ActionSet& actions) {
  ScoreTable scores;
  for (const auto& a : actions) scores.emplace_back(a, theory.at(a));
  return rankingFromScores(scores);
}

std::string formatRanking(const Ranking& ranking) {
  std::ostringstream os;
  os << '[';
  for (std::size_t g = 0; g < ranking.groups.size(); ++g) {
    if (g) os << ", ";
    os << '{';
    for (std::size_t i = 0; i < ranking.groups[g].size(); ++i) {
      if (i) os << ", ";
      os << ranking.groups[g][i];
    }
    os << '}';
  }
  os << ']';
  return os.str();
}

}  // namespace moralswf
