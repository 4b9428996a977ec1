#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "moralswf/error.hpp"
#include "moralswf/rational.hpp"

namespace moralswf {

using ActionId = std::string;
using TheoryId = std::string;
using TheoryIdSet = std::set<TheoryId>;

// Identifiers are nonempty tokens free of whitespace and of the characters
// the scenario format reserves ("=", ",", "[", "]", "#").
bool isValidIdentifier(std::string_view id);

// Ordered, duplicate-free, nonempty list of actions.
class ActionSet {
 public:
  explicit ActionSet(std::vector<ActionId> actions);

  const std::vector<ActionId>& ids() const noexcept { return actions_; }
  std::size_t size() const noexcept { return actions_.size(); }
  bool contains(std::string_view id) const;
  std::optional<std::size_t> indexOf(std::string_view id) const;

  auto begin() const noexcept { return actions_.begin(); }
  auto end() const noexcept { return actions_.end(); }

  friend bool operator==(const ActionSet&, const ActionSet&) = default;

 private:
  std::vector<ActionId> actions_;
};

struct Theory {
  TheoryId id;
  std::map<ActionId, Rational> evaluations;

  // Throws MissingEvaluation.
  const Rational& at(std::string_view action) const;

  friend bool operator==(const Theory&, const Theory&) = default;
};

struct CredencedTheory {
  Theory theory;
  Rational credence;

  friend bool operator==(const CredencedTheory&, const CredencedTheory&) = default;
};

// F = (T, c). Member order is declaration order and is the deterministic
// tie-break key wherever evaluations are sorted. Construction does not
// validate; call validateFramework against the action set in use.
class EthicalFramework {
 public:
  EthicalFramework() = default;
  explicit EthicalFramework(std::vector<CredencedTheory> members);

  const std::vector<CredencedTheory>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  const Theory& theory(std::size_t i) const { return members_.at(i).theory; }
  const Rational& credence(std::size_t i) const { return members_.at(i).credence; }

  std::optional<std::size_t> indexOf(std::string_view id) const;
  // Throws UnknownTheoryId.
  const Rational& credenceOf(std::string_view id) const;
  std::vector<TheoryId> theoryIds() const;
  Rational totalCredence() const;

  friend bool operator==(const EthicalFramework&, const EthicalFramework&) = default;

 private:
  std::vector<CredencedTheory> members_;
};

class CredenceSumError : public Error {
 public:
  CredenceSumError(const Rational& sum, const std::string& message);

  const Rational& sum() const noexcept { return sum_; }
  // 1 - sum: positive for a deficit, negative for a surplus.
  Rational deficit() const { return Rational(1) - sum_; }

 private:
  Rational sum_;
};

// Weak order over an action set: tie groups ordered worst to best. Actions
// inside a group follow the action set's declared order.
struct Ranking {
  std::vector<std::vector<ActionId>> groups;

  friend bool operator==(const Ranking&, const Ranking&) = default;
};

// Per-action score, in action-set order.
using ScoreTable = std::vector<std::pair<ActionId, Rational>>;

// Throws CredenceOutOfRange, CredenceSumNotOne (as CredenceSumError),
// DuplicateTheoryId, InvalidIdentifier or MissingEvaluation. Evaluations of
// actions outside `actions` are allowed and ignored.
void validateFramework(const EthicalFramework& framework, const ActionSet& actions);

// Restricted framework: keeps `subset` (in declaration order) and rescales
// credences by 1 / sum(c(t), t in subset).
EthicalFramework restrict(const EthicalFramework& framework, const TheoryIdSet& subset);

// Extended framework: appends `added` with their given credences and
// rescales the existing credences by (1 - sum(added)) / sum(existing).
EthicalFramework extend(const EthicalFramework& framework,
                        const std::vector<CredencedTheory>& added);

Ranking rankingFromScores(const ScoreTable& scores);

// True iff both are the same ordered partition. Throws ActionSetMismatch if
// the rankings do not cover the same actions.
bool rankingsEqual(const Ranking& lhs, const Ranking& rhs);

Ranking theoryRanking(const Theory& theory, const ActionSet& actions);

// "[{l}, {r}]"
std::string formatRanking(const Ranking& ranking);

}  // namespace moralswf
