#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "moralswf/core.hpp"
#include "moralswf/error.hpp"

namespace fixtures {

using moralswf::ActionSet;
using moralswf::CredencedTheory;
using moralswf::EthicalFramework;
using moralswf::Rational;

inline std::filesystem::path scenarioDir() { return MORALSWF_SCENARIO_DIR; }
inline std::filesystem::path scenario(const std::string& name) { return scenarioDir() / name; }

inline CredencedTheory theory(std::string id, Rational credence,
                              std::vector<std::pair<std::string, Rational>> evals) {
  moralswf::Theory t{std::move(id), {}};
  for (auto& [a, v] : evals) t.evaluations.emplace(std::move(a), std::move(v));
  return {std::move(t), std::move(credence)};
}

inline ActionSet lr() { return ActionSet({"l", "r"}); }

inline EthicalFramework frobo() {
  return EthicalFramework({theory("u", Rational(99, 100), {{"l", -1}, {"r", -2}}),
                           theory("d", Rational(1, 100), {{"l", -10000}, {"r", -1000}})});
}

inline EthicalFramework tiebreaker() {
  return EthicalFramework({theory("u", Rational(99, 200), {{"l", -1}, {"r", -2}}),
                           theory("d'", Rational(99, 200), {{"l", -2}, {"r", -1}}),
                           theory("t", Rational(1, 100), {{"l", -1}, {"r", 0}})});
}

inline moralswf::Ranking ranking(std::vector<std::vector<std::string>> groups) {
  return moralswf::Ranking{std::move(groups)};
}

// Runs `fn` and returns the ErrorCode it threw; fails the test otherwise.
template <typename Fn>
moralswf::ErrorCode codeOf(Fn&& fn) {
  try {
    fn();
  } catch (const moralswf::Error& e) {
    return e.code();
  }
  throw std::logic_error("expected moralswf::Error");
}

}  // namespace fixtures
