#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "moralswf/core.hpp"
#include "moralswf/functionals.hpp"

namespace moralswf {

inline constexpr int kScenarioVersion = 1;

// In-memory form of a .scenario file. Numbers are held exactly; the textual
// decimal/fraction spelling of the input is not preserved.
struct ScenarioDocument {
  ActionSet actions;
  EthicalFramework framework;
  std::optional<SwfSpec> defaultSwf;

  friend bool operator==(const ScenarioDocument&, const ScenarioDocument&) = default;
};

// Parses and validates a scenario. Throws ScenarioError with code
// SyntaxError, NumberFormat or ValidationError and a 1-indexed position.
// See docs/scenario-format.md for the grammar.
ScenarioDocument parseScenario(std::string_view text);

// Canonical text: fixed header order, theories in declaration order,
// evaluations in action order, every number as a reduced fraction.
std::string serializeScenario(const ScenarioDocument& document);

// File helpers; an unreadable file is reported as ScenarioError(SyntaxError)
// at position 0:0.
ScenarioDocument loadScenarioFile(const std::filesystem::path& path);
void saveScenarioFile(const std::filesystem::path& path, const ScenarioDocument& document);

}  // namespace moralswf
