#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "moralswf/audit.hpp"
#include "moralswf/scenario.hpp"

using namespace moralswf;

namespace {

std::string readFile(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ScenarioError parseError(const std::string& text) {
  try {
    parseScenario(text);
  } catch (const ScenarioError& e) {
    return e;
  }
  throw std::logic_error("expected ScenarioError for:\n" + text);
}

const char* kHeader = "version = 1\nactions = l, r\n";

}  // namespace

TEST(Scenario, BundledFixturesAreCanonical) {
  for (const char* name : {"frobo.scenario", "tiebreaker.scenario", "base.scenario"}) {
    std::string text = readFile(fixtures::scenario(name));
    EXPECT_EQ(serializeScenario(parseScenario(text)), text) << name;
  }
}

TEST(Scenario, FroboMatchesInMemoryFixture) {
  auto doc = loadScenarioFile(fixtures::scenario("frobo.scenario"));
  EXPECT_EQ(doc.actions, fixtures::lr());
  EXPECT_EQ(doc.framework, fixtures::frobo());
  EXPECT_FALSE(doc.defaultSwf);
  EXPECT_EQ(loadScenarioFile(fixtures::scenario("tiebreaker.scenario")).framework, fixtures::tiebreaker());
}

TEST(Scenario, DecimalsAndCommentsCanonicalise) {
  auto decimal = loadScenarioFile(fixtures::scenario("frobo-decimal.scenario"));
  EXPECT_EQ(serializeScenario(decimal), readFile(fixtures::scenario("frobo.scenario")));
}

TEST(Scenario, DefaultFunctionalRoundTrips) {
  std::string text = std::string(kHeader) +
                     "swf = kthm\nk = 0.1\ntrim-mode = renormalized\n\n[theory t]\ncredence = 1\nl = 0\nr = 1\n";
  auto doc = parseScenario(text);
  ASSERT_TRUE(doc.defaultSwf);
  EXPECT_EQ(*doc.defaultSwf, SwfSpec::kthm(Rational(1, 10), TrimMode::Renormalized));
  std::string canonical = serializeScenario(doc);
  EXPECT_NE(canonical.find("k = 1/10\n"), std::string::npos);
  EXPECT_EQ(parseScenario(canonical), doc);
}

TEST(Scenario, SyntaxErrorsCarryPositions) {
  auto e = parseError(std::string(kHeader) + "[theory u\n");
  EXPECT_EQ(e.code(), ErrorCode::SyntaxError);
  EXPECT_EQ(e.line(), 3u);
  EXPECT_EQ(e.column(), 1u);

  e = parseError(std::string(kHeader) + "colour = red\n");
  EXPECT_EQ(e.code(), ErrorCode::SyntaxError);
  EXPECT_EQ(e.line(), 3u);

  e = parseError(std::string(kHeader) + "[theory u]\ncredence = 1\nl = -1\nr   = 2e3\n");
  EXPECT_EQ(e.code(), ErrorCode::NumberFormat);
  EXPECT_EQ(e.line(), 6u);
  EXPECT_EQ(e.column(), 7u);

  e = parseError("version = 2\nactions = l\n");
  EXPECT_EQ(e.code(), ErrorCode::SyntaxError);
  EXPECT_EQ(e.line(), 1u);

  e = parseError("[theory u]\ncredence = 1\n");
  EXPECT_EQ(e.code(), ErrorCode::SyntaxError);  // no actions line
}

TEST(Scenario, ValidationErrorsCarryInnerCode) {
  auto e = parseError(std::string(kHeader) + "[theory u]\ncredence = 1/2\nl = 0\nr = 0\n");
  EXPECT_EQ(e.code(), ErrorCode::ValidationError);
  EXPECT_EQ(e.innerCode(), ErrorCode::CredenceSumNotOne);
  EXPECT_EQ(e.line(), 4u);

  e = parseError(std::string(kHeader) + "[theory u]\ncredence = 1\nl = 0\n");
  EXPECT_EQ(e.innerCode(), ErrorCode::MissingEvaluation);
  EXPECT_EQ(e.line(), 3u);

  e = parseError(std::string(kHeader) + "[theory u]\ncredence = 1\nl = 0\nr = 0\nq = 0\n");
  EXPECT_EQ(e.innerCode(), ErrorCode::UnknownAction);
  EXPECT_EQ(e.line(), 7u);

  e = parseError(std::string(kHeader) + "[theory u]\ncredence = 1\nl = 0\nr = 0\n[theory u]\n");
  EXPECT_EQ(e.innerCode(), ErrorCode::DuplicateTheoryId);

  e = parseError("actions = l, l\n");
  EXPECT_EQ(e.innerCode(), ErrorCode::DuplicateActionId);
  EXPECT_EQ(e.column(), 14u);

  e = parseError(std::string(kHeader) + "swf = mec\nk = 1/10\n");
  EXPECT_EQ(e.innerCode(), ErrorCode::InvalidSpec);

  e = parseError(std::string(kHeader) + "[theory u]\ncredence = 3/2\nl = 0\nr = 0\n");
  EXPECT_EQ(e.innerCode(), ErrorCode::CredenceOutOfRange);
}

TEST(Scenario, UnreadableFile) {
  try {
    loadScenarioFile("/nonexistent/nowhere.scenario");
    FAIL();
  } catch (const ScenarioError& e) {
    EXPECT_EQ(e.code(), ErrorCode::SyntaxError);
    EXPECT_EQ(e.line(), 0u);
  }
}

TEST(Scenario, RandomDocumentsRoundTrip) {
  InstanceGenerator gen(1234);
  const std::vector<std::optional<SwfSpec>> swfs{std::nullopt, SwfSpec::mec(), SwfSpec::hm(),
                                                 SwfSpec::maximin(),
                                                 SwfSpec::kthm(Rational(3, 20), TrimMode::Renormalized)};
  for (int i = 0; i < 200; ++i) {
    auto inst = gen.framework();
    ScenarioDocument doc{inst.actions, inst.framework, swfs[gen.uniform(0, swfs.size() - 1)]};
    std::string text = serializeScenario(doc);
    ScenarioDocument back = parseScenario(text);
    EXPECT_EQ(back, doc);
    EXPECT_EQ(serializeScenario(back), text);
  }
}

TEST(Scenario, SaveThenLoad) {
  auto path = std::filesystem::temp_directory_path() / "moralswf-save-test.scenario";
  auto doc = loadScenarioFile(fixtures::scenario("tiebreaker.scenario"));
  saveScenarioFile(path, doc);
  EXPECT_EQ(loadScenarioFile(path), doc);
  std::filesystem::remove(path);
}
