#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "obsel/errors.hpp"
#include "obsel/rules.hpp"
#include "obsel/scenario_format.hpp"

namespace obsel {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kTwoHumans = R"(scenario doomsday
[hypothesis] name=small prior=1/2
[hypothesis] name=large prior=1/2

[class] name=humans
count small = 10^11
count large = 10^14

[evidence]
count small = 1
count large = 1
)";

ParseError parse_error(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return ParseError(0, 0, "");
}

TEST(ScenarioFormat, DoomsdayInLog10Form) {
  const auto doc = parse_scenario(kTwoHumans);
  EXPECT_EQ(doc.name, "doomsday");
  EXPECT_FALSE(doc.rule);
  EXPECT_FALSE(doc.scenario.exact_mode());
  const auto p = ssa_posterior(doc.scenario, "humans");
  EXPECT_NEAR(p.prob("large"), 1.0 / 1001, 1e-12);
}

TEST(ScenarioFormat, ShippedFiles) {
  const auto doom = parse_scenario(read_file(OBSEL_SCENARIO_DIR "/doomsday.scn"));
  EXPECT_EQ(doom.rule, Rule::kSsaMinusSia);
  EXPECT_EQ(doom.class_name, "humans");
  EXPECT_EQ(ssa_posterior(doom.scenario, "humans").exact_prob("doom-late"), ExactProb(1, 1001));

  const auto beauty = parse_scenario(read_file(OBSEL_SCENARIO_DIR "/sleeping_beauty.scn"));
  EXPECT_EQ(beauty.rule, Rule::kFnc);
  const auto p = fnc_posterior(beauty.scenario, "wakenings", FncLikelihood::kSmallProbabilityLimit);
  EXPECT_EQ(p.exact_prob("Heads"), ExactProb(1, 3));
}

TEST(ScenarioFormat, RoundTrip) {
  for (const char* path : {OBSEL_SCENARIO_DIR "/doomsday.scn", OBSEL_SCENARIO_DIR "/sleeping_beauty.scn"}) {
    const auto doc = parse_scenario(read_file(path));
    EXPECT_EQ(parse_scenario(serialize_scenario(doc)), doc) << path;
  }
  EXPECT_EQ(parse_scenario(serialize_scenario(parse_scenario(kTwoHumans))), parse_scenario(kTwoHumans));
}

TEST(ScenarioFormat, RandomRoundTrip) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::int64_t> count(0, 1000000);
  std::uniform_int_distribution<std::int64_t> den(1, 997);
  for (int i = 0; i < 200; ++i) {
    ScenarioBuilder b;
    ScenarioBuilder::Mapping c, d, e;
    const int n = 2 + i % 4;
    std::int64_t left = 1000;
    for (int h = 0; h < n; ++h) {
      const std::string name = "N=" + std::to_string(h);
      const std::int64_t w = h + 1 == n ? left : std::uniform_int_distribution<std::int64_t>(0, left)(rng);
      left -= w;
      b.hypothesis(name, ExactProb(w, 1000));
      const auto ci = count(rng);
      c.emplace_back(name, ci);
      d.emplace_back(name, std::min<std::int64_t>(ci, count(rng)));
      const auto q = den(rng);
      e.emplace_back(name, ExactProb(std::uniform_int_distribution<std::int64_t>(0, q)(rng), q));
    }
    b.reference_class("pop", c).evidence_counts(d).match_probabilities(e);
    ScenarioDocument doc{"random", b.build(), i % 2 ? std::optional(Rule::kFnc) : std::nullopt,
                         i % 3 ? std::optional<std::string>("pop") : std::nullopt};
    ASSERT_EQ(parse_scenario(serialize_scenario(doc)), doc) << serialize_scenario(doc);
  }
}

TEST(ScenarioFormat, PriorSumErrorNamesHypothesisBlocks) {
  std::string text = kTwoHumans;
  text.replace(text.find("prior=1/2"), 9, "prior=2/5");
  const auto e = parse_error(text);
  EXPECT_EQ(e.line(), 2u);
  EXPECT_NE(std::string(e.what()).find("[hypothesis]"), std::string::npos) << e.what();
  EXPECT_NE(std::string(e.what()).find("9/10"), std::string::npos) << e.what();
}

TEST(ScenarioFormat, ErrorsCarryLineAndColumn) {
  const auto unknown_key = parse_error("[hypothesis] name=a prior=1 colour=red\n");
  EXPECT_EQ(unknown_key.line(), 1u);
  EXPECT_EQ(unknown_key.column(), 29u);

  const auto bad_number = parse_error("[hypothesis] name=a prior=1\n[class] name=c\ncount a = lots\n");
  EXPECT_EQ(bad_number.line(), 3u);
  EXPECT_EQ(bad_number.column(), 11u);

  EXPECT_EQ(parse_error("[section]\n").line(), 1u);
  EXPECT_EQ(parse_error("\n\ncount a = 1\n").line(), 3u);
}

TEST(ScenarioFormat, StructuralErrors) {
  const std::string head = "[hypothesis] name=a prior=1/2\n[hypothesis] name=b prior=1/2\n";
  const auto message = [&](const std::string& rest) { return std::string(parse_error(head + rest).what()); };
  EXPECT_NE(message("[hypothesis] name=a prior=0\n").find("a"), std::string::npos);
  EXPECT_NE(message("[class] name=c\ncount a = 1\n").find("no row"), std::string::npos);
  EXPECT_NE(message("[class] name=c\ncount a = 1\ncount a = 1\ncount b = 1\n").find("repeated"), std::string::npos);
  EXPECT_NE(message("[class] name=c\ncount z = 1\n").find("unknown hypothesis"), std::string::npos);
  EXPECT_NE(message("[evidence]\n").find("no rows"), std::string::npos);
  EXPECT_NE(message("[evidence]\nepsilon a = 2\nepsilon b = 0\n").find("match probability"), std::string::npos);
  EXPECT_NE(message("class = nowhere\n[class] name=c\ncount a = 1\ncount b = 1\n").find("nowhere"),
            std::string::npos);
  EXPECT_THROW(parse_scenario("rule = bayes\n" + head), ParseError);
  EXPECT_THROW(parse_scenario("# nothing\n"), ParseError);
}

TEST(ScenarioFormat, UnwritableNames) {
  ScenarioBuilder b;
  b.hypothesis("two words", ExactProb(1));
  b.reference_class("c", {{"two words", 1}});
  EXPECT_THROW(serialize_scenario({"s", b.build(), {}, {}}), ConfigurationError);
}

}  // namespace
}  // namespace obsel
