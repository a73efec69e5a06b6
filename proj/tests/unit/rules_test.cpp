#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "obsel/errors.hpp"
#include "obsel/posterior.hpp"
#include "obsel/rules.hpp"

namespace obsel {
namespace {

Scenario beauty(ExactProb eps = ExactProb(1, 1000000)) {
  ScenarioBuilder b;
  b.hypothesis("Heads", ExactProb(1, 2)).hypothesis("Tails", ExactProb(1, 2));
  b.reference_class("wakenings", {{"Heads", 1}, {"Tails", 2}});
  b.reference_class("everyone", {{"Heads", 3}, {"Tails", 4}});
  b.evidence_counts({{"Heads", 1}, {"Tails", 2}});
  b.match_probabilities({{"Heads", eps}, {"Tails", eps}});
  return b.build();
}

TEST(Rules, SleepingBeautyUnderEachRule) {
  const Scenario s = beauty();
  EXPECT_EQ(ssa_posterior(s, "wakenings").exact_prob("Heads"), ExactProb(1, 2));
  EXPECT_EQ(ssa_sia_posterior(s, "wakenings").exact_prob("Heads"), ExactProb(1, 3));
  EXPECT_EQ(sia_posterior(s, "wakenings").exact_prob("Heads"), ExactProb(1, 3));
  EXPECT_EQ(fnc_posterior(s, "wakenings", FncLikelihood::kSmallProbabilityLimit).exact_prob("Heads"), ExactProb(1, 3));
  EXPECT_EQ(ssa_posterior(s, "everyone").exact_prob("Heads"), ExactProb(2, 5));
}

TEST(Rules, FncAtLeastOneIsExact) {
  const Scenario s = beauty(ExactProb(1, 20));
  const auto p = fnc_posterior(s, "wakenings");
  // 1/20 against 1 - (19/20)^2 = 39/400
  EXPECT_EQ(p.exact_prob("Heads"), ExactProb(20, 59));
  EXPECT_EQ(p.ledger().front().label, "FNC: 1-(1-eps)^|C|");
}

TEST(Rules, FncGuardsItsRegime) {
  EXPECT_THROW(fnc_posterior(beauty(ExactProb(1, 10)), "everyone"), RegimeViolationError);
  EXPECT_NO_THROW(fnc_posterior(beauty(ExactProb(1, 40)), "everyone"));
}

TEST(Rules, FncLargeCountsUseLog10Form) {
  ScenarioBuilder b;
  b.hypothesis("small", ExactProb(1, 2)).hypothesis("large", ExactProb(1, 2));
  b.reference_class("people", {{"small", 100000}, {"large", 1000000}});
  b.match_probabilities({{"small", ExactProb(1, 100000000)}, {"large", ExactProb(1, 100000000)}});
  const auto p = fnc_posterior(b.build(), "people");
  EXPECT_EQ(p.mode(), EvalMode::kMagnitude);
  const auto at_least_one = [](double n) { return -std::expm1(n * std::log1p(-1e-8)); };
  const double a = at_least_one(1e5), c = at_least_one(1e6);
  EXPECT_NEAR(p.prob("large"), c / (a + c), 1e-9);
}

TEST(Rules, SsaNeedsEvidenceInsideClass) {
  ScenarioBuilder b;
  b.hypothesis("a", ExactProb(1, 2)).hypothesis("b", ExactProb(1, 2));
  b.reference_class("c", {{"a", 1}, {"b", 1}});
  b.evidence_counts({{"a", 2}, {"b", 1}});
  EXPECT_THROW(ssa_posterior(b.build(), "c"), InconsistentScenarioError);
}

TEST(Rules, MissingInputsAreConfigurationErrors) {
  ScenarioBuilder b;
  b.hypothesis("a", ExactProb(1, 2)).hypothesis("b", ExactProb(1, 2));
  b.reference_class("c", {{"a", 1}, {"b", 1}});
  const Scenario s = b.build();
  EXPECT_THROW(ssa_posterior(s, "c"), ConfigurationError);
  EXPECT_THROW(fnc_posterior(s, "c"), ConfigurationError);
  EXPECT_THROW(ssa_posterior(beauty(), "nobody"), ConfigurationError);
  EXPECT_EQ(sia_posterior(s, "c").exact_prob("a"), ExactProb(1, 2));
}

TEST(Rules, ZeroObserverHypothesisGetsZero) {
  ScenarioBuilder b;
  b.hypothesis("empty", ExactProb(1, 2)).hypothesis("full", ExactProb(1, 2));
  b.reference_class("c", {{"empty", 0}, {"full", 5}});
  b.evidence_counts({{"empty", 0}, {"full", 1}});
  const auto p = ssa_posterior(b.build(), "c");
  EXPECT_EQ(p.exact_prob("empty"), ExactProb(0));
  EXPECT_EQ(p.exact_prob("full"), ExactProb(1));
}

TEST(Rules, AllZeroWeightsAreDegenerate) {
  ScenarioBuilder b;
  b.hypothesis("a", ExactProb(1, 2)).hypothesis("b", ExactProb(1, 2));
  b.reference_class("c", {{"a", 3}, {"b", 5}});
  b.evidence_counts({{"a", 0}, {"b", 0}});
  EXPECT_THROW(ssa_posterior(b.build(), "c"), DegenerateEvidenceError);
}

TEST(Rules, ParseRule) {
  EXPECT_EQ(parse_rule("ssa"), Rule::kSsaMinusSia);
  EXPECT_EQ(parse_rule("ssa-sia"), Rule::kSsaMinusSia);
  EXPECT_EQ(parse_rule("ssa+sia"), Rule::kSsaPlusSia);
  EXPECT_EQ(parse_rule("fnc"), Rule::kFnc);
  EXPECT_EQ(parse_rule("sia"), Rule::kSiaOnly);
  EXPECT_THROW(parse_rule("bayes"), ConfigurationError);
  for (Rule r : {Rule::kSsaMinusSia, Rule::kSsaPlusSia, Rule::kFnc, Rule::kSiaOnly}) {
    EXPECT_EQ(parse_rule(to_string(r)), r);
  }
}

TEST(Posterior, LedgerStagesInOrder) {
  const auto p = ssa_sia_posterior(beauty(), "wakenings");
  ASSERT_EQ(p.ledger().size(), 2u);
  EXPECT_EQ(p.ledger()[0].label, "SIA: |C|");
  EXPECT_EQ(p.ledger()[1].label, "SSA: |D|/|C|");
  const auto odds = p.cumulative_odds("Heads", "Tails");
  ASSERT_EQ(odds.size(), 3u);
  EXPECT_EQ(odds[0], Quantity(1));
  EXPECT_EQ(odds[1], Quantity(ExactProb(1, 2)));
  EXPECT_EQ(odds[2], Quantity(ExactProb(1, 2)));
}

TEST(Posterior, UpdateAppendsStage) {
  const auto before = ssa_posterior(beauty(), "everyone");
  const auto after = update(before, "sees", {ExactProb(1, 2), ExactProb(1)});
  EXPECT_EQ(after.ledger().size(), before.ledger().size() + 1);
  EXPECT_EQ(after.ledger().back().label, "sees");
  EXPECT_EQ(after.exact_prob("Heads"), ExactProb(1, 4));
}

TEST(Posterior, MixedModesAreRejected) {
  EXPECT_THROW(Posterior({"a", "b"}, {ExactProb(1, 2), Magnitude::from_double(0.5)}, {}), std::logic_error);
}

TEST(Posterior, ExactAccessorsNeedExactMode) {
  const Posterior p({"a", "b"}, {Magnitude::from_double(0.25), Magnitude::from_double(0.75)}, {});
  EXPECT_EQ(p.mode(), EvalMode::kMagnitude);
  EXPECT_FALSE(p.exact_probs());
  EXPECT_THROW((void)p.exact_prob("a"), ConfigurationError);
  EXPECT_NEAR(p.prob("b"), 0.75, 1e-15);
  EXPECT_THROW((void)p.prob("c"), ConfigurationError);
}

TEST(Posterior, OddsAgainstZeroWeightIsDomainError) {
  const Posterior p({"a", "b"}, {ExactProb(1), ExactProb(0)}, {});
  EXPECT_THROW((void)p.odds("a", "b"), DomainError);
  EXPECT_EQ(p.odds("b", "a"), Quantity(0));
}

}  // namespace
}  // namespace obsel
