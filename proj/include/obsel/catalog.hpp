#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "obsel/posterior.hpp"
#include "obsel/quantity.hpp"
#include "obsel/rules.hpp"
#include "obsel/scenario.hpp"

namespace obsel {

// ---- Sleeping Beauty family -------------------------------------------------

// Heads: Beauty wakes heads_wakenings times, Tails: tails_wakenings times.
// Class "wakenings" counts Beauty's wakenings; every wakening matches her
// evidence, with per-wakening match probability 10^-6 for FNC.
Scenario sleeping_beauty_scenario(std::int64_t heads_wakenings = 1, std::int64_t tails_wakenings = 2);
ExactProb sleeping_beauty(std::int64_t heads_wakenings = 1, std::int64_t tails_wakenings = 2,
                          Rule rule = Rule::kFnc);

enum class BeautyPrinceClass { kOwn, kBoth, kAllHumans };
enum class BeautyPrinceObserver { kBeauty, kPrinceBefore, kPrinceSeesBeauty };

// The Prince wakes Monday and Tuesday whatever the coin shows; Beauty wakes
// once on Heads and twice on Tails. kAllHumans adds N other wakenings to
// each count; N = nullopt takes the N -> infinity limit, where the class
// counts become equal and cancel.
ExactProb beauty_and_prince(Rule rule, BeautyPrinceClass cls, BeautyPrinceObserver observer,
                            std::optional<std::int64_t> others = std::nullopt);

enum class Stance { kHalfer, kThirder };
// P(Heads) once Beauty learns it is Monday.
ExactProb told_monday(Stance stance);

// P(Heads) for the Sailor's child, with or without knowing that their
// mother's city is listed first in the guidebook.
Scenario sailors_child_scenario(bool knows_guidebook);
ExactProb sailors_child(bool knows_guidebook);

// ---- Marochnik tables --------------------------------------------------------

enum class MarochnikRegime { kFew, kMany };
enum class MarochnikClass { kOwnType, kCombined };

inline constexpr std::array<std::string_view, 5> kMarochnikStages = {
    "prior from ordinary information", "prior after SIA", "prior after SSA", "posterior after companions known",
    "posterior after sun location known"};

struct MarochnikCell {
  // "1", "f" or "1/f"; nullopt for a stage the rule does not have.
  std::optional<std::string> symbol;
  double value = 1.0;
};

struct MarochnikColumn {
  std::array<MarochnikCell, 5> planet;
  std::array<MarochnikCell, 5> star;
};

// Odds for Marochnik's theory over "planets everywhere" after each stage,
// for planet-beings and star-beings. Requires 0 < f <= 1 and rule
// kSsaMinusSia or kSsaPlusSia.
MarochnikColumn marochnik_table(MarochnikRegime regime, Rule rule, MarochnikClass cls, double f);

// ---- Astronomical examples ---------------------------------------------------

// Odds multiplier for "bacteria are intelligent" when that theory has
// `ratio` times as many observers, none of whom share your evidence.
Quantity bacteria_odds(Rule rule, Magnitude ratio = Magnitude::power_of_ten(21));

struct DuplicateThresholdParams {
  double genome_variable_sites = 3e5;
  double memory_bits = 1e11;
  Magnitude planets = Magnitude::power_of_ten(22);
  Magnitude per_planet_observers = Magnitude::power_of_ten(10);
  Magnitude generations = Magnitude::power_of_ten(10);
};

struct DuplicateThreshold {
  // 2^memory_bits / observers, with log10(2) kept to full precision.
  Magnitude factor;
  // Same, with the memory exponent rounded to one significant figure.
  Magnitude factor_rounded;
  Magnitude memory_combinations;
  Magnitude genomes;
  Magnitude observers;
  bool factor_at_most_one = false;
};

DuplicateThreshold duplicate_threshold(const DuplicateThresholdParams& params = {});

enum class LandscapeComparison { kLvsS1, kLvsSD, kLvsSstarSplit };

struct LandscapeParams {
  Magnitude valleys = Magnitude::power_of_ten(500);
  Magnitude life_valleys = Magnitude::power_of_ten(10);
  Magnitude memory_valleys = Magnitude::power_of_ten(6);
};

struct LandscapeResult {
  Posterior posterior;
  Magnitude odds_for_l;
  // Posterior probability of the rival theory (all of its sub-theories).
  Magnitude rival_probability;
};

Scenario landscape_scenario(LandscapeComparison comparison, const LandscapeParams& params = {});
LandscapeResult landscape(LandscapeComparison comparison, Rule rule, const LandscapeParams& params = {});
Magnitude landscape_odds(LandscapeComparison comparison, Rule rule, const LandscapeParams& params = {});

// ---- Registry ----------------------------------------------------------------

using Params = std::map<std::string, std::string, std::less<>>;

struct ParamSpec {
  std::string name;
  std::string default_value;
  std::string description;
};

struct Output {
  std::string name;
  std::optional<Quantity> value;
  std::string text;  // display form; the compared form for symbolic outputs
};

struct RunResult {
  std::vector<Output> outputs;
  std::optional<Posterior> posterior;
  std::vector<std::string> notes;

  const Output& output(std::string_view name) const;
};

enum class Compare {
  kExact,             // equal as exact rationals (or equal log10 in log10 mode)
  kSignificant,       // equal after rounding to `tolerance` significant digits
  kRelative,          // |actual - expected| <= tolerance * |expected|
  kLog10Absolute,     // |log10 actual - log10 expected| <= tolerance
  kLog10Significant,  // log10 values agree to `tolerance` significant digits
  kText,              // display text equal
};

struct ExpectedResult {
  Params params;
  std::string output;
  std::string expected;
  Compare compare = Compare::kExact;
  double tolerance = 0.0;
  std::string location;
};

struct CatalogEntry {
  std::string name;
  std::string summary;
  std::vector<ParamSpec> params;
  std::function<RunResult(const Params&)> run;
  std::vector<ExpectedResult> expected;
};

const std::vector<CatalogEntry>& catalog();
// Throws ConfigurationError listing the known names.
const CatalogEntry& find_entry(std::string_view name);

// Runs an entry with defaults filled in; unknown parameters are rejected.
RunResult run_entry(const CatalogEntry& entry, const Params& params);

struct CheckOutcome {
  std::string entry;
  const ExpectedResult* expected = nullptr;
  bool passed = false;
  std::string actual;
  std::string message;
};

CheckOutcome check_expected(const CatalogEntry& entry, const ExpectedResult& expected);
std::vector<CheckOutcome> check_catalog();

}  // namespace obsel
