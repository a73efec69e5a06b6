#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "obsel/rules.hpp"
#include "obsel/scenario.hpp"

namespace obsel {

// A scenario file: the scenario plus an optional requested rule and class.
//
//   scenario doomsday
//   rule = ssa
//   class = humans
//
//   [hypothesis] name=small prior=1/2
//   [hypothesis] name=large prior=1/2
//
//   [class] name=humans
//   count small = 10^11
//   count large = 10^14
//
//   [evidence]
//   count small = 1
//   count large = 1
//
// '#' starts a comment. Numbers are integers (optionally in scientific
// notation), fractions a/b, decimals, or 10^k. Errors raise ParseError with
// the offending line.
struct ScenarioDocument {
  std::string name;
  Scenario scenario;
  std::optional<Rule> rule;
  std::optional<std::string> class_name;

  friend bool operator==(const ScenarioDocument&, const ScenarioDocument&) = default;
};

ScenarioDocument parse_scenario(std::string_view text);

// Inverse of parse_scenario: parse_scenario(serialize_scenario(d)) == d.
std::string serialize_scenario(const ScenarioDocument& doc);

}  // namespace obsel
