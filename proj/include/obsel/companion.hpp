#pragma once

#include "obsel/quantity.hpp"
#include "obsel/rules.hpp"

namespace obsel {

enum class ObserverType { kX, kY };

// Observers of each type under the two theories A and B. Every observer of
// the scarcer type has one companion of the other type.
struct CompanionCounts {
  Quantity x_a;
  Quantity y_a;
  Quantity x_b;
  Quantity y_b;
};

// Odds multiplier for theory A over B for an observer of the given type who
// sees a companion.
//
// own_class_only: reference class is the observer's own type, giving
//   min(1, |other|_A/|own|_A) / min(1, |other|_B/|own|_B) under SSA-SIA.
// otherwise: reference class is both types together, giving
//   [min(X_A,Y_A)/(X_A+Y_A)] / [min(X_B,Y_B)/(X_B+Y_B)], the same for X and Y.
// Under SSA+SIA (and FNC) both classes reduce to min(X_A,Y_A)/min(X_B,Y_B).
//
// The result is exact when all counts are exact, otherwise in log10 form.
// Zero counts raise DomainError; Rule::kSiaOnly raises ConfigurationError.
Quantity companion_odds(ObserverType type, const CompanionCounts& counts, bool own_class_only,
                        Rule rule = Rule::kSsaMinusSia);

}  // namespace obsel
