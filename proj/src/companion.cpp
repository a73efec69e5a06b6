#include "obsel/companion.hpp"

#include "obsel/errors.hpp"

namespace obsel {
namespace {

Quantity own_fraction(const Quantity& own, const Quantity& other) {
  // min(1, other/own): chance an observer of this type has a companion.
  return min(own, other) / own;
}

}  // namespace

Quantity companion_odds(ObserverType type, const CompanionCounts& in, bool own_class_only, Rule rule) {
  CompanionCounts c = in;
  const bool exact = c.x_a.is_exact() && c.y_a.is_exact() && c.x_b.is_exact() && c.y_b.is_exact();
  if (!exact) {
    c = {c.x_a.to_magnitude_mode(), c.y_a.to_magnitude_mode(), c.x_b.to_magnitude_mode(), c.y_b.to_magnitude_mode()};
  }
  if (c.x_a.is_zero() || c.y_a.is_zero() || c.x_b.is_zero() || c.y_b.is_zero()) {
    throw DomainError("companion counts must all be positive");
  }
  if (rule == Rule::kSiaOnly) throw ConfigurationError("companion odds need an SSA stage; SIA alone is not a rule here");

  const Quantity pair_a = min(c.x_a, c.y_a);
  const Quantity pair_b = min(c.x_b, c.y_b);
  if (rule == Rule::kSsaPlusSia || rule == Rule::kFnc) return pair_a / pair_b;

  if (!own_class_only) return (pair_a / (c.x_a + c.y_a)) / (pair_b / (c.x_b + c.y_b));
  if (type == ObserverType::kX) return own_fraction(c.x_a, c.y_a) / own_fraction(c.x_b, c.y_b);
  return own_fraction(c.y_a, c.x_a) / own_fraction(c.y_b, c.x_b);
}

}  // namespace obsel
