#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "obsel/posterior.hpp"
#include "obsel/scenario.hpp"

namespace obsel {

enum class Rule {
  kSsaMinusSia,  // SSA with SIA denied
  kSsaPlusSia,   // SSA with SIA affirmed
  kFnc,          // full non-indexical conditioning
  kSiaOnly,      // SIA reweighting alone, no SSA stage
};

std::string_view to_string(Rule rule);
// Accepts "ssa", "ssa-sia", "ssa+sia", "fnc", "sia". Throws ConfigurationError.
Rule parse_rule(std::string_view text);

enum class FncLikelihood {
  // 1 - (1 - eps)^|C|: probability that at least one observer matches.
  kAtLeastOne,
  // eps * |C|: the leading term as eps|C| -> 0. Exact in rational mode.
  kSmallProbabilityLimit,
};

// Largest eps_h * |C|_h accepted by fnc_posterior.
inline constexpr double kFncRegimeLimit = 0.1;

// P(h | D) proportional to P(h) |D|_h / |C|_h. A hypothesis with no class
// members and no evidence members gets likelihood 0.
Posterior ssa_posterior(const Scenario& s, std::string_view class_name);

// SIA stage (x|C|_h) followed by the SSA stage (x|D|_h/|C|_h); the class
// counts cancel, so the result is proportional to P(h) |D|_h.
Posterior ssa_sia_posterior(const Scenario& s, std::string_view class_name);

// SIA reweighting alone.
Posterior sia_posterior(const Scenario& s, std::string_view class_name);

// P(h | memories) proportional to P(h) P(some member of C matches).
//
// Throws RegimeViolationError when eps_h|C|_h > kFncRegimeLimit for any
// hypothesis. With kAtLeastOne, exact-mode scenarios stay exact when every
// |C|_h is an integer no larger than 4096; larger counts are evaluated in
// log10 form and the returned posterior reports EvalMode::kMagnitude.
Posterior fnc_posterior(const Scenario& s, std::string_view class_name,
                        FncLikelihood likelihood = FncLikelihood::kAtLeastOne);

Posterior posterior_under(Rule rule, const Scenario& s, std::string_view class_name,
                          FncLikelihood likelihood = FncLikelihood::kAtLeastOne);

// Ordinary Bayesian conditioning appended to the ledger.
Posterior update(const Posterior& posterior, std::string label, std::vector<Quantity> likelihoods,
                 std::string note = {});

}  // namespace obsel
