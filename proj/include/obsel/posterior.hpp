#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "obsel/quantity.hpp"

namespace obsel {

enum class EvalMode { kExact, kMagnitude };

// One evidence stage: the per-hypothesis factor applied to the odds.
struct LedgerStage {
  std::string label;
  std::vector<Quantity> multipliers;
  std::string note;
};

// Normalized distribution over hypotheses together with the ordered odds
// ledger that produced it. Probabilities are always recomputed from
// prior x product(ledger), so replaying the ledger reproduces them.
class Posterior {
 public:
  // All quantities must share one mode. Throws DegenerateEvidenceError when
  // every final weight is zero.
  Posterior(std::vector<std::string> names, std::vector<Quantity> prior, std::vector<LedgerStage> ledger);

  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::vector<Quantity>& prior() const noexcept { return prior_; }
  const std::vector<LedgerStage>& ledger() const noexcept { return ledger_; }
  EvalMode mode() const noexcept { return mode_; }
  std::size_t size() const noexcept { return names_.size(); }

  const std::vector<double>& probs() const noexcept { return probs_; }
  // Present only in exact mode.
  const std::optional<std::vector<ExactProb>>& exact_probs() const noexcept { return exact_probs_; }

  std::size_t index_of(std::string_view name) const;
  double prob(std::string_view name) const;
  const ExactProb& exact_prob(std::string_view name) const;

  // Unnormalized prior x product of all stage multipliers.
  std::vector<Quantity> weights() const;
  // Posterior odds of a over b. DomainError when b has zero weight.
  Quantity odds(std::string_view a, std::string_view b) const;
  // Odds of a over b after the prior and after each ledger stage in turn.
  std::vector<Quantity> cumulative_odds(std::string_view a, std::string_view b) const;

  // New posterior with one more stage appended.
  Posterior with_stage(LedgerStage stage) const;

 private:
  std::vector<std::string> names_;
  std::vector<Quantity> prior_;
  std::vector<LedgerStage> ledger_;
  EvalMode mode_ = EvalMode::kExact;
  std::vector<double> probs_;
  std::optional<std::vector<ExactProb>> exact_probs_;
};

}  // namespace obsel
