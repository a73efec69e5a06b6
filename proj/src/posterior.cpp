#include "obsel/posterior.hpp"

#include <algorithm>
#include <stdexcept>

#include "obsel/errors.hpp"

namespace obsel {
namespace {

bool mode_is_exact(const std::vector<Quantity>& prior, const std::vector<LedgerStage>& ledger) {
  bool any_exact = false;
  bool any_mag = false;
  auto visit = [&](const Quantity& q) { (q.is_exact() ? any_exact : any_mag) = true; };
  for (const auto& q : prior) visit(q);
  for (const auto& s : ledger) {
    for (const auto& q : s.multipliers) visit(q);
  }
  if (any_exact && any_mag) {
    throw std::logic_error("posterior mixes exact and log10 quantities; convert explicitly first");
  }
  return !any_mag;
}

}  // namespace

Posterior::Posterior(std::vector<std::string> names, std::vector<Quantity> prior, std::vector<LedgerStage> ledger)
    : names_(std::move(names)), prior_(std::move(prior)), ledger_(std::move(ledger)) {
  const std::size_t n = names_.size();
  if (n == 0) throw ConfigurationError("posterior over no hypotheses");
  if (prior_.size() != n) throw ConfigurationError("prior length does not match hypotheses");
  for (const auto& s : ledger_) {
    if (s.multipliers.size() != n) {
      throw ConfigurationError("ledger stage '" + s.label + "' has " + std::to_string(s.multipliers.size()) +
                               " multipliers for " + std::to_string(n) + " hypotheses");
    }
  }
  mode_ = mode_is_exact(prior_, ledger_) ? EvalMode::kExact : EvalMode::kMagnitude;

  const auto w = weights();
  if (std::all_of(w.begin(), w.end(), [](const Quantity& q) { return q.is_zero(); })) {
    throw DegenerateEvidenceError("evidence is impossible under every hypothesis");
  }
  if (mode_ == EvalMode::kExact) {
    ExactProb total(0);
    for (const auto& q : w) total += q.exact();
    std::vector<ExactProb> p;
    p.reserve(n);
    for (const auto& q : w) {
      p.push_back(q.exact() / total);
      probs_.push_back(p.back().to_double());
    }
    exact_probs_ = std::move(p);
  } else {
    std::vector<Magnitude> m;
    m.reserve(n);
    for (const auto& q : w) m.push_back(q.as_magnitude());
    probs_ = normalize(m);
  }
}

std::size_t Posterior::index_of(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw ConfigurationError("unknown hypothesis '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - names_.begin());
}

double Posterior::prob(std::string_view name) const { return probs_[index_of(name)]; }

const ExactProb& Posterior::exact_prob(std::string_view name) const {
  if (!exact_probs_) throw ConfigurationError("posterior was evaluated in log10 mode; no exact value");
  return (*exact_probs_)[index_of(name)];
}

std::vector<Quantity> Posterior::weights() const {
  std::vector<Quantity> w = prior_;
  for (const auto& s : ledger_) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] *= s.multipliers[i];
  }
  return w;
}

Quantity Posterior::odds(std::string_view a, std::string_view b) const {
  const auto w = weights();
  const auto& wb = w[index_of(b)];
  if (wb.is_zero()) throw DomainError("odds against a zero-weight hypothesis '" + std::string(b) + "'");
  return w[index_of(a)] / wb;
}

std::vector<Quantity> Posterior::cumulative_odds(std::string_view a, std::string_view b) const {
  const auto ia = index_of(a);
  const auto ib = index_of(b);
  Quantity wa = prior_[ia];
  Quantity wb = prior_[ib];
  auto ratio = [&]() {
    if (wb.is_zero()) throw DomainError("odds against a zero-weight hypothesis '" + std::string(b) + "'");
    return wa / wb;
  };
  std::vector<Quantity> out{ratio()};
  for (const auto& s : ledger_) {
    wa *= s.multipliers[ia];
    wb *= s.multipliers[ib];
    out.push_back(ratio());
  }
  return out;
}

Posterior Posterior::with_stage(LedgerStage stage) const {
  auto ledger = ledger_;
  ledger.push_back(std::move(stage));
  return Posterior(names_, prior_, std::move(ledger));
}

}  // namespace obsel
