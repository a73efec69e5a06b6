#include "obsel/doomsday.hpp"

#include <set>

#include "obsel/errors.hpp"
#include "obsel/rules.hpp"

namespace obsel {
namespace {

Quantity count_quantity(std::uint64_t n, bool exact) {
  ExactProb e(BigInt(n), BigInt(1));
  if (exact) return e;
  return to_magnitude(e);
}

void validate(const CountPrior& prior, std::uint64_t r) {
  if (r < 1) throw DomainError("birth rank / set size must be at least 1");
  if (prior.empty()) throw DomainError("empty prior");
  std::set<std::uint64_t> seen;
  bool possible = false;
  for (const auto& [n, p] : prior) {
    if (n < 1) throw DomainError("prior support must be at least 1 human");
    if (!seen.insert(n).second) throw DomainError("prior lists N=" + std::to_string(n) + " twice");
    if (n >= r && !p.is_zero()) possible = true;
  }
  if (!possible) {
    throw ContradictionError("no prior mass at N >= " + std::to_string(r) + "; the observation is impossible");
  }
}

}  // namespace

Scenario doomsday_scenario(const CountPrior& prior, std::uint64_t set_size) {
  bool exact = true;
  for (const auto& entry : prior) exact = exact && entry.second.is_exact();
  ScenarioBuilder b;
  ScenarioBuilder::Mapping humans;
  ScenarioBuilder::Mapping evidence;
  for (const auto& [n, p] : prior) {
    const std::string name = "N=" + std::to_string(n);
    b.hypothesis(name, p);
    humans.emplace_back(name, count_quantity(n, exact));
    evidence.emplace_back(name, count_quantity(n >= set_size ? 1 : 0, exact));
  }
  b.reference_class("humans", humans).evidence_counts(evidence);
  return b.build();
}

Posterior doomsday_posterior(const CountPrior& prior, std::uint64_t r) {
  validate(prior, r);
  return ssa_posterior(doomsday_scenario(prior, r), "humans");
}

Posterior nodoom_posterior(const CountPrior& prior, std::uint64_t r) {
  validate(prior, r);
  return ssa_sia_posterior(doomsday_scenario(prior, r), "humans");
}

Posterior generalized_doomsday(const CountPrior& prior, std::uint64_t set_size) {
  validate(prior, set_size);
  const Scenario s = doomsday_scenario(prior, set_size);
  const bool exact = s.exact_mode();
  std::vector<Quantity> m;
  const Quantity k = count_quantity(set_size, exact);
  for (const auto& [n, p] : prior) m.push_back(n >= set_size ? k / count_quantity(n, exact) : count_quantity(0, exact));
  const Scenario e = exact ? s : s.to_magnitude_mode();
  return Posterior(e.names(), e.priors(), {{"membership: |S|/N", std::move(m), "set of size " + std::to_string(set_size)}});
}

CountPrior sia_reweight(const CountPrior& prior) {
  bool exact = true;
  for (const auto& entry : prior) exact = exact && entry.second.is_exact();
  CountPrior out;
  if (exact) {
    ExactProb total(0);
    for (const auto& [n, p] : prior) total += p.exact() * ExactProb(BigInt(n), BigInt(1));
    if (total.is_zero()) throw DegenerateEvidenceError("prior has no mass");
    for (const auto& [n, p] : prior) out.emplace_back(n, p.exact() * ExactProb(BigInt(n), BigInt(1)) / total);
    return out;
  }
  std::vector<Magnitude> w;
  for (const auto& [n, p] : prior) w.push_back(p.as_magnitude() * to_magnitude(ExactProb(BigInt(n), BigInt(1))));
  const Magnitude total = mag_sum(w);
  if (total.is_zero()) throw DegenerateEvidenceError("prior has no mass");
  for (std::size_t i = 0; i < prior.size(); ++i) out.emplace_back(prior[i].first, Quantity(w[i] / total));
  return out;
}

}  // namespace obsel
