#include "obsel/rules.hpp"

#include <cmath>

#include "obsel/errors.hpp"

namespace obsel {
namespace {

constexpr std::uint64_t kMaxExactFncCount = 4096;

// Evaluation copy: the scenario itself when exact, its log10 image otherwise.
Scenario evaluation_copy(const Scenario& s) { return s.exact_mode() ? s : s.to_magnitude_mode(); }

const std::vector<Quantity>& require_counts(const Scenario& s) {
  if (!s.evidence().counts) {
    throw ConfigurationError("this rule needs evidence counts |D|; the scenario only gives match probabilities");
  }
  return *s.evidence().counts;
}

std::vector<Quantity> ssa_multipliers(const Scenario& s, const ReferenceClass& c) {
  const auto& d = require_counts(s);
  std::vector<Quantity> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (c.counts[i] < d[i]) {
      throw InconsistentScenarioError("under '" + s.hypotheses()[i].name + "' the evidence set (" + d[i].to_literal() +
                                      ") is larger than reference class '" + c.name + "' (" +
                                      c.counts[i].to_literal() + ")");
    }
    if (c.counts[i].is_zero()) {
      out.push_back(d[i]);  // zero, in the scenario's mode
    } else {
      out.push_back(d[i] / c.counts[i]);
    }
  }
  return out;
}

LedgerStage ssa_stage(const Scenario& s, const ReferenceClass& c) {
  return {"SSA: |D|/|C|", ssa_multipliers(s, c), "reference class " + c.name};
}

LedgerStage sia_stage(const ReferenceClass& c) { return {"SIA: |C|", c.counts, "reference class " + c.name}; }

void check_regime(const Scenario& s, const ReferenceClass& c, const std::vector<Quantity>& eps) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    bool violated;
    double product;
    if (eps[i].is_exact() && c.counts[i].is_exact()) {
      const ExactProb x = eps[i].exact() * c.counts[i].exact();
      violated = ExactProb(1, 10) < x;
      product = x.to_double();
    } else {
      const double lx = (eps[i].as_magnitude() * c.counts[i].as_magnitude()).log10();
      violated = lx > std::log10(kFncRegimeLimit) + 1e-12;
      product = std::pow(10.0, lx);
    }
    if (violated) {
      throw RegimeViolationError(
          "FNC needs eps*|C| <= 0.1 (observers with your memories are rare); under '" + s.hypotheses()[i].name +
          "' eps*|C| = " + std::to_string(product) + ". Use a larger memory content or a different rule.");
    }
  }
}

// 1 - (1 - eps)^n in log10 form, for eps*n <= 0.1.
Magnitude at_least_one_magnitude(const Magnitude& eps, const Magnitude& n) {
  if (eps.is_zero() || n.is_zero()) return Magnitude::zero();
  const double lx = eps.log10() + n.log10();
  if (lx < -300.0) return Magnitude::from_log10(lx);  // relative error below 1e-300
  const double x = std::pow(10.0, lx);
  double l;  // n * log1p(-eps)
  if (eps.log10() > -8.0) {
    l = std::pow(10.0, n.log10()) * std::log1p(-std::pow(10.0, eps.log10()));
  } else {
    l = -x * (1.0 + 0.5 * std::pow(10.0, eps.log10()));
  }
  return Magnitude::from_log10(std::log10(-std::expm1(l)));
}

}  // namespace

std::string_view to_string(Rule rule) {
  switch (rule) {
    case Rule::kSsaMinusSia: return "ssa-sia";
    case Rule::kSsaPlusSia: return "ssa+sia";
    case Rule::kFnc: return "fnc";
    case Rule::kSiaOnly: return "sia";
  }
  return "?";
}

Rule parse_rule(std::string_view text) {
  if (text == "ssa" || text == "ssa-sia") return Rule::kSsaMinusSia;
  if (text == "ssa+sia") return Rule::kSsaPlusSia;
  if (text == "fnc") return Rule::kFnc;
  if (text == "sia") return Rule::kSiaOnly;
  throw ConfigurationError("unknown rule '" + std::string(text) + "' (expected ssa, ssa-sia, ssa+sia, fnc or sia)");
}

Posterior ssa_posterior(const Scenario& scenario, std::string_view class_name) {
  const Scenario s = evaluation_copy(scenario);
  const auto& c = s.reference_class(class_name);
  return Posterior(s.names(), s.priors(), {ssa_stage(s, c)});
}

Posterior ssa_sia_posterior(const Scenario& scenario, std::string_view class_name) {
  const Scenario s = evaluation_copy(scenario);
  const auto& c = s.reference_class(class_name);
  return Posterior(s.names(), s.priors(), {sia_stage(c), ssa_stage(s, c)});
}

Posterior sia_posterior(const Scenario& scenario, std::string_view class_name) {
  const Scenario s = evaluation_copy(scenario);
  return Posterior(s.names(), s.priors(), {sia_stage(s.reference_class(class_name))});
}

Posterior fnc_posterior(const Scenario& scenario, std::string_view class_name, FncLikelihood likelihood) {
  if (!scenario.evidence().match_probabilities) {
    throw ConfigurationError("FNC needs per-observer match probabilities (eps) in the evidence set");
  }
  Scenario s = evaluation_copy(scenario);
  check_regime(s, s.reference_class(class_name), *s.evidence().match_probabilities);

  if (likelihood == FncLikelihood::kAtLeastOne && s.exact_mode()) {
    const auto& c = s.reference_class(class_name);
    for (const auto& n : c.counts) {
      const auto& e = n.exact();
      if (!e.is_integer() || BigInt(kMaxExactFncCount) < e.numerator()) {
        s = s.to_magnitude_mode();
        break;
      }
    }
  }
  const auto& c = s.reference_class(class_name);
  const auto& eps = *s.evidence().match_probabilities;

  std::vector<Quantity> m;
  std::string label;
  if (likelihood == FncLikelihood::kSmallProbabilityLimit) {
    label = "FNC: eps*|C|";
    for (std::size_t i = 0; i < s.size(); ++i) m.push_back(eps[i] * c.counts[i]);
  } else {
    label = "FNC: 1-(1-eps)^|C|";
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s.exact_mode()) {
        const auto n = static_cast<std::uint64_t>(c.counts[i].exact().numerator());
        m.emplace_back(ExactProb(1) - ExactProb::pow(ExactProb(1) - eps[i].exact(), n));
      } else {
        m.emplace_back(at_least_one_magnitude(eps[i].as_magnitude(), c.counts[i].as_magnitude()));
      }
    }
  }
  return Posterior(s.names(), s.priors(), {{label, std::move(m), "reference class " + c.name}});
}

Posterior posterior_under(Rule rule, const Scenario& s, std::string_view class_name, FncLikelihood likelihood) {
  switch (rule) {
    case Rule::kSsaMinusSia: return ssa_posterior(s, class_name);
    case Rule::kSsaPlusSia: return ssa_sia_posterior(s, class_name);
    case Rule::kFnc: return fnc_posterior(s, class_name, likelihood);
    case Rule::kSiaOnly: return sia_posterior(s, class_name);
  }
  throw ConfigurationError("unknown rule");
}

Posterior update(const Posterior& posterior, std::string label, std::vector<Quantity> likelihoods, std::string note) {
  if (posterior.mode() == EvalMode::kMagnitude) {
    for (auto& q : likelihoods) q = q.to_magnitude_mode();
  }
  return posterior.with_stage({std::move(label), std::move(likelihoods), std::move(note)});
}

}  // namespace obsel
