#include "obsel/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "obsel/errors.hpp"

namespace obsel {
namespace {

void check_length(const std::vector<Quantity>& v, std::size_t n, const std::string& what) {
  if (v.size() != n) {
    throw InconsistentScenarioError(what + " has " + std::to_string(v.size()) + " entries for " +
                                    std::to_string(n) + " hypotheses");
  }
}

bool all_exact(const std::vector<Quantity>& v, bool require_128) {
  return std::all_of(v.begin(), v.end(), [&](const Quantity& q) {
    return q.is_exact() && (!require_128 || q.exact().fits_128_bits());
  });
}

std::vector<Quantity> to_mag(const std::vector<Quantity>& v) {
  std::vector<Quantity> out;
  out.reserve(v.size());
  for (const auto& q : v) out.push_back(q.to_magnitude_mode());
  return out;
}

}  // namespace

Scenario::Scenario(std::vector<Hypothesis> hypotheses, std::vector<ReferenceClass> classes, EvidenceSet evidence)
    : hypotheses_(std::move(hypotheses)), classes_(std::move(classes)), evidence_(std::move(evidence)) {
  const std::size_t n = hypotheses_.size();
  if (n == 0) throw InconsistentScenarioError("scenario has no hypotheses");

  std::set<std::string, std::less<>> seen;
  for (const auto& h : hypotheses_) {
    if (h.name.empty()) throw InconsistentScenarioError("hypothesis with empty name");
    if (!seen.insert(h.name).second) throw InconsistentScenarioError("duplicate hypothesis '" + h.name + "'");
  }
  seen.clear();
  for (const auto& c : classes_) {
    if (c.name.empty()) throw InconsistentScenarioError("reference class with empty name");
    if (!seen.insert(c.name).second) throw InconsistentScenarioError("duplicate reference class '" + c.name + "'");
    check_length(c.counts, n, "reference class '" + c.name + "'");
  }
  if (evidence_.counts) check_length(*evidence_.counts, n, "evidence counts");
  if (evidence_.match_probabilities) {
    check_length(*evidence_.match_probabilities, n, "match probabilities");
    for (std::size_t i = 0; i < n; ++i) {
      if (Quantity(1) < (*evidence_.match_probabilities)[i]) {
        throw InconsistentScenarioError("match probability for '" + hypotheses_[i].name + "' exceeds 1");
      }
    }
  }

  const auto p = priors();
  if (all_exact(p, false)) {
    ExactProb total(0);
    for (const auto& q : p) total += q.exact();
    if (total != ExactProb(1)) {
      throw InconsistentScenarioError("priors sum to " + total.to_string() + ", not 1");
    }
  } else {
    std::vector<Magnitude> m;
    for (const auto& q : p) m.push_back(q.as_magnitude());
    const double total = std::pow(10.0, mag_sum(m).log10());
    if (std::abs(total - 1.0) > 1e-12) {
      throw InconsistentScenarioError("priors sum to " + std::to_string(total) + ", not 1");
    }
  }
}

std::vector<std::string> Scenario::names() const {
  std::vector<std::string> out;
  for (const auto& h : hypotheses_) out.push_back(h.name);
  return out;
}

std::vector<Quantity> Scenario::priors() const {
  std::vector<Quantity> out;
  for (const auto& h : hypotheses_) out.push_back(h.prior);
  return out;
}

std::size_t Scenario::index_of(std::string_view hypothesis) const {
  for (std::size_t i = 0; i < hypotheses_.size(); ++i) {
    if (hypotheses_[i].name == hypothesis) return i;
  }
  throw ConfigurationError("unknown hypothesis '" + std::string(hypothesis) + "'");
}

const ReferenceClass& Scenario::reference_class(std::string_view name) const {
  for (const auto& c : classes_) {
    if (c.name == name) return c;
  }
  std::string known;
  for (const auto& c : classes_) known += (known.empty() ? "" : ", ") + c.name;
  throw ConfigurationError("unknown reference class '" + std::string(name) + "' (known: " +
                           (known.empty() ? "none" : known) + ")");
}

bool Scenario::has_class(std::string_view name) const {
  return std::any_of(classes_.begin(), classes_.end(), [&](const auto& c) { return c.name == name; });
}

bool Scenario::exact_mode() const {
  if (!all_exact(priors(), false)) return false;
  for (const auto& c : classes_) {
    if (!all_exact(c.counts, true)) return false;
  }
  if (evidence_.counts && !all_exact(*evidence_.counts, true)) return false;
  if (evidence_.match_probabilities && !all_exact(*evidence_.match_probabilities, false)) return false;
  return true;
}

Scenario Scenario::to_magnitude_mode() const {
  std::vector<Hypothesis> h;
  for (const auto& x : hypotheses_) h.push_back({x.name, x.prior.to_magnitude_mode()});
  std::vector<ReferenceClass> c;
  for (const auto& x : classes_) c.push_back({x.name, to_mag(x.counts)});
  EvidenceSet e;
  if (evidence_.counts) e.counts = to_mag(*evidence_.counts);
  if (evidence_.match_probabilities) e.match_probabilities = to_mag(*evidence_.match_probabilities);
  return Scenario(std::move(h), std::move(c), std::move(e));
}

bool operator==(const Scenario& a, const Scenario& b) {
  if (a.size() != b.size() || a.classes_.size() != b.classes_.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.hypotheses_[i].name != b.hypotheses_[i].name) return false;
    if (!(a.hypotheses_[i].prior == b.hypotheses_[i].prior)) return false;
  }
  for (std::size_t i = 0; i < a.classes_.size(); ++i) {
    if (a.classes_[i].name != b.classes_[i].name || a.classes_[i].counts != b.classes_[i].counts) return false;
  }
  return a.evidence_.counts == b.evidence_.counts &&
         a.evidence_.match_probabilities == b.evidence_.match_probabilities;
}

ScenarioBuilder& ScenarioBuilder::hypothesis(std::string name, Quantity prior) {
  hypotheses_.push_back({std::move(name), std::move(prior)});
  return *this;
}

ScenarioBuilder& ScenarioBuilder::reference_class(std::string name, const Mapping& counts) {
  classes_.emplace_back(std::move(name), counts);
  return *this;
}

ScenarioBuilder& ScenarioBuilder::evidence_counts(const Mapping& counts) {
  evidence_counts_ = counts;
  return *this;
}

ScenarioBuilder& ScenarioBuilder::match_probabilities(const Mapping& epsilon) {
  match_probabilities_ = epsilon;
  return *this;
}

std::vector<Quantity> ScenarioBuilder::align(const Mapping& mapping, std::string_view what) const {
  std::vector<Quantity> out(hypotheses_.size());
  std::vector<bool> set(hypotheses_.size(), false);
  for (const auto& [name, value] : mapping) {
    auto it = std::find_if(hypotheses_.begin(), hypotheses_.end(), [&](const auto& h) { return h.name == name; });
    if (it == hypotheses_.end()) {
      throw InconsistentScenarioError(std::string(what) + " names unknown hypothesis '" + name + "'");
    }
    const auto i = static_cast<std::size_t>(it - hypotheses_.begin());
    if (set[i]) throw InconsistentScenarioError(std::string(what) + " repeats hypothesis '" + name + "'");
    out[i] = value;
    set[i] = true;
  }
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (!set[i]) {
      throw InconsistentScenarioError(std::string(what) + " is missing hypothesis '" + hypotheses_[i].name + "'");
    }
  }
  return out;
}

Scenario ScenarioBuilder::build() const {
  std::vector<ReferenceClass> classes;
  for (const auto& [name, mapping] : classes_) {
    classes.push_back({name, align(mapping, "reference class '" + name + "'")});
  }
  EvidenceSet e;
  if (evidence_counts_) e.counts = align(*evidence_counts_, "evidence counts");
  if (match_probabilities_) e.match_probabilities = align(*match_probabilities_, "match probabilities");
  return Scenario(hypotheses_, std::move(classes), std::move(e));
}

}  // namespace obsel
