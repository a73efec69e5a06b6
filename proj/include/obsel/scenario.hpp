#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "obsel/quantity.hpp"

namespace obsel {

struct Hypothesis {
  std::string name;
  Quantity prior;
};

// Observer counts |C|_h, aligned with the scenario's hypothesis order.
struct ReferenceClass {
  std::string name;
  std::vector<Quantity> counts;
};

// Observers whose total evidence matches yours. SSA-based rules read the
// counts |D|_h; FNC reads the per-observer match probabilities epsilon_h and
// pairs them with a reference-class count.
struct EvidenceSet {
  std::optional<std::vector<Quantity>> counts;
  std::optional<std::vector<Quantity>> match_probabilities;
};

// Hypotheses with priors, named reference classes and an evidence set.
// Construction validates: unique names, every mapping covers every
// hypothesis, and priors sum to one (exactly in exact mode, within 1e-12
// otherwise). Violations raise InconsistentScenarioError.
class Scenario {
 public:
  Scenario(std::vector<Hypothesis> hypotheses, std::vector<ReferenceClass> classes, EvidenceSet evidence);

  const std::vector<Hypothesis>& hypotheses() const noexcept { return hypotheses_; }
  const std::vector<ReferenceClass>& classes() const noexcept { return classes_; }
  const EvidenceSet& evidence() const noexcept { return evidence_; }
  std::size_t size() const noexcept { return hypotheses_.size(); }

  std::vector<std::string> names() const;
  std::vector<Quantity> priors() const;
  std::size_t index_of(std::string_view hypothesis) const;
  // Throws ConfigurationError naming the missing class.
  const ReferenceClass& reference_class(std::string_view name) const;
  bool has_class(std::string_view name) const;

  // True iff every input is exact and every count fits in 128 bits.
  bool exact_mode() const;

  // Copy with every quantity converted to log10 form.
  Scenario to_magnitude_mode() const;

  friend bool operator==(const Scenario& a, const Scenario& b);

 private:
  std::vector<Hypothesis> hypotheses_;
  std::vector<ReferenceClass> classes_;
  EvidenceSet evidence_;
};

// Name-keyed construction used by the catalog builders and the file parser.
class ScenarioBuilder {
 public:
  using Mapping = std::vector<std::pair<std::string, Quantity>>;

  ScenarioBuilder& hypothesis(std::string name, Quantity prior);
  ScenarioBuilder& reference_class(std::string name, const Mapping& counts);
  ScenarioBuilder& evidence_counts(const Mapping& counts);
  ScenarioBuilder& match_probabilities(const Mapping& epsilon);

  Scenario build() const;

 private:
  std::vector<Quantity> align(const Mapping& mapping, std::string_view what) const;

  std::vector<Hypothesis> hypotheses_;
  std::vector<std::pair<std::string, Mapping>> classes_;
  std::optional<Mapping> evidence_counts_;
  std::optional<Mapping> match_probabilities_;
};

}  // namespace obsel
