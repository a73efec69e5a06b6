#include "obsel/recruitment.hpp"

#include <cmath>

#include "obsel/errors.hpp"

namespace obsel {
namespace {

constexpr std::uint64_t kExactWork = 65536;

std::vector<std::string> subject_names(std::uint64_t pool_max) {
  std::vector<std::string> out;
  for (std::uint64_t n = 1; n <= pool_max; ++n) out.push_back("N=" + std::to_string(n));
  return out;
}

std::vector<Quantity> uniform_prior(std::uint64_t pool_max, bool exact) {
  const ExactProb p(BigInt(1), BigInt(pool_max));
  return std::vector<Quantity>(pool_max, exact ? Quantity(p) : Quantity(to_magnitude(p)));
}

void require_pool(std::uint64_t pool_max) {
  if (pool_max < 1) throw DomainError("pool_max must be at least 1");
}

}  // namespace

Posterior recruitment_invalid_update(std::uint64_t pool_max, std::uint64_t seq_len) {
  require_pool(pool_max);
  if (seq_len < 1) throw DomainError("seq_len must be at least 1");
  const bool exact = seq_len < 64 && pool_max <= kExactWork / seq_len;
  std::vector<Quantity> m;
  if (exact) {
    const ExactProb miss = ExactProb(1) - ExactProb(BigInt(1), BigInt(1) << seq_len);
    ExactProb power(1);
    for (std::uint64_t n = 1; n <= pool_max; ++n) {
      power *= miss;
      m.emplace_back(ExactProb(1) - power);
    }
  } else {
    const double log_miss = std::log1p(-std::ldexp(1.0, -static_cast<int>(std::min<std::uint64_t>(seq_len, 2000))));
    for (std::uint64_t n = 1; n <= pool_max; ++n) {
      m.emplace_back(Magnitude::from_log10(std::log10(-std::expm1(static_cast<double>(n) * log_miss))));
    }
  }
  return Posterior(subject_names(pool_max), uniform_prior(pool_max, exact),
                   {{"someone saw the sequence: 1-(1-2^-k)^n", std::move(m), kKnownInvalidNote}});
}

Posterior recruitment_indexical_update(std::uint64_t pool_max) {
  require_pool(pool_max);
  std::vector<Quantity> m;
  for (std::uint64_t n = 1; n <= pool_max; ++n) m.emplace_back(ExactProb(BigInt(n), BigInt(1)));
  return Posterior(subject_names(pool_max), uniform_prior(pool_max, true),
                   {{"you saw the sequence: n*2^-k", std::move(m), "common factor 2^-k dropped"}});
}

Scenario recruitment_scenario(std::uint64_t pool_max, const ExactProb& epsilon) {
  require_pool(pool_max);
  ScenarioBuilder b;
  ScenarioBuilder::Mapping subjects;
  ScenarioBuilder::Mapping eps;
  const ExactProb p(BigInt(1), BigInt(pool_max));
  for (std::uint64_t n = 1; n <= pool_max; ++n) {
    const std::string name = "N=" + std::to_string(n);
    b.hypothesis(name, p);
    subjects.emplace_back(name, ExactProb(BigInt(n), BigInt(1)));
    eps.emplace_back(name, epsilon);
  }
  b.reference_class("subjects", subjects).match_probabilities(eps);
  return b.build();
}

}  // namespace obsel
