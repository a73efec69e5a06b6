#pragma once

#include <cstdint>
#include <string>

#include "obsel/posterior.hpp"
#include "obsel/scenario.hpp"

namespace obsel {

// A uniform number N in 1..pool_max of subjects each flip seq_len fair
// coins; you are one of them and saw a particular sequence.

// P(N=n) proportional to 1 - (1 - 2^-seq_len)^n: conditioning on "someone
// got this sequence". Flagged in the ledger as a known-invalid update.
// Exact for pool_max * seq_len <= 65536, log10 form beyond.
Posterior recruitment_invalid_update(std::uint64_t pool_max, std::uint64_t seq_len);

// P(N=n) = n / (1 + 2 + ... + pool_max).
Posterior recruitment_indexical_update(std::uint64_t pool_max);

// Uniform prior, class "subjects" with |C| = n, and match probability
// epsilon for every subject, ready for fnc_posterior.
Scenario recruitment_scenario(std::uint64_t pool_max, const ExactProb& epsilon);

inline const std::string kKnownInvalidNote = "known-invalid (pedagogical)";

}  // namespace obsel
