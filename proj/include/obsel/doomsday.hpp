#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "obsel/posterior.hpp"
#include "obsel/scenario.hpp"

namespace obsel {

// Prior over the total number of humans that will ever live: (n, P(N=n)).
using CountPrior = std::vector<std::pair<std::uint64_t, Quantity>>;

// Hypotheses "N=<n>", class "humans" with |C| = n, and evidence count
// |D| = 1 when n >= set_size (you are one of the first set_size), else 0.
Scenario doomsday_scenario(const CountPrior& prior, std::uint64_t set_size);

// P(N=n | R=r) proportional to P(N=n)/n for n >= r, zero below.
// Throws ContradictionError when no prior mass sits at n >= r.
Posterior doomsday_posterior(const CountPrior& prior, std::uint64_t r);

// Prior truncated to n >= r and renormalized.
Posterior nodoom_posterior(const CountPrior& prior, std::uint64_t r);

// Membership in a set of set_size people that exists under every hypothesis:
// likelihood set_size/n. Same form as doomsday_posterior.
Posterior generalized_doomsday(const CountPrior& prior, std::uint64_t set_size);

// Prior reweighted by n and renormalized.
CountPrior sia_reweight(const CountPrior& prior);

}  // namespace obsel
