#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "obsel/gaussian.hpp"

namespace obsel {

// Joint Gaussian prior on log10 p (chance that a species like us develops
// at a given place) and log10 f (its propensity to interfere with others).
// Only the sum of the two means is pinned to zero.
struct FermiPrior {
  double mean10_p = 0.0;
  double sd10_p = 1.25;
  double mean10_f = 0.0;
  double sd10_f = 0.75;

  // Throws ConfigurationError unless both sds are positive and the means
  // sum to zero.
  void validate() const;
  Gaussian10 p() const { return {mean10_p, sd10_p}; }
  Gaussian10 f() const { return {mean10_f, sd10_f}; }
  // log10 p after absorbing the factor p of the likelihood.
  Gaussian10 shifted_p() const;
};

// V: the space-time opportunity for interference, reduced to one number.
struct FermiParams {
  double V = 0.0;
};

enum class FactorParent { kP, kF };

// A sub-factor of p or f with its own log10 Gaussian; the remaining factors
// make up the rest of the parent's variance.
struct FactorSpec {
  double mean10 = -1.0;
  double sd10 = 0.2;
  FactorParent parent = FactorParent::kP;
  // When set, must equal the prior's sd for the parent.
  std::optional<double> parent_sd10;
};

struct FermiPoint {
  double log10_f;
  double log10_p;
};

struct FermiSampleSet {
  std::vector<FermiPoint> points;
  double V = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t proposal_count = 0;
  std::uint64_t accepted_count = 0;

  double acceptance_rate() const {
    return proposal_count ? static_cast<double>(accepted_count) / static_cast<double>(proposal_count) : 0.0;
  }
};

struct SamplerOptions {
  // Worker threads; the result does not depend on this.
  std::size_t threads = 1;
  // Proposals per deterministic block. Changing it changes the draws.
  std::uint64_t block_size = 1 << 16;
  // Starvation check: fail if fewer than min_acceptance of the first
  // starvation_proposals proposals were accepted.
  std::uint64_t starvation_proposals = 100'000'000;
  double min_acceptance = 1e-6;
};

// p exp(-f p V): probability that a species like us exists and was not
// preempted by anyone else.
double existence_prob(double p, double f, const FermiParams& params);

// f p V: expected number of other species that interfere.
double expected_interferers(double p, double f, const FermiParams& params);

// Exact draws of (log10 f, log10 p) from prior x p exp(-f p V). Proposals
// come from the prior with log10 p shifted by sd10_p^2 ln 10 and are kept
// with probability exp(-f p V). Block b of proposals uses substream b of the
// seed, so the output depends only on (prior, V, target, seed).
FermiSampleSet sample_posterior(const FermiPrior& prior, const FermiParams& params, std::uint64_t target_accepted,
                                std::uint64_t seed, const SamplerOptions& options = {});

struct Moments {
  double mean = 0.0;
  double sd = 0.0;
  double mean_se = 0.0;
};

Moments log10_p_moments(const FermiSampleSet& samples);
Moments log10_f_moments(const FermiSampleSet& samples);

struct FactorSummary {
  double mean10 = 0.0;
  double sd10 = 0.0;
  double mean_value = 0.0;
  double mean10_se = 0.0;
  double mean_value_se = 0.0;
  std::size_t samples = 0;
};

// Posterior of a sub-factor given draws of its parent. Given the parent
// value x the factor's log10 is Gaussian with mean
// mean10 + c (x - prior parent mean) and variance sd10^2 (1 - c), where
// c = sd10^2 / parent sd^2. mean_value averages the conditional lognormal
// means over the draws.
FactorSummary factor_posterior(const FermiPrior& prior, const FactorSpec& factor, const FermiSampleSet& samples);

// Closed form for V = 0, where the parent posterior is Gaussian (the shifted
// prior for p, the prior itself for f). Standard errors are zero.
FactorSummary factor_posterior_analytic(const FermiPrior& prior, const FactorSpec& factor);

struct PlotRow {
  std::string series;
  double log10_f;
  double log10_p;
};

struct PlotData {
  std::vector<PlotRow> rows;
  // Diagonal log10 f + log10 p = -log10 V; absent when V = 0.
  std::optional<double> intercept;

  // Header "series,log10_f,log10_p", one row per point, then
  // "line,intercept,<value>" when the diagonal exists.
  std::string to_csv() const;
};

// Posterior points, plus prior_points fresh draws from the unshifted prior
// on a stream derived from the sample set's seed when include_prior is set.
PlotData emit_plot_points(const FermiSampleSet& samples, const FermiPrior& prior, bool include_prior,
                          std::size_t prior_points = 500);

}  // namespace obsel
