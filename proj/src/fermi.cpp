#include "obsel/fermi.hpp"

#include <cmath>
#include <numbers>
#include <thread>

#include <fmt/format.h>

#include "obsel/errors.hpp"
#include "obsel/random.hpp"

namespace obsel {
namespace {

constexpr std::uint64_t kPriorPlotStream = ~std::uint64_t{0};

void check_positive(double p, double f, const FermiParams& params) {
  if (!(p > 0.0) || !(f > 0.0)) throw DomainError("p and f must be positive");
  if (!(params.V >= 0.0)) throw DomainError("V must be nonnegative");
}

struct Block {
  std::vector<FermiPoint> points;
  std::vector<std::uint32_t> index;  // proposal index within the block
};

Block run_block(const RandomSource& root, std::uint64_t block, std::uint64_t size, const Gaussian10& lp,
                const Gaussian10& lf, double V) {
  RandomSource rs = root.substream(block);
  Block out;
  for (std::uint64_t i = 0; i < size; ++i) {
    const double log10_p = rs.normal(lp.mean10, lp.sd10);
    const double log10_f = rs.normal(lf.mean10, lf.sd10);
    if (V > 0.0) {
      const double fpv = V * std::pow(10.0, log10_f + log10_p);
      if (!(rs.uniform() < std::exp(-fpv))) continue;
    }
    out.points.push_back({log10_f, log10_p});
    out.index.push_back(static_cast<std::uint32_t>(i));
  }
  return out;
}

template <class Range, class Get>
Moments moments(const Range& values, Get get) {
  const auto n = std::size(values);
  if (n == 0) throw DomainError("empty sample set");
  CompensatedSum sum;
  for (const auto& pt : values) sum.add(get(pt));
  const double mean = sum.value() / static_cast<double>(n);
  CompensatedSum sq;
  for (const auto& pt : values) {
    const double d = get(pt) - mean;
    sq.add(d * d);
  }
  const double var = n > 1 ? sq.value() / static_cast<double>(n - 1) : 0.0;
  const double sd = std::sqrt(var);
  return {mean, sd, sd / std::sqrt(static_cast<double>(n))};
}

struct FactorSetup {
  double coefficient;
  double conditional_sd;
  double parent_mean;
};

FactorSetup setup(const FermiPrior& prior, const FactorSpec& factor) {
  prior.validate();
  const Gaussian10 parent = factor.parent == FactorParent::kP ? prior.p() : prior.f();
  if (factor.parent_sd10 && std::abs(*factor.parent_sd10 - parent.sd10) > 1e-12) {
    throw ConfigurationError(fmt::format("factor parent sd {} does not match the prior's {}", *factor.parent_sd10,
                                         parent.sd10));
  }
  if (!(factor.sd10 > 0.0) || !(factor.sd10 < parent.sd10)) {
    throw ConfigurationError(
        fmt::format("factor sd {} must be positive and below the parent sd {}", factor.sd10, parent.sd10));
  }
  const double c = factor.sd10 * factor.sd10 / (parent.sd10 * parent.sd10);
  return {c, factor.sd10 * std::sqrt(1.0 - c), parent.mean10};
}

}  // namespace

void FermiPrior::validate() const {
  if (!(sd10_p > 0.0) || !(sd10_f > 0.0)) throw ConfigurationError("prior sds must be positive");
  if (std::abs(mean10_p + mean10_f) > 1e-12) {
    throw ConfigurationError(fmt::format("prior means must sum to zero (got {} + {})", mean10_p, mean10_f));
  }
}

Gaussian10 FermiPrior::shifted_p() const { return {mean10_p + sd10_p * sd10_p * std::numbers::ln10, sd10_p}; }

double existence_prob(double p, double f, const FermiParams& params) {
  check_positive(p, f, params);
  return p * std::exp(-f * p * params.V);
}

double expected_interferers(double p, double f, const FermiParams& params) {
  check_positive(p, f, params);
  return f * p * params.V;
}

FermiSampleSet sample_posterior(const FermiPrior& prior, const FermiParams& params, std::uint64_t target_accepted,
                                std::uint64_t seed, const SamplerOptions& options) {
  prior.validate();
  if (target_accepted < 1) throw DomainError("target_accepted must be at least 1");
  if (!(params.V >= 0.0) || !std::isfinite(params.V)) throw DomainError("V must be finite and nonnegative");
  if (options.block_size < 1 || options.block_size > 0xFFFFFFFFULL) throw ConfigurationError("bad block size");

  const RandomSource root(seed);
  const Gaussian10 lp = prior.shifted_p();
  const Gaussian10 lf = prior.f();
  const std::size_t threads = std::max<std::size_t>(1, options.threads);

  FermiSampleSet out;
  out.V = params.V;
  out.seed = seed;
  out.points.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(target_accepted, 1ULL << 26)));

  std::uint64_t next_block = 0;
  while (out.accepted_count < target_accepted) {
    std::vector<Block> batch(threads);
    if (threads == 1) {
      batch[0] = run_block(root, next_block, options.block_size, lp, lf, params.V);
    } else {
      std::vector<std::thread> workers;
      for (std::size_t t = 0; t < threads; ++t) {
        workers.emplace_back([&, t] { batch[t] = run_block(root, next_block + t, options.block_size, lp, lf, params.V); });
      }
      for (auto& w : workers) w.join();
    }
    next_block += threads;

    for (const auto& block : batch) {
      const std::size_t room = target_accepted - out.accepted_count;
      if (block.points.size() >= room) {
        out.points.insert(out.points.end(), block.points.begin(), block.points.begin() + static_cast<std::ptrdiff_t>(room));
        out.accepted_count += room;
        out.proposal_count += static_cast<std::uint64_t>(block.index[room - 1]) + 1;
        return out;
      }
      out.points.insert(out.points.end(), block.points.begin(), block.points.end());
      out.accepted_count += block.points.size();
      out.proposal_count += options.block_size;
    }
    if (out.proposal_count >= options.starvation_proposals && out.acceptance_rate() < options.min_acceptance) {
      throw SamplerStarvationError(
          fmt::format("sampler starved at V={}: acceptance {:.3g} after {} proposals", params.V,
                      out.acceptance_rate(), out.proposal_count),
          params.V, out.acceptance_rate());
    }
  }
  return out;
}

Moments log10_p_moments(const FermiSampleSet& samples) {
  return moments(samples.points, [](const FermiPoint& pt) { return pt.log10_p; });
}

Moments log10_f_moments(const FermiSampleSet& samples) {
  return moments(samples.points, [](const FermiPoint& pt) { return pt.log10_f; });
}

FactorSummary factor_posterior(const FermiPrior& prior, const FactorSpec& factor, const FermiSampleSet& samples) {
  const FactorSetup s = setup(prior, factor);
  if (samples.points.empty()) throw DomainError("factor posterior needs at least one sample");
  const bool on_p = factor.parent == FactorParent::kP;
  const Moments m = on_p ? log10_p_moments(samples) : log10_f_moments(samples);

  FactorSummary out;
  out.samples = samples.points.size();
  out.mean10 = factor.mean10 + s.coefficient * (m.mean - s.parent_mean);
  out.sd10 = std::sqrt(s.conditional_sd * s.conditional_sd + s.coefficient * s.coefficient * m.sd * m.sd);
  out.mean10_se = s.coefficient * m.mean_se;

  std::vector<double> values;
  values.reserve(samples.points.size());
  for (const auto& pt : samples.points) {
    const double x = on_p ? pt.log10_p : pt.log10_f;
    values.push_back(lognormal_mean({factor.mean10 + s.coefficient * (x - s.parent_mean), s.conditional_sd}));
  }
  const Moments mv = moments(values, [](double v) { return v; });
  out.mean_value = mv.mean;
  out.mean_value_se = mv.mean_se;
  return out;
}

FactorSummary factor_posterior_analytic(const FermiPrior& prior, const FactorSpec& factor) {
  const FactorSetup s = setup(prior, factor);
  const Gaussian10 parent = factor.parent == FactorParent::kP ? prior.shifted_p() : prior.f();
  FactorSummary out;
  out.mean10 = factor.mean10 + s.coefficient * (parent.mean10 - s.parent_mean);
  out.sd10 = std::sqrt(s.conditional_sd * s.conditional_sd +
                       s.coefficient * s.coefficient * parent.sd10 * parent.sd10);
  out.mean_value = lognormal_mean({out.mean10, out.sd10});
  return out;
}

std::string PlotData::to_csv() const {
  std::string out = "series,log10_f,log10_p\n";
  for (const auto& r : rows) out += fmt::format("{},{:.6f},{:.6f}\n", r.series, r.log10_f, r.log10_p);
  if (intercept) out += fmt::format("line,intercept,{:.6f}\n", *intercept);
  return out;
}

PlotData emit_plot_points(const FermiSampleSet& samples, const FermiPrior& prior, bool include_prior,
                          std::size_t prior_points) {
  PlotData out;
  out.rows.reserve(samples.points.size() + (include_prior ? prior_points : 0));
  for (const auto& pt : samples.points) out.rows.push_back({"posterior", pt.log10_f, pt.log10_p});
  if (include_prior) {
    prior.validate();
    RandomSource rs = RandomSource(samples.seed).substream(kPriorPlotStream);
    for (std::size_t i = 0; i < prior_points; ++i) {
      const double log10_p = rs.normal(prior.mean10_p, prior.sd10_p);
      const double log10_f = rs.normal(prior.mean10_f, prior.sd10_f);
      out.rows.push_back({"prior", log10_f, log10_p});
    }
  }
  if (samples.V > 0.0) out.intercept = -std::log10(samples.V);
  return out;
}

}  // namespace obsel
