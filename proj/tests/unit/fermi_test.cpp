#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "obsel/errors.hpp"
#include "obsel/fermi.hpp"

namespace obsel {
namespace {

bool same_points(const FermiSampleSet& a, const FermiSampleSet& b) {
  if (a.points.size() != b.points.size()) return false;
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    if (a.points[i].log10_f != b.points[i].log10_f || a.points[i].log10_p != b.points[i].log10_p) return false;
  }
  return a.proposal_count == b.proposal_count && a.accepted_count == b.accepted_count;
}

TEST(Fermi, ExistenceProbability) {
  EXPECT_DOUBLE_EQ(existence_prob(0.5, 2.0, {0.0}), 0.5);
  EXPECT_DOUBLE_EQ(existence_prob(0.5, 2.0, {3.0}), 0.5 * std::exp(-3.0));
  EXPECT_DOUBLE_EQ(expected_interferers(0.5, 2.0, {3.0}), 3.0);
  EXPECT_THROW(existence_prob(0.0, 1.0, {1.0}), DomainError);
  EXPECT_THROW(existence_prob(1.0, 1.0, {-1.0}), DomainError);
}

TEST(Fermi, PriorValidation) {
  FermiPrior p;
  EXPECT_NO_THROW(p.validate());
  p.mean10_p = 1.0;
  EXPECT_THROW(p.validate(), ConfigurationError);
  p.mean10_f = -1.0;
  EXPECT_NO_THROW(p.validate());
  p.sd10_f = 0.0;
  EXPECT_THROW(p.validate(), ConfigurationError);
}

TEST(Fermi, FactorSpecValidation) {
  const FermiPrior prior;
  EXPECT_THROW(factor_posterior_analytic(prior, {-1.0, 2.0, FactorParent::kP, {}}), ConfigurationError);
  EXPECT_THROW(factor_posterior_analytic(prior, {-1.0, 0.2, FactorParent::kP, 1.0}), ConfigurationError);
  EXPECT_NO_THROW(factor_posterior_analytic(prior, {-1.0, 0.2, FactorParent::kP, 1.25}));
}

TEST(Fermi, ClosedFormAtZeroV) {
  const FermiPrior prior;
  const auto p1 = factor_posterior_analytic(prior, {-1.0, 0.2, FactorParent::kP, {}});
  EXPECT_NEAR(std::pow(10.0, p1.mean10), 0.1236, 0.00005);
  EXPECT_NEAR(p1.mean_value, 0.137, 0.0005);
  const auto f1 = factor_posterior_analytic(prior, {-1.0, 0.2, FactorParent::kF, {}});
  EXPECT_NEAR(f1.mean10, -1.0, 1e-15);
  EXPECT_NEAR(f1.mean_value, 0.111, 0.0005);
}

TEST(Fermi, SamplerAgreesWithClosedFormAtZeroV) {
  const FermiPrior prior;
  const auto s = sample_posterior(prior, {0.0}, 200000, 3);
  EXPECT_EQ(s.proposal_count, s.accepted_count);
  const auto mc = factor_posterior(prior, {-1.0, 0.2, FactorParent::kP, {}}, s);
  const auto exact = factor_posterior_analytic(prior, {-1.0, 0.2, FactorParent::kP, {}});
  EXPECT_NEAR(mc.mean10, exact.mean10, 4 * mc.mean10_se);
  EXPECT_NEAR(mc.mean_value, exact.mean_value, 4 * mc.mean_value_se);
  const auto m = log10_p_moments(s);
  EXPECT_NEAR(m.mean, prior.shifted_p().mean10, 4 * m.mean_se);
  EXPECT_NEAR(m.sd, 1.25, 0.01);
}

TEST(Fermi, DeterministicForSeed) {
  const FermiPrior prior;
  const auto a = sample_posterior(prior, {1.0}, 5000, 17);
  const auto b = sample_posterior(prior, {1.0}, 5000, 17);
  const auto c = sample_posterior(prior, {1.0}, 5000, 18);
  EXPECT_TRUE(same_points(a, b));
  EXPECT_FALSE(same_points(a, c));
}

TEST(Fermi, ThreadCountDoesNotChangeDraws) {
  const FermiPrior prior;
  SamplerOptions one, four;
  four.threads = 4;
  one.block_size = four.block_size = 4096;
  const auto a = sample_posterior(prior, {1.0}, 3000, 5, one);
  const auto b = sample_posterior(prior, {1.0}, 3000, 5, four);
  EXPECT_TRUE(same_points(a, b));
}

TEST(Fermi, TargetIsExactAndPrefixStable) {
  const FermiPrior prior;
  const auto small = sample_posterior(prior, {1.0}, 1000, 8);
  const auto large = sample_posterior(prior, {1.0}, 4000, 8);
  ASSERT_EQ(small.points.size(), 1000u);
  for (std::size_t i = 0; i < small.points.size(); ++i) {
    ASSERT_EQ(small.points[i].log10_p, large.points[i].log10_p);
  }
  EXPECT_LE(small.proposal_count, large.proposal_count);
}

TEST(Fermi, StarvationIsReported) {
  const FermiPrior prior;
  SamplerOptions o;
  o.block_size = 1024;
  o.starvation_proposals = 4096;
  o.min_acceptance = 0.5;
  try {
    sample_posterior(prior, {1000.0}, 100000, 1, o);
    FAIL() << "expected starvation";
  } catch (const SamplerStarvationError& e) {
    EXPECT_EQ(e.volume(), 1000.0);
    EXPECT_LT(e.acceptance_estimate(), 0.5);
  }
}

TEST(Fermi, RejectsBadArguments) {
  const FermiPrior prior;
  EXPECT_THROW(sample_posterior(prior, {-1.0}, 10, 1), DomainError);
  EXPECT_THROW(sample_posterior(prior, {1.0}, 0, 1), DomainError);
  EXPECT_THROW(factor_posterior(prior, {}, FermiSampleSet{}), DomainError);
}

TEST(Fermi, LargerVFavoursSmallerF) {
  const FermiPrior prior;
  double previous = 1e9;
  for (double V : {0.0, 0.1, 1.0, 10.0}) {
    const double m = log10_f_moments(sample_posterior(prior, {V}, 20000, 4)).mean;
    EXPECT_LT(m, previous) << V;
    previous = m;
  }
}

TEST(Fermi, PlotCsvFormat) {
  const FermiPrior prior;
  const auto s = sample_posterior(prior, {2.0}, 3, 1);
  const auto plot = emit_plot_points(s, prior, true, 2);
  ASSERT_EQ(plot.rows.size(), 5u);
  ASSERT_TRUE(plot.intercept);
  EXPECT_DOUBLE_EQ(*plot.intercept, -std::log10(2.0));
  std::istringstream csv(plot.to_csv());
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "series,log10_f,log10_p");
  int posterior = 0, prior_rows = 0, lines = 0;
  while (std::getline(csv, line)) {
    if (line.starts_with("posterior,")) ++posterior;
    if (line.starts_with("prior,")) ++prior_rows;
    if (line.starts_with("line,intercept,")) {
      ++lines;
      EXPECT_EQ(line, "line,intercept,-0.301030");
    }
  }
  EXPECT_EQ(posterior, 3);
  EXPECT_EQ(prior_rows, 2);
  EXPECT_EQ(lines, 1);

  const auto zero = emit_plot_points(sample_posterior(prior, {0.0}, 2, 1), prior, false);
  EXPECT_FALSE(zero.intercept);
  EXPECT_EQ(zero.to_csv().find("line,"), std::string::npos);
}

}  // namespace
}  // namespace obsel
