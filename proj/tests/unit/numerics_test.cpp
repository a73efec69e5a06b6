#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "obsel/errors.hpp"
#include "obsel/exact_prob.hpp"
#include "obsel/gaussian.hpp"
#include "obsel/magnitude.hpp"
#include "obsel/quantity.hpp"
#include "obsel/random.hpp"

namespace obsel {
namespace {

TEST(ExactProb, ArithmeticReduces) {
  const ExactProb a(2, 4);
  EXPECT_EQ(a.numerator(), 1);
  EXPECT_EQ(a.denominator(), 2);
  EXPECT_EQ(ExactProb(1, 3) + ExactProb(1, 6), ExactProb(1, 2));
  EXPECT_EQ(ExactProb(2, 3) * ExactProb(3, 4), ExactProb(1, 2));
  EXPECT_EQ(ExactProb(1, 2) / ExactProb(1, 4), ExactProb(2));
  EXPECT_EQ(ExactProb(1) - ExactProb(1, 3), ExactProb(2, 3));
}

TEST(ExactProb, RejectsNegativeAndZeroDenominator) {
  EXPECT_THROW(ExactProb(-1), DomainError);
  EXPECT_THROW(ExactProb(1, 0), DomainError);
  EXPECT_THROW(ExactProb(1, 3) - ExactProb(1, 2), DomainError);
  EXPECT_THROW(ExactProb(1) / ExactProb(0), DomainError);
}

TEST(ExactProb, MultiplicationMatchesCrossMultiplication) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> num(0, 1000);
  std::uniform_int_distribution<std::int64_t> den(1, 1000);
  for (int i = 0; i < 10000; ++i) {
    const std::int64_t a = num(rng), b = den(rng), c = num(rng), d = den(rng);
    const ExactProb product = ExactProb(a, b) * ExactProb(c, d);
    const std::int64_t n = a * c, m = b * d;
    const std::int64_t g = std::gcd(n, m);
    ASSERT_EQ(product.numerator(), n / g);
    ASSERT_EQ(product.denominator(), m / g);
  }
}

TEST(ExactProb, ParsesLiterals) {
  EXPECT_EQ(ExactProb::parse("3/4"), ExactProb(3, 4));
  EXPECT_EQ(ExactProb::parse("0.0093"), ExactProb(93, 10000));
  EXPECT_EQ(ExactProb::parse("007"), ExactProb(7));
  EXPECT_EQ(ExactProb::parse(".5"), ExactProb(1, 2));
  EXPECT_EQ(ExactProb::parse("6e10"), ExactProb(60000000000));
  EXPECT_EQ(ExactProb::parse("1.6e11"), ExactProb(160000000000));
  EXPECT_EQ(ExactProb::parse("25e-2"), ExactProb(1, 4));
  EXPECT_THROW(ExactProb::parse(""), DomainError);
  EXPECT_THROW(ExactProb::parse("1/0"), DomainError);
  EXPECT_THROW(ExactProb::parse("abc"), DomainError);
  EXPECT_THROW(ExactProb::parse("-1"), DomainError);
}

TEST(ExactProb, PowAndFits128Bits) {
  EXPECT_EQ(ExactProb::pow(ExactProb(7, 8), 3), ExactProb(343, 512));
  EXPECT_EQ(ExactProb::pow(ExactProb(5), 0), ExactProb(1));
  EXPECT_TRUE(ExactProb(BigInt(1) << 126, BigInt(1)).fits_128_bits());
  EXPECT_FALSE(ExactProb(BigInt(1) << 127, BigInt(1)).fits_128_bits());
}

TEST(Magnitude, ZeroIsAdditiveIdentity) {
  const Magnitude a = Magnitude::power_of_ten(-494.25);
  EXPECT_EQ(mag_add(a, Magnitude::zero()), a);
  EXPECT_EQ(mag_add(Magnitude::zero(), a), a);
  EXPECT_TRUE(mag_add(Magnitude::zero(), Magnitude::zero()).is_zero());
}

TEST(Magnitude, AddCommutesAndAssociates) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> exp(-600.0, 600.0);
  for (int i = 0; i < 1000; ++i) {
    const auto a = Magnitude::from_log10(exp(rng));
    const auto b = Magnitude::from_log10(exp(rng));
    const auto c = Magnitude::from_log10(exp(rng));
    ASSERT_EQ(mag_add(a, b), mag_add(b, a));
    ASSERT_NEAR(mag_add(mag_add(a, b), c).log10(), mag_add(a, mag_add(b, c)).log10(), 1e-12);
  }
}

TEST(Magnitude, ProductsBeyondDoubleRange) {
  const auto big = Magnitude::power_of_ten(30102999566.398);
  const auto tiny = Magnitude::power_of_ten(-500);
  EXPECT_DOUBLE_EQ((big * tiny).log10(), 30102999566.398 - 500);
  EXPECT_DOUBLE_EQ((tiny / big).log10(), -500 - 30102999566.398);
  EXPECT_EQ(tiny.to_double(), 0.0);
  EXPECT_THROW(tiny / Magnitude::zero(), DomainError);
}

TEST(Magnitude, SubtractionAndSums) {
  const auto three = Magnitude::from_double(3.0);
  const auto one = Magnitude::one();
  EXPECT_NEAR(mag_sub(three, one).to_double(), 2.0, 1e-14);
  EXPECT_TRUE(mag_sub(three, three).is_zero());
  EXPECT_THROW(mag_sub(one, three), DomainError);
  const std::vector<Magnitude> v{Magnitude::from_double(1), Magnitude::from_double(2), Magnitude::from_double(3)};
  EXPECT_NEAR(mag_sum(v).to_double(), 6.0, 1e-13);
  const auto p = normalize(v);
  EXPECT_NEAR(p[0], 1.0 / 6, 1e-15);
  EXPECT_NEAR(p[2], 0.5, 1e-15);
  EXPECT_THROW(normalize(std::vector<Magnitude>{Magnitude::zero()}), DegenerateEvidenceError);
}

TEST(Magnitude, RejectsBadInputs) {
  EXPECT_THROW(Magnitude::from_double(-1.0), DomainError);
  EXPECT_THROW(Magnitude::from_log10(std::nan("")), DomainError);
  EXPECT_TRUE(Magnitude::from_double(0.0).is_zero());
}

TEST(Magnitude, DisplayForm) {
  EXPECT_EQ(Magnitude::from_double(0.1236).to_string(4), "0.1236");
  EXPECT_EQ(Magnitude::power_of_ten(-494).to_string(4), "1.000e-494");
}

TEST(Quantity, MixingModesThrows) {
  const Quantity exact = ExactProb(1, 2);
  const Quantity mag = Magnitude::from_double(0.5);
  EXPECT_THROW(exact * mag, std::logic_error);
  EXPECT_THROW(exact + mag, std::logic_error);
  EXPECT_THROW((void)mag.exact(), std::logic_error);
  EXPECT_NEAR((exact.to_magnitude_mode() * mag).to_double(), 0.25, 1e-15);
}

TEST(Quantity, ParseAndLiteralRoundTrip) {
  for (const char* text : {"1/3", "0", "7", "10^-494", "10^30000000000", "10^-0.30102999566398120"}) {
    const Quantity q = Quantity::parse(text);
    EXPECT_EQ(Quantity::parse(q.to_literal()), q) << text;
  }
  EXPECT_TRUE(Quantity::parse("10^5").as_magnitude() == Magnitude::power_of_ten(5));
  EXPECT_FALSE(Quantity::parse("10^5").is_exact());
  EXPECT_TRUE(Quantity::parse("100000").is_exact());
  EXPECT_THROW(Quantity::parse("10^x"), DomainError);
}

TEST(Quantity, DisplayShowsFractionAndDecimal) {
  EXPECT_EQ(to_display(ExactProb(1, 3)), "1/3 (0.3333)");
  EXPECT_EQ(to_display(Quantity(Magnitude::power_of_ten(-494))), "10^-494 (1.000e-494)");
}

TEST(Gaussian, QuantileKnownValues) {
  EXPECT_NEAR(normal_quantile(0.975), 1.959963984540054, 1e-14);
  EXPECT_NEAR(normal_quantile(0.5), 0.0, 1e-16);
  EXPECT_NEAR(normal_quantile(1e-10), -6.361340902404056, 1e-12);
  EXPECT_THROW(normal_quantile(0.0), DomainError);
  EXPECT_THROW(normal_quantile(1.0), DomainError);
}

TEST(Gaussian, QuantileInvertsCdf) {
  for (double p = 1e-6; p < 1.0; p *= 1.7) {
    ASSERT_NEAR(normal_cdf(normal_quantile(p)), p, 1e-12 * std::max(1.0, p / 1e-3));
  }
}

TEST(Gaussian, CentralInterval) {
  const auto [lo, hi] = central_interval({-1.0, 0.2}, 0.95);
  EXPECT_NEAR(lo, std::pow(10.0, -1.0 - 0.2 * 1.959963984540054), 1e-15);
  EXPECT_NEAR(hi, std::pow(10.0, -1.0 + 0.2 * 1.959963984540054), 1e-15);
  EXPECT_THROW(central_interval({0, 1}, 1.0), DomainError);
}

TEST(Gaussian, LognormalMeanMatchesMonteCarlo) {
  for (double sd : {0.2, 0.75, 1.25}) {
    RandomSource rs(100 + static_cast<std::uint64_t>(sd * 100));
    CompensatedSum sum, sq;
    const int n = 10'000'000;
    for (int i = 0; i < n; ++i) {
      const double v = std::pow(10.0, rs.normal(0.0, sd));
      sum.add(v);
      sq.add(v * v);
    }
    const double mean = sum.value() / n;
    const double se = std::sqrt((sq.value() / n - mean * mean) / n);
    EXPECT_NEAR(mean, lognormal_mean({0.0, sd}), 3 * se) << "sd10 " << sd;
  }
}

TEST(RandomSource, SameSeedSameDraws) {
  RandomSource a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 100000; ++i) {
    const auto x = a.next_u64();
    ASSERT_EQ(x, b.next_u64());
    differs |= x != c.next_u64();
  }
  EXPECT_TRUE(differs);
}

TEST(RandomSource, SubstreamIndependentOfSiblingConsumption) {
  const RandomSource root(9);
  RandomSource previous = root.substream(4);
  for (int i = 0; i < 1000; ++i) previous.next_u64();
  RandomSource after = root.substream(5);
  RandomSource fresh = RandomSource(9).substream(5);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(after.next_u64(), fresh.next_u64());
}

TEST(RandomSource, UniformStaysOpen) {
  RandomSource rs(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = rs.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(CompensatedSum, RecoversLostLowOrderBits) {
  CompensatedSum s;
  s.add(1e16);
  for (int i = 0; i < 1000; ++i) s.add(1.0);
  s.add(-1e16);
  EXPECT_EQ(s.value(), 1000.0);
}

}  // namespace
}  // namespace obsel
