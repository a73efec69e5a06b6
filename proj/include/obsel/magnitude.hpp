#pragma once

#include <compare>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "obsel/exact_prob.hpp"

namespace obsel {

// Nonnegative real stored as its base-10 logarithm, so that counts such as
// 10^500 or 10^(3e10) and odds such as 10^-494 stay representable.
// Exact zero is log10 = -infinity.
class Magnitude {
 public:
  constexpr Magnitude() = default;

  static constexpr Magnitude zero() { return Magnitude(-std::numeric_limits<double>::infinity()); }
  static constexpr Magnitude one() { return Magnitude(0.0); }
  static Magnitude from_log10(double log10_value);
  static Magnitude from_double(double value);
  // 10^exponent for integer exponents; the literal form "10^k".
  static Magnitude power_of_ten(double exponent) { return from_log10(exponent); }

  constexpr double log10() const noexcept { return log10_; }
  constexpr bool is_zero() const noexcept { return log10_ == -std::numeric_limits<double>::infinity(); }
  // May overflow to +inf or underflow to 0 for astronomical values.
  double to_double() const;

  Magnitude& operator*=(const Magnitude& rhs);
  Magnitude& operator/=(const Magnitude& rhs);
  friend Magnitude operator*(Magnitude a, const Magnitude& b) { return a *= b; }
  friend Magnitude operator/(Magnitude a, const Magnitude& b) { return a /= b; }

  friend constexpr bool operator==(const Magnitude& a, const Magnitude& b) { return a.log10_ == b.log10_; }
  friend constexpr auto operator<=>(const Magnitude& a, const Magnitude& b) { return a.log10_ <=> b.log10_; }

  // Four significant digits; scientific notation outside [1e-4, 1e6).
  std::string to_string(int significant_digits = 4) const;

 private:
  constexpr explicit Magnitude(double log10_value) : log10_(log10_value) {}

  double log10_ = -std::numeric_limits<double>::infinity();
};

// 10^a + 10^b via max + log10(1 + 10^(min - max)).
Magnitude mag_add(const Magnitude& a, const Magnitude& b);

// 10^a - 10^b; requires a >= b (DomainError otherwise).
Magnitude mag_sub(const Magnitude& a, const Magnitude& b);

Magnitude mag_sum(std::span<const Magnitude> values);

// Explicit conversion from the exact representation.
Magnitude to_magnitude(const ExactProb& value);

// Weights rescaled to probabilities summing to one. Throws
// DegenerateEvidenceError when every weight is zero.
std::vector<double> normalize(std::span<const Magnitude> weights);

}  // namespace obsel
