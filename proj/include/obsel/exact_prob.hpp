#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace obsel {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Nonnegative arbitrary-precision rational, always held in lowest terms.
//
// Used for probabilities, observer counts and odds multipliers of finite
// discrete scenarios whose answers must come out as exact fractions.
class ExactProb {
 public:
  ExactProb() = default;
  ExactProb(std::int64_t value);  // NOLINT(google-explicit-constructor)
  ExactProb(std::int64_t numerator, std::int64_t denominator);
  ExactProb(const BigInt& numerator, const BigInt& denominator);
  explicit ExactProb(const BigRational& value);

  // Accepts "a", "a/b", plain decimals such as "0.125" and scientific forms
  // such as "6e10" or "1.6e11", all converted exactly.
  static ExactProb parse(std::string_view text);

  static ExactProb pow(const ExactProb& base, std::uint64_t exponent);

  BigInt numerator() const;
  BigInt denominator() const;
  const BigRational& value() const noexcept { return value_; }

  bool is_zero() const { return value_ == 0; }
  bool is_integer() const { return denominator() == 1; }
  // True when numerator and denominator both fit in a signed 128-bit word.
  bool fits_128_bits() const;

  double to_double() const;
  // "a" when the denominator is 1, otherwise "a/b".
  std::string to_string() const;

  ExactProb& operator+=(const ExactProb& rhs);
  ExactProb& operator-=(const ExactProb& rhs);
  ExactProb& operator*=(const ExactProb& rhs);
  ExactProb& operator/=(const ExactProb& rhs);

  friend ExactProb operator+(ExactProb lhs, const ExactProb& rhs) { return lhs += rhs; }
  friend ExactProb operator-(ExactProb lhs, const ExactProb& rhs) { return lhs -= rhs; }
  friend ExactProb operator*(ExactProb lhs, const ExactProb& rhs) { return lhs *= rhs; }
  friend ExactProb operator/(ExactProb lhs, const ExactProb& rhs) { return lhs /= rhs; }

  friend bool operator==(const ExactProb& a, const ExactProb& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const ExactProb& a, const ExactProb& b);

 private:
  BigRational value_{0};
};

std::ostream& operator<<(std::ostream& os, const ExactProb& p);

}  // namespace obsel
