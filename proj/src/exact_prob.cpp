#include "obsel/exact_prob.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>

#include "obsel/errors.hpp"

namespace obsel {
namespace {

void require_nonnegative(const BigRational& value) {
  if (value < 0) throw DomainError("exact probability must be nonnegative");
}

BigInt parse_digits(std::string_view text) {
  if (text.empty()) throw DomainError("empty integer literal");
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw DomainError("invalid digit in '" + std::string(text) + "'");
    }
  }
  // Leading zeros would make boost read the digits as octal.
  const auto first = std::min(text.find_first_not_of('0'), text.size() - 1);
  return BigInt(std::string(text.substr(first)));
}

BigInt power_of_ten(std::size_t exponent) {
  BigInt result = 1;
  for (std::size_t i = 0; i < exponent; ++i) result *= 10;
  return result;
}

}  // namespace

ExactProb::ExactProb(std::int64_t value) : value_(value) { require_nonnegative(value_); }

ExactProb::ExactProb(std::int64_t numerator, std::int64_t denominator)
    : ExactProb(BigInt(numerator), BigInt(denominator)) {}

ExactProb::ExactProb(const BigInt& numerator, const BigInt& denominator) {
  if (denominator == 0) throw DomainError("zero denominator");
  value_ = BigRational(numerator, denominator);
  require_nonnegative(value_);
}

ExactProb::ExactProb(const BigRational& value) : value_(value) { require_nonnegative(value_); }

ExactProb ExactProb::parse(std::string_view text) {
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp = text.substr(e + 1);
    bool negative = false;
    if (!exp.empty() && (exp[0] == '+' || exp[0] == '-')) {
      negative = exp[0] == '-';
      exp.remove_prefix(1);
    }
    if (exp.empty() || exp.size() > 4) throw DomainError("invalid exponent in '" + std::string(text) + "'");
    const auto k = static_cast<std::size_t>(parse_digits(exp));
    const ExactProb mantissa = parse(text.substr(0, e));
    const ExactProb scale(power_of_ten(k), BigInt(1));
    return negative ? mantissa / scale : mantissa * scale;
  }
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return ExactProb(parse_digits(text.substr(0, slash)), parse_digits(text.substr(slash + 1)));
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (whole.empty() && frac.empty()) throw DomainError("invalid decimal literal");
    BigInt w = whole.empty() ? BigInt(0) : parse_digits(whole);
    BigInt f = frac.empty() ? BigInt(0) : parse_digits(frac);
    BigInt scale = power_of_ten(frac.size());
    return ExactProb(w * scale + f, scale);
  }
  return ExactProb(parse_digits(text), BigInt(1));
}

ExactProb ExactProb::pow(const ExactProb& base, std::uint64_t exponent) {
  ExactProb result(1);
  ExactProb square = base;
  while (exponent > 0) {
    if (exponent & 1u) result *= square;
    exponent >>= 1u;
    if (exponent > 0) square *= square;
  }
  return result;
}

BigInt ExactProb::numerator() const { return boost::multiprecision::numerator(value_); }
BigInt ExactProb::denominator() const { return boost::multiprecision::denominator(value_); }

bool ExactProb::fits_128_bits() const {
  auto fits = [](const BigInt& v) { return v == 0 || boost::multiprecision::msb(v) < 127; };
  return fits(numerator()) && fits(denominator());
}

double ExactProb::to_double() const { return value_.convert_to<double>(); }

std::string ExactProb::to_string() const {
  if (is_integer()) return numerator().str();
  return numerator().str() + "/" + denominator().str();
}

ExactProb& ExactProb::operator+=(const ExactProb& rhs) {
  value_ += rhs.value_;
  return *this;
}

ExactProb& ExactProb::operator-=(const ExactProb& rhs) {
  if (rhs.value_ > value_) throw DomainError("exact subtraction would go negative");
  value_ -= rhs.value_;
  return *this;
}

ExactProb& ExactProb::operator*=(const ExactProb& rhs) {
  value_ *= rhs.value_;
  return *this;
}

ExactProb& ExactProb::operator/=(const ExactProb& rhs) {
  if (rhs.is_zero()) throw DomainError("division by zero");
  value_ /= rhs.value_;
  return *this;
}

std::strong_ordering operator<=>(const ExactProb& a, const ExactProb& b) {
  if (a.value_ < b.value_) return std::strong_ordering::less;
  if (a.value_ > b.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const ExactProb& p) { return os << p.to_string(); }

}  // namespace obsel
