#include "obsel/magnitude.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "obsel/errors.hpp"
#include "obsel/random.hpp"

namespace obsel {
namespace {

constexpr double kLn10 = std::numbers::ln10;
constexpr double kLog10Of2 = 0.30102999566398119521;

double log10_of(const BigInt& value) {
  if (value == 0) return -std::numeric_limits<double>::infinity();
  const unsigned bits = boost::multiprecision::msb(value);
  if (bits < 1000) return std::log10(value.convert_to<double>());
  // Keep the leading 64 bits and account for the rest as a power of two.
  const unsigned shift = bits - 63;
  BigInt top = value >> shift;
  return std::log10(top.convert_to<double>()) + shift * kLog10Of2;
}

}  // namespace

Magnitude Magnitude::from_log10(double log10_value) {
  if (std::isnan(log10_value) || log10_value == std::numeric_limits<double>::infinity()) {
    throw DomainError("magnitude exponent must be finite or -inf");
  }
  return Magnitude(log10_value);
}

Magnitude Magnitude::from_double(double value) {
  if (!(value >= 0.0) || std::isinf(value)) throw DomainError("magnitude requires a finite nonnegative value");
  if (value == 0.0) return zero();
  return Magnitude(std::log10(value));
}

double Magnitude::to_double() const {
  if (is_zero()) return 0.0;
  return std::pow(10.0, log10_);
}

Magnitude& Magnitude::operator*=(const Magnitude& rhs) {
  if (is_zero() || rhs.is_zero()) {
    log10_ = zero().log10_;
  } else {
    log10_ += rhs.log10_;
  }
  return *this;
}

Magnitude& Magnitude::operator/=(const Magnitude& rhs) {
  if (rhs.is_zero()) throw DomainError("magnitude division by zero");
  if (!is_zero()) log10_ -= rhs.log10_;
  return *this;
}

std::string Magnitude::to_string(int significant_digits) const {
  if (is_zero()) return "0";
  if (log10_ >= -4.0 && log10_ < 6.0) {
    return fmt::format("{:.{}g}", to_double(), significant_digits);
  }
  double exponent = std::floor(log10_);
  double mantissa = std::pow(10.0, log10_ - exponent);
  std::string digits = fmt::format("{:.{}f}", mantissa, significant_digits - 1);
  if (digits.starts_with("10")) {
    exponent += 1.0;
    digits = fmt::format("{:.{}f}", 1.0, significant_digits - 1);
  }
  return fmt::format("{}e{:.0f}", digits, exponent);
}

Magnitude mag_add(const Magnitude& a, const Magnitude& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const double hi = std::max(a.log10(), b.log10());
  const double lo = std::min(a.log10(), b.log10());
  return Magnitude::from_log10(hi + std::log1p(std::pow(10.0, lo - hi)) / kLn10);
}

Magnitude mag_sub(const Magnitude& a, const Magnitude& b) {
  if (b > a) throw DomainError("magnitude subtraction would go negative");
  if (b.is_zero()) return a;
  if (a == b) return Magnitude::zero();
  const double d = b.log10() - a.log10();
  return Magnitude::from_log10(a.log10() + std::log1p(-std::pow(10.0, d)) / kLn10);
}

Magnitude mag_sum(std::span<const Magnitude> values) {
  Magnitude top = Magnitude::zero();
  for (const auto& v : values) top = std::max(top, v);
  if (top.is_zero()) return top;
  CompensatedSum sum;
  for (const auto& v : values) {
    if (!v.is_zero()) sum.add(std::pow(10.0, v.log10() - top.log10()));
  }
  return Magnitude::from_log10(top.log10() + std::log10(sum.value()));
}

Magnitude to_magnitude(const ExactProb& value) {
  if (value.is_zero()) return Magnitude::zero();
  return Magnitude::from_log10(log10_of(value.numerator()) - log10_of(value.denominator()));
}

std::vector<double> normalize(std::span<const Magnitude> weights) {
  Magnitude top = Magnitude::zero();
  for (const auto& w : weights) top = std::max(top, w);
  if (top.is_zero()) throw DegenerateEvidenceError("all hypothesis weights are zero");
  std::vector<double> scaled;
  scaled.reserve(weights.size());
  CompensatedSum total;
  for (const auto& w : weights) {
    const double s = w.is_zero() ? 0.0 : std::pow(10.0, w.log10() - top.log10());
    scaled.push_back(s);
    total.add(s);
  }
  const double denom = total.value();
  for (auto& s : scaled) s /= denom;
  return scaled;
}

}  // namespace obsel
