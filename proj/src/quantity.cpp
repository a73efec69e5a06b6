#include "obsel/quantity.hpp"

#include <cmath>
#include <stdexcept>

#include "obsel/errors.hpp"

namespace obsel {
namespace {

[[noreturn]] void mixed_modes() {
  throw std::logic_error("exact and log10 quantities mixed without explicit conversion");
}

}  // namespace

Quantity Quantity::parse(std::string_view text) {
  if (text.starts_with("10^")) {
    const std::string exponent(text.substr(3));
    std::size_t used = 0;
    double k = 0.0;
    try {
      k = std::stod(exponent, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != exponent.size() || !std::isfinite(k)) {
      throw DomainError("invalid power-of-ten literal '" + std::string(text) + "'");
    }
    return Magnitude::power_of_ten(k);
  }
  return ExactProb::parse(text);
}

const ExactProb& Quantity::exact() const {
  if (const auto* e = std::get_if<ExactProb>(&value_)) return *e;
  throw std::logic_error("quantity is not exact");
}

Magnitude Quantity::as_magnitude() const {
  if (const auto* e = std::get_if<ExactProb>(&value_)) return to_magnitude(*e);
  return std::get<Magnitude>(value_);
}

bool Quantity::is_zero() const {
  if (const auto* e = std::get_if<ExactProb>(&value_)) return e->is_zero();
  return std::get<Magnitude>(value_).is_zero();
}

double Quantity::to_double() const {
  if (const auto* e = std::get_if<ExactProb>(&value_)) return e->to_double();
  return std::get<Magnitude>(value_).to_double();
}

std::string Quantity::to_literal() const {
  if (const auto* e = std::get_if<ExactProb>(&value_)) return e->to_string();
  const Magnitude& m = std::get<Magnitude>(value_);
  if (m.is_zero()) return "0";
  double exponent = m.log10();
  if (exponent == std::round(exponent) && std::abs(exponent) < 1e15) {
    return "10^" + std::to_string(static_cast<long long>(exponent));
  }
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "10^%.17g", exponent);
  return buffer;
}

Quantity& Quantity::operator*=(const Quantity& rhs) {
  if (is_exact() != rhs.is_exact()) mixed_modes();
  if (is_exact()) {
    value_ = exact() * rhs.exact();
  } else {
    value_ = as_magnitude() * rhs.as_magnitude();
  }
  return *this;
}

Quantity& Quantity::operator/=(const Quantity& rhs) {
  if (is_exact() != rhs.is_exact()) mixed_modes();
  if (is_exact()) {
    value_ = exact() / rhs.exact();
  } else {
    value_ = as_magnitude() / rhs.as_magnitude();
  }
  return *this;
}

Quantity& Quantity::operator+=(const Quantity& rhs) {
  if (is_exact() != rhs.is_exact()) mixed_modes();
  if (is_exact()) {
    value_ = exact() + rhs.exact();
  } else {
    value_ = mag_add(as_magnitude(), rhs.as_magnitude());
  }
  return *this;
}

bool operator<(const Quantity& a, const Quantity& b) {
  if (a.is_exact() && b.is_exact()) return a.exact() < b.exact();
  return a.as_magnitude() < b.as_magnitude();
}

bool operator==(const Quantity& a, const Quantity& b) {
  if (a.is_exact() && b.is_exact()) return a.exact() == b.exact();
  return a.as_magnitude() == b.as_magnitude();
}

Quantity min(const Quantity& a, const Quantity& b) { return b < a ? b : a; }

std::string to_display(const Quantity& q) {
  if (q.is_exact()) {
    const ExactProb& e = q.exact();
    if (e.is_integer()) return e.to_string();
    return e.to_string() + " (" + to_magnitude(e).to_string(4) + ")";
  }
  return q.to_literal() + " (" + q.as_magnitude().to_string(4) + ")";
}

}  // namespace obsel
