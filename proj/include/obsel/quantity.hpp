#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "obsel/exact_prob.hpp"
#include "obsel/magnitude.hpp"

namespace obsel {

// A nonnegative scenario input held either exactly or in log10 form.
//
// Arithmetic between two exact values stays exact and arithmetic between two
// magnitudes stays in log10 form. Mixing the two is a logic error: callers
// decide the evaluation mode up front and convert with as_magnitude().
class Quantity {
 public:
  Quantity() : value_(ExactProb(0)) {}
  Quantity(ExactProb value) : value_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
  Quantity(Magnitude value) : value_(value) {}             // NOLINT(google-explicit-constructor)
  Quantity(std::int64_t value) : value_(ExactProb(value)) {}  // NOLINT(google-explicit-constructor)

  // "10^k" (k any decimal, possibly negative) gives a magnitude; anything
  // ExactProb::parse accepts gives an exact value. Throws DomainError.
  static Quantity parse(std::string_view text);

  bool is_exact() const noexcept { return std::holds_alternative<ExactProb>(value_); }
  const ExactProb& exact() const;
  Magnitude as_magnitude() const;
  // Exact values are converted; magnitudes are returned as-is.
  Quantity to_magnitude_mode() const { return Quantity(as_magnitude()); }

  bool is_zero() const;
  double to_double() const;
  // Exact fraction for exact values, "10^k" for magnitudes.
  std::string to_literal() const;

  Quantity& operator*=(const Quantity& rhs);
  Quantity& operator/=(const Quantity& rhs);
  Quantity& operator+=(const Quantity& rhs);
  friend Quantity operator*(Quantity a, const Quantity& b) { return a *= b; }
  friend Quantity operator/(Quantity a, const Quantity& b) { return a /= b; }
  friend Quantity operator+(Quantity a, const Quantity& b) { return a += b; }

  // Ordering works across modes (by log10 value when modes differ).
  friend bool operator<(const Quantity& a, const Quantity& b);
  friend bool operator==(const Quantity& a, const Quantity& b);

 private:
  std::variant<ExactProb, Magnitude> value_;
};

Quantity min(const Quantity& a, const Quantity& b);

// Human-readable form: "1/3 (0.3333)", "3", or "10^-494 (1.000e-494)".
std::string to_display(const Quantity& q);

}  // namespace obsel
