#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "fracseq/rational.hpp"

namespace fracseq {

// The exponent of the fractional difference operator. Any finite real is
// accepted; construction records on which side the Gamma-function closed
// form is defined. Coefficients themselves come from the ratio recurrence,
// which is valid for every finite order.
class FractionalOrder {
 public:
  // Floating order. Throws InvalidArgument for NaN or infinities.
  explicit FractionalOrder(double value);
  explicit FractionalOrder(const Rational& value);
  FractionalOrder(long long numerator, long long denominator);

  // Accepts "p/q" and plain integers as exact ratios, anything else as a
  // decimal floating value.
  static FractionalOrder parse(std::string_view text);

  double value() const { return value_; }
  bool is_exact() const { return exact_.has_value(); }
  // Throws InvalidArgument when the order was not supplied as a ratio.
  const Rational& exact() const;

  bool is_integer() const { return integer_; }
  // Gamma(value + 1) is finite, i.e. value is not in {-1, -2, ...}.
  bool gamma_defined() const { return gamma_defined_; }
  // Gamma(-value + 1) is finite, i.e. value is not in {1, 2, ...}.
  bool inverse_gamma_defined() const { return inverse_gamma_defined_; }

  // The order of the inverse operator.
  FractionalOrder negated() const;

  // "1/2", "-3", or the shortest round-trip decimal for floating orders.
  std::string to_string() const;

  friend bool operator==(const FractionalOrder& a, const FractionalOrder& b) {
    return a.value_ == b.value_ && a.exact_ == b.exact_;
  }

 private:
  void classify();

  double value_ = 0.0;
  std::optional<Rational> exact_;
  bool integer_ = false;
  bool gamma_defined_ = true;
  bool inverse_gamma_defined_ = true;
};

}  // namespace fracseq
