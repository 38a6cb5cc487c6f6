#include "fracseq/order.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "fracseq/errors.hpp"

namespace fracseq {

FractionalOrder::FractionalOrder(double value) : value_(value) {
  if (!std::isfinite(value)) {
    throw InvalidArgument("fractional order must be finite");
  }
  classify();
}

FractionalOrder::FractionalOrder(const Rational& value)
    : value_(to_double(value)), exact_(value) {
  if (!std::isfinite(value_)) {
    throw InvalidArgument("fractional order must be finite");
  }
  classify();
}

FractionalOrder::FractionalOrder(long long numerator, long long denominator)
    : FractionalOrder([&] {
        if (denominator == 0) throw InvalidArgument("zero denominator in fractional order");
        return Rational(numerator, denominator);
      }()) {}

FractionalOrder FractionalOrder::parse(std::string_view text) {
  if (text.empty()) throw InvalidArgument("empty fractional order");
  bool integer_like = text.find_first_not_of("+-0123456789") == std::string_view::npos;
  if (text.find('/') != std::string_view::npos || integer_like) {
    return FractionalOrder(parse_rational(text));
  }
  double value = 0.0;
  auto first = text.data();
  if (text.front() == '+') ++first;
  auto [end, ec] = std::from_chars(first, text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw InvalidArgument("unparseable fractional order: '" + std::string(text) + "'");
  }
  return FractionalOrder(value);
}

const Rational& FractionalOrder::exact() const {
  if (!exact_) {
    throw InvalidArgument("order " + to_string() + " was not supplied as an exact ratio");
  }
  return *exact_;
}

void FractionalOrder::classify() {
  if (exact_) {
    integer_ = boost::multiprecision::denominator(*exact_) == 1;
  } else {
    integer_ = std::floor(value_) == value_;
  }
  gamma_defined_ = !(integer_ && value_ <= -1.0);
  inverse_gamma_defined_ = !(integer_ && value_ >= 1.0);
}

FractionalOrder FractionalOrder::negated() const {
  if (exact_) return FractionalOrder(Rational(-*exact_));
  return FractionalOrder(-value_);
}

std::string FractionalOrder::to_string() const {
  if (exact_) return fracseq::to_string(*exact_);
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value_);
  return std::string(buffer, end);
}

}  // namespace fracseq
