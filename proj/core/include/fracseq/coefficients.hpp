#pragma once

#include <cstddef>
#include <optional>
#include <type_traits>
#include <vector>

#include "fracseq/errors.hpp"
#include "fracseq/order.hpp"
#include "fracseq/rational.hpp"

namespace fracseq {

enum class CoefficientMode { exact, floating };

// Prefix c_0..c_{n-1} of the coefficient sequence of the fractional
// difference operator. `entries` is always populated; `exact_entries` only in
// exact mode, in which case `entries` holds their nearest doubles.
struct CoefficientTable {
  FractionalOrder order;
  CoefficientMode mode = CoefficientMode::floating;
  std::vector<double> entries;
  std::vector<Rational> exact_entries;
  // Smallest j such that |c_i| is nonincreasing for j <= i < n. Empty when the
  // prefix ends on a strict increase.
  std::optional<std::size_t> decay_monotone_from;

  std::size_t size() const { return entries.size(); }
};

// c_0..c_{n-1} via c_0 = 1, c_{i+1} = c_i * (i - order) / (i + 1). T is double
// or Rational; the Rational instantiation needs an exact order.
template <class T>
std::vector<T> coefficient_values(const FractionalOrder& order, std::size_t n) {
  static_assert(std::is_same_v<T, double> || std::is_same_v<T, Rational>);
  std::vector<T> c;
  c.reserve(n);
  if (n == 0) return c;
  c.emplace_back(1);
  if constexpr (std::is_same_v<T, double>) {
    const double a = order.value();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      c.push_back(c[i] * ((static_cast<double>(i) - a) / static_cast<double>(i + 1)));
    }
  } else {
    const Rational& a = order.exact();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      c.push_back(c[i] * (Rational(i) - a) / Rational(i + 1));
    }
  }
  return c;
}

// Throws InvalidArgument for n == 0 or exact mode on a floating order.
CoefficientTable coefficient_prefix(const FractionalOrder& order, std::size_t n,
                                    CoefficientMode mode);

// (-1)^i Gamma(a+1) / (i! Gamma(a-i+1)) through log-gamma magnitudes and
// tracked signs. Zero when a-i+1 is a pole. Throws DomainError when
// Gamma(a+1) itself is undefined.
double coefficient_closed_form(const FractionalOrder& order, std::size_t i);

}  // namespace fracseq
