#include "fracseq/coefficients.hpp"

#include <cmath>
#include <math.h>

namespace fracseq {
namespace {

std::optional<std::size_t> monotone_decay_start(const std::vector<double>& c) {
  if (c.size() < 2) return c.empty() ? std::nullopt : std::optional<std::size_t>(0);
  std::size_t j = c.size() - 1;
  while (j > 0 && std::abs(c[j]) <= std::abs(c[j - 1])) --j;
  if (j == c.size() - 1) return std::nullopt;
  return j;
}

bool is_nonpositive_integer(double x) { return x <= 0.0 && std::floor(x) == x; }

// log|Gamma(x)| and sign(Gamma(x)); lgamma_r keeps the sign out of the
// global signgam.
double log_abs_gamma(double x, int& sign) { return ::lgamma_r(x, &sign); }

}  // namespace

CoefficientTable coefficient_prefix(const FractionalOrder& order, std::size_t n,
                                    CoefficientMode mode) {
  if (n == 0) throw InvalidArgument("coefficient prefix length must be at least 1");
  CoefficientTable table{order, mode, {}, {}, std::nullopt};
  if (mode == CoefficientMode::exact) {
    table.exact_entries = coefficient_values<Rational>(order, n);
    table.entries.reserve(n);
    for (const auto& c : table.exact_entries) table.entries.push_back(to_double(c));
  } else {
    table.entries = coefficient_values<double>(order, n);
  }
  table.decay_monotone_from = monotone_decay_start(table.entries);
  return table;
}

double coefficient_closed_form(const FractionalOrder& order, std::size_t i) {
  if (!order.gamma_defined()) {
    throw DomainError("Gamma(order + 1) is undefined for order " + order.to_string());
  }
  const double a = order.value();
  const double tail_arg = a - static_cast<double>(i) + 1.0;
  if (is_nonpositive_integer(tail_arg)) return 0.0;

  int head_sign = 1;
  int tail_sign = 1;
  const double log_head = log_abs_gamma(a + 1.0, head_sign);
  const double log_tail = log_abs_gamma(tail_arg, tail_sign);
  int factorial_sign = 1;
  const double log_factorial = log_abs_gamma(static_cast<double>(i) + 1.0, factorial_sign);
  const double magnitude = std::exp(log_head - log_factorial - log_tail);
  const int parity = (i % 2 == 0) ? 1 : -1;
  return parity * head_sign * tail_sign * magnitude;
}

}  // namespace fracseq
