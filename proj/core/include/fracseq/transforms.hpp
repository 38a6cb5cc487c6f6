#pragma once

#include <cstddef>
#include <vector>

#include "fracseq/coefficients.hpp"
#include "fracseq/order.hpp"
#include "fracseq/sequence.hpp"

namespace fracseq {

namespace detail {

// out_k = sum_{i=0}^{k} c_i x_{k-i} for k < length.
template <class T>
BasicSequence<T> causal_convolution(const BasicSequence<T>& x, const std::vector<T>& c,
                                    std::size_t length) {
  std::vector<T> out(length, T(0));
  const std::size_t support = x.size();
  auto xs = x.entries();
  for (std::size_t k = 0; k < length; ++k) {
    T acc(0);
    const std::size_t first = k + 1 > support ? k + 1 - support : 0;
    for (std::size_t i = first; i <= k; ++i) acc += c[i] * xs[k - i];
    out[k] = acc;
  }
  return BasicSequence<T>(std::move(out));
}

inline void require_length(std::size_t length) {
  if (length == 0) throw InvalidArgument("transform length must be at least 1");
}

}  // namespace detail

// y_k = sum_{i<=k} c_i(order) x_{k-i}, k < length.
template <class T>
BasicSequence<T> forward_transform(const BasicSequence<T>& x, const FractionalOrder& order,
                                   std::size_t length) {
  detail::require_length(length);
  return detail::causal_convolution(x, coefficient_values<T>(order, length), length);
}

// x_k = sum_{i<=k} c_i(-order) y_{k-i}, k < length.
template <class T>
BasicSequence<T> inverse_transform(const BasicSequence<T>& y, const FractionalOrder& order,
                                   std::size_t length) {
  detail::require_length(length);
  return detail::causal_convolution(y, coefficient_values<T>(order.negated(), length), length);
}

// abar_k = sum_{i=k}^{N-1} c_{i-k}(-order) a_i for a supported in [0, N).
// Satisfies sum a_k x_k = sum abar_k y_k whenever y is the forward transform of x.
template <class T>
BasicSequence<T> beta_dual_transform(const BasicSequence<T>& a, const FractionalOrder& order) {
  const std::size_t n = a.size();
  const auto c = coefficient_values<T>(order.negated(), n);
  auto as = a.entries();
  std::vector<T> out(n, T(0));
  for (std::size_t k = 0; k < n; ++k) {
    T acc(0);
    for (std::size_t i = k; i < n; ++i) acc += c[i - k] * as[i];
    out[k] = acc;
  }
  return BasicSequence<T>(std::move(out));
}

struct TruncationReport {
  std::size_t terms_used = 0;
  bool tail_flagged = false;
  double tail_estimate = 0.0;
  double tolerance = 0.0;
};

struct NormResult {
  double value = 0.0;
  TruncationReport report;
};

struct TruncationOptions {
  double tolerance = 1e-12;
  std::size_t max_terms = 1'000'000;
  // Consecutive below-tolerance relative increments required past the support.
  std::size_t window = 16;
};

// Norm of x in the fractional difference space of exponent p: the l_p norm
// of the forward transform, extended term by term until the relative
// increment of the p-th power partial sum stays below tolerance for
// `window` consecutive indices past the support of x. Hitting max_terms
// first returns the partial value with tail_flagged set.
NormResult space_norm(const FiniteSequence& x, const FractionalOrder& order, const Exponent& p,
                      const TruncationOptions& options = {});

// Same norm over exactly `terms` transformed entries.
double space_norm_fixed(const FiniteSequence& x, const FractionalOrder& order,
                        const Exponent& p, std::size_t terms);

// p-th power partial sums S_0..S_{terms-1} of |y_n|^p (running max for p = inf).
std::vector<double> norm_partial_sums(const FiniteSequence& x, const FractionalOrder& order,
                                      const Exponent& p, std::size_t terms);

// Dual norm of a on the fractional difference space: the l_q norm of its
// beta-dual transform, where q is conjugate to p.
double dual_norm(const FiniteSequence& a, const FractionalOrder& order, const Exponent& p);

}  // namespace fracseq
