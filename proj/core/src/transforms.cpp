#include "fracseq/transforms.hpp"

#include <algorithm>
#include <cmath>

namespace fracseq {
namespace {

// Emits y_0, y_1, ... of the forward transform, growing the coefficient
// table on demand.
class TransformStream {
 public:
  TransformStream(const FiniteSequence& x, const FractionalOrder& order)
      : x_(x.entries()), order_(order.value()) {
    c_.push_back(1.0);
  }

  double next() {
    const std::size_t k = index_++;
    while (c_.size() <= k) {
      const std::size_t i = c_.size() - 1;
      c_.push_back(c_[i] * ((static_cast<double>(i) - order_) / static_cast<double>(i + 1)));
    }
    const std::size_t support = x_.size();
    const std::size_t first = k + 1 > support ? k + 1 - support : 0;
    double acc = 0.0;
    for (std::size_t i = first; i <= k; ++i) acc += c_[i] * x_[k - i];
    return acc;
  }

 private:
  std::span<const double> x_;
  double order_;
  std::vector<double> c_;
  std::size_t index_ = 0;
};

// Running p-th power sum (or running max for p = inf).
struct PowerSum {
  explicit PowerSum(const Exponent& p) : p(p) {}

  // Returns the relative increment contributed by y.
  double add(double y) {
    const double before = total;
    if (p.is_infinite()) {
      total = std::max(total, std::abs(y));
    } else if (p.p() == 1.0) {
      total += std::abs(y);
    } else {
      total += std::pow(std::abs(y), p.p());
    }
    return total > 0.0 ? (total - before) / total : 0.0;
  }

  double root() const {
    if (p.is_infinite() || p.p() == 1.0) return total;
    return std::pow(total, 1.0 / p.p());
  }

  Exponent p;
  double total = 0.0;
};

std::size_t support_end(const FiniteSequence& x) {
  auto e = x.entries();
  std::size_t n = e.size();
  while (n > 0 && e[n - 1] == 0.0) --n;
  return n;
}

}  // namespace

NormResult space_norm(const FiniteSequence& x, const FractionalOrder& order, const Exponent& p,
                      const TruncationOptions& options) {
  if (!(options.tolerance > 0.0)) throw InvalidArgument("tolerance must be positive");
  if (options.max_terms == 0) throw InvalidArgument("max_terms must be at least 1");
  if (options.window == 0) throw InvalidArgument("stabilization window must be at least 1");

  NormResult result;
  result.report.tolerance = options.tolerance;
  const std::size_t support = support_end(x);
  if (support == 0) return result;

  TransformStream stream(x, order);
  PowerSum sum(p);
  std::vector<double> recent;  // relative increments past the support
  std::size_t quiet = 0;
  std::size_t n = 0;
  bool stable = false;
  while (n < options.max_terms) {
    const double increment = sum.add(stream.next());
    ++n;
    if (n <= support) continue;
    recent.push_back(increment);
    quiet = increment < options.tolerance ? quiet + 1 : 0;
    if (quiet >= options.window) {
      stable = true;
      break;
    }
  }

  result.value = sum.root();
  result.report.terms_used = n;
  result.report.tail_flagged = !stable;
  const std::size_t tail = std::min(recent.size(), options.window);
  result.report.tail_estimate =
      tail == 0 ? 0.0 : *std::max_element(recent.end() - static_cast<std::ptrdiff_t>(tail), recent.end());
  return result;
}

double space_norm_fixed(const FiniteSequence& x, const FractionalOrder& order,
                        const Exponent& p, std::size_t terms) {
  TransformStream stream(x, order);
  PowerSum sum(p);
  for (std::size_t n = 0; n < terms; ++n) sum.add(stream.next());
  return sum.root();
}

std::vector<double> norm_partial_sums(const FiniteSequence& x, const FractionalOrder& order,
                                      const Exponent& p, std::size_t terms) {
  TransformStream stream(x, order);
  PowerSum sum(p);
  std::vector<double> partial;
  partial.reserve(terms);
  for (std::size_t n = 0; n < terms; ++n) {
    sum.add(stream.next());
    partial.push_back(sum.total);
  }
  return partial;
}

double dual_norm(const FiniteSequence& a, const FractionalOrder& order, const Exponent& p) {
  // abar is accumulated on the fly rather than materialized.
  const std::size_t n = a.size();
  const auto c = coefficient_values<double>(order.negated(), n);
  const auto as = a.entries();
  const double q = p.q();
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double abar = 0.0;
    for (std::size_t i = k; i < n; ++i) abar += c[i - k] * as[i];
    if (q == Exponent::kInfinity) {
      total = std::max(total, std::abs(abar));
    } else if (q == 1.0) {
      total += std::abs(abar);
    } else {
      total += std::pow(std::abs(abar), q);
    }
  }
  if (q == Exponent::kInfinity || q == 1.0) return total;
  return std::pow(total, 1.0 / q);
}

}  // namespace fracseq
