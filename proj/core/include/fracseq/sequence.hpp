#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "fracseq/errors.hpp"
#include "fracseq/rational.hpp"

namespace fracseq {

// A sequence indexed from 0 whose support lies in [0, size()). Reads outside
// that range, including negative indices, yield zero.
template <class T>
class BasicSequence {
 public:
  BasicSequence() = default;
  explicit BasicSequence(std::vector<T> entries) : entries_(std::move(entries)) {
    if constexpr (std::is_floating_point_v<T>) {
      for (std::size_t k = 0; k < entries_.size(); ++k) {
        if (!std::isfinite(entries_[k])) {
          throw InvalidArgument("sequence entry " + std::to_string(k) + " is not finite");
        }
      }
    }
  }

  // The unit sequence e^(k).
  static BasicSequence unit(std::size_t k) {
    std::vector<T> e(k + 1, T(0));
    e[k] = T(1);
    return BasicSequence(std::move(e));
  }

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  T operator[](std::ptrdiff_t k) const {
    if (k < 0 || static_cast<std::size_t>(k) >= entries_.size()) return T(0);
    return entries_[static_cast<std::size_t>(k)];
  }

  std::span<const T> entries() const { return entries_; }

  bool is_zero() const {
    for (const auto& v : entries_) {
      if (v != T(0)) return false;
    }
    return true;
  }

  friend bool operator==(const BasicSequence&, const BasicSequence&) = default;

 private:
  std::vector<T> entries_;
};

using FiniteSequence = BasicSequence<double>;
using ExactSequence = BasicSequence<Rational>;

// Summability exponent p in [1, inf] together with its conjugate q.
class Exponent {
 public:
  static constexpr double kInfinity = std::numeric_limits<double>::infinity();

  // Throws InvalidArgument unless p >= 1 (infinity allowed).
  explicit Exponent(double p);
  static Exponent infinity() { return Exponent(kInfinity); }
  // "inf", integers, decimals and "a/b" ratios.
  static Exponent parse(std::string_view text);

  double p() const { return p_; }
  double q() const { return q_; }
  bool is_infinite() const { return p_ == kInfinity; }
  Exponent conjugate() const { return Exponent(q_); }
  std::string to_string() const;

  friend bool operator==(const Exponent&, const Exponent&) = default;

 private:
  double p_;
  double q_;
};

// (sum |v_k|^r)^(1/r), or max |v_k| for r = inf. Summation runs in index order.
double lq_norm(std::span<const double> values, double r);

}  // namespace fracseq
