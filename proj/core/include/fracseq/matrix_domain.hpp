#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "fracseq/coefficients.hpp"
#include "fracseq/matrix_source.hpp"
#include "fracseq/order.hpp"
#include "fracseq/sequence.hpp"

namespace fracseq {

enum class Exactness { exact, truncated };

// Dense rows x cols window of the transformed matrix. `truncated` means some
// source row reaches past the column bound, so window rows are cut prefixes.
class HatMatrixWindow {
 public:
  HatMatrixWindow(std::size_t rows, std::size_t cols, Exactness exactness = Exactness::exact);
  // Rows given directly; shorter rows are zero-padded to the widest one.
  explicit HatMatrixWindow(const std::vector<std::vector<double>>& rows,
                           Exactness exactness = Exactness::exact);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Exactness exactness() const { return exactness_; }

  double operator()(std::size_t n, std::size_t k) const { return data_[n * cols_ + k]; }
  double& operator()(std::size_t n, std::size_t k) { return data_[n * cols_ + k]; }
  std::span<const double> row(std::size_t n) const {
    return {data_.data() + n * cols_, cols_};
  }
  std::span<double> row(std::size_t n) { return {data_.data() + n * cols_, cols_}; }

  friend bool operator==(const HatMatrixWindow&, const HatMatrixWindow&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  Exactness exactness_;
  std::vector<double> data_;
};

// hat_k = sum_{j >= k} c_{j-k} a_j for k < column_bound, where `row` holds a_j
// for j = offset .. offset + row.size() - 1 and `inverse` holds c(-order) at
// least up to the end of that support.
template <class T>
std::vector<T> hat_row(std::span<const T> row, std::size_t offset, const std::vector<T>& inverse,
                       std::size_t column_bound) {
  std::vector<T> out(column_bound, T(0));
  const std::size_t end = offset + row.size();
  for (std::size_t k = 0; k < column_bound && k < end; ++k) {
    T acc(0);
    for (std::size_t j = std::max(k, offset); j < end; ++j) acc += inverse[j - k] * row[j - offset];
    out[k] = acc;
  }
  return out;
}

// Rows [0, row_count) and columns [0, column_bound) of the matrix whose rows
// are the inverse-order transforms of the rows of A, so that Ax = Ây for
// y the forward transform of x.
// Throws PreconditionViolation for an infinite row from a source without a
// column-decay declaration and SourceError if a generator fails.
HatMatrixWindow hat_matrix(const MatrixSource& a, const FractionalOrder& order,
                           std::size_t row_count, std::size_t column_bound);

// (Ax)_n for n < row_count; rows must be finite.
std::vector<double> apply(const MatrixSource& a, const FiniteSequence& x, std::size_t row_count);
// (Ây)_n over the window columns.
std::vector<double> apply(const HatMatrixWindow& hat, const FiniteSequence& y);

// Inverse of hat_matrix on finitely supported rows: returns the dense source
// A whose transformed matrix has the given rows.
MatrixSource pre_inverted(const std::vector<std::vector<double>>& hat_rows,
                          const FractionalOrder& order);

// sup_n ||hat_n||_q over the window. Common operator norm for the targets
// c0, c and l_inf.
double opnorm_to_linf(const HatMatrixWindow& hat, const Exponent& p);
double opnorm_to_linf(const MatrixSource& a, const FractionalOrder& order, const Exponent& p,
                      std::size_t row_count, std::size_t column_bound);

enum class SubsetMethod { exhaustive, greedy };

inline constexpr std::size_t kDefaultMaxSubsetRows = 22;

// Nonempty subsets of the rows {r+1, ..., m}.
struct RowSubsetFamily {
  std::size_t r = 0;
  std::size_t m = 0;
};

struct SubsetSupremum {
  double value = 0.0;
  // Sorted row indices attaining `value`; empty only when no rows qualify.
  std::vector<std::size_t> certificate;
  SubsetMethod method = SubsetMethod::exhaustive;
};

// max over nonempty subsets N of `candidates` of ||sum_{n in N} hat_n||_q.
// Exhaustive enumeration breaks ties towards the lexicographically smallest
// subset and throws CostGuardRefusal above max_rows candidates. Greedy seeds
// with the best single row and adds rows that do not decrease the value; it
// is a lower bound.
SubsetSupremum subset_supremum(const HatMatrixWindow& hat, std::span<const std::size_t> candidates,
                               double q, SubsetMethod method,
                               std::size_t max_rows = kDefaultMaxSubsetRows);
SubsetSupremum subset_supremum(const HatMatrixWindow& hat, const RowSubsetFamily& family,
                               double q, SubsetMethod method,
                               std::size_t max_rows = kDefaultMaxSubsetRows);

// Subset supremum over every window row; ||L_A|| lies between it and four times it.
SubsetSupremum opnorm_to_l1(const HatMatrixWindow& hat, const Exponent& p, SubsetMethod method,
                            std::size_t max_rows = kDefaultMaxSubsetRows);
SubsetSupremum opnorm_to_l1(const MatrixSource& a, const FractionalOrder& order,
                            const Exponent& p, std::size_t row_count, std::size_t column_bound,
                            SubsetMethod method, std::size_t max_rows = kDefaultMaxSubsetRows);

}  // namespace fracseq
