#include "fracseq/matrix_domain.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>

#include "fracseq/errors.hpp"

namespace fracseq {

HatMatrixWindow::HatMatrixWindow(std::size_t rows, std::size_t cols, Exactness exactness)
    : rows_(rows), cols_(cols), exactness_(exactness), data_(rows * cols, 0.0) {}

HatMatrixWindow::HatMatrixWindow(const std::vector<std::vector<double>>& rows, Exactness exactness)
    : rows_(rows.size()), cols_(0), exactness_(exactness) {
  for (const auto& r : rows) cols_ = std::max(cols_, r.size());
  data_.assign(rows_ * cols_, 0.0);
  for (std::size_t n = 0; n < rows_; ++n) {
    std::copy(rows[n].begin(), rows[n].end(), data_.begin() + static_cast<std::ptrdiff_t>(n * cols_));
  }
}

HatMatrixWindow hat_matrix(const MatrixSource& a, const FractionalOrder& order,
                           std::size_t row_count, std::size_t column_bound) {
  if (row_count == 0 || column_bound == 0) {
    throw InvalidArgument("hat matrix window needs at least one row and one column");
  }
  std::vector<MatrixRow> rows;
  rows.reserve(row_count);
  std::size_t widest = column_bound;
  bool truncated = false;
  for (std::size_t n = 0; n < row_count; ++n) {
    MatrixRow row = a.row(n, column_bound);
    if (row.has_tail) {
      if (!a.declared_column_decay()) {
        throw PreconditionViolation("row " + std::to_string(n) +
                                    " has infinite support and the source declares no column decay");
      }
      truncated = true;
    }
    if (row.support_end() > column_bound) truncated = true;
    widest = std::max(widest, row.support_end());
    rows.push_back(std::move(row));
  }

  const auto inverse = coefficient_values<double>(order.negated(), widest);
  HatMatrixWindow hat(row_count, column_bound, truncated ? Exactness::truncated : Exactness::exact);
  for (std::size_t n = 0; n < row_count; ++n) {
    const auto values = hat_row<double>(rows[n].values, rows[n].offset, inverse, column_bound);
    std::copy(values.begin(), values.end(), hat.row(n).begin());
  }
  return hat;
}

std::vector<double> apply(const MatrixSource& a, const FiniteSequence& x, std::size_t row_count) {
  std::vector<double> out(row_count, 0.0);
  for (std::size_t n = 0; n < row_count; ++n) {
    const MatrixRow row = a.row(n, x.size());
    if (row.has_tail) {
      throw PreconditionViolation("cannot apply row " + std::to_string(n) + " with infinite support");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < row.values.size(); ++i) {
      acc += row.values[i] * x[static_cast<std::ptrdiff_t>(row.offset + i)];
    }
    out[n] = acc;
  }
  return out;
}

std::vector<double> apply(const HatMatrixWindow& hat, const FiniteSequence& y) {
  std::vector<double> out(hat.rows(), 0.0);
  for (std::size_t n = 0; n < hat.rows(); ++n) {
    double acc = 0.0;
    for (std::size_t k = 0; k < hat.cols(); ++k) acc += hat(n, k) * y[static_cast<std::ptrdiff_t>(k)];
    out[n] = acc;
  }
  return out;
}

MatrixSource pre_inverted(const std::vector<std::vector<double>>& hat_rows,
                          const FractionalOrder& order) {
  std::size_t widest = 1;
  for (const auto& r : hat_rows) widest = std::max(widest, r.size());
  const auto forward = coefficient_values<double>(order, widest);
  std::vector<std::vector<double>> rows;
  rows.reserve(hat_rows.size());
  for (const auto& r : hat_rows) rows.push_back(hat_row<double>(r, 0, forward, r.size()));
  return MatrixSource::dense_window(std::move(rows));
}

double opnorm_to_linf(const HatMatrixWindow& hat, const Exponent& p) {
  double best = 0.0;
  for (std::size_t n = 0; n < hat.rows(); ++n) best = std::max(best, lq_norm(hat.row(n), p.q()));
  return best;
}

double opnorm_to_linf(const MatrixSource& a, const FractionalOrder& order, const Exponent& p,
                      std::size_t row_count, std::size_t column_bound) {
  return opnorm_to_linf(hat_matrix(a, order, row_count, column_bound), p);
}

namespace {

// ||sum of the listed rows||_q, summed in the listed (ascending) order.
double subset_value(const HatMatrixWindow& hat, const std::vector<std::size_t>& subset, double q,
                    std::vector<double>& scratch) {
  scratch.assign(hat.cols(), 0.0);
  for (std::size_t n : subset) {
    auto r = hat.row(n);
    for (std::size_t k = 0; k < r.size(); ++k) scratch[k] += r[k];
  }
  return lq_norm(scratch, q);
}

SubsetSupremum exhaustive_supremum(const HatMatrixWindow& hat,
                                   const std::vector<std::size_t>& candidates, double q) {
  // Depth-first in lexicographic order of the sorted subsets; each prefix
  // sum extends its parent by one row, so every subset is summed in
  // ascending row order and the first maximizer met is the lexicographically
  // smallest.
  SubsetSupremum best{0.0, {}, SubsetMethod::exhaustive};
  bool found = false;
  const std::size_t depth_limit = candidates.size();
  std::vector<std::vector<double>> sums(depth_limit + 1, std::vector<double>(hat.cols(), 0.0));
  std::vector<std::size_t> chosen;
  chosen.reserve(depth_limit);

  std::function<void(std::size_t, std::size_t)> visit = [&](std::size_t next, std::size_t depth) {
    for (std::size_t j = next; j < depth_limit; ++j) {
      auto& s = sums[depth + 1];
      const auto& parent = sums[depth];
      auto r = hat.row(candidates[j]);
      for (std::size_t k = 0; k < s.size(); ++k) s[k] = parent[k] + r[k];
      chosen.push_back(candidates[j]);
      const double value = lq_norm(s, q);
      if (!found || value > best.value) {
        found = true;
        best.value = value;
        best.certificate = chosen;
      }
      visit(j + 1, depth + 1);
      chosen.pop_back();
    }
  };
  visit(0, 0);
  return best;
}

SubsetSupremum greedy_supremum(const HatMatrixWindow& hat,
                               const std::vector<std::size_t>& candidates, double q) {
  SubsetSupremum best{0.0, {}, SubsetMethod::greedy};
  if (candidates.empty()) return best;
  std::vector<double> scratch;
  for (std::size_t n : candidates) {
    const double value = subset_value(hat, {n}, q, scratch);
    if (best.certificate.empty() || value > best.value) {
      best.value = value;
      best.certificate = {n};
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t n : candidates) {
      if (std::binary_search(best.certificate.begin(), best.certificate.end(), n)) continue;
      auto trial = best.certificate;
      trial.insert(std::upper_bound(trial.begin(), trial.end(), n), n);
      const double value = subset_value(hat, trial, q, scratch);
      if (value >= best.value) {
        best.value = value;
        best.certificate = std::move(trial);
        changed = true;
      }
    }
  }
  return best;
}

}  // namespace

SubsetSupremum subset_supremum(const HatMatrixWindow& hat, std::span<const std::size_t> candidates,
                               double q, SubsetMethod method, std::size_t max_rows) {
  std::vector<std::size_t> rows(candidates.begin(), candidates.end());
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  for (std::size_t n : rows) {
    if (n >= hat.rows()) throw InvalidArgument("subset row " + std::to_string(n) + " outside window");
  }
  if (method == SubsetMethod::greedy) return greedy_supremum(hat, rows, q);
  if (rows.size() > max_rows) {
    throw CostGuardRefusal("exhaustive subset enumeration over " + std::to_string(rows.size()) +
                           " rows exceeds the limit of " + std::to_string(max_rows));
  }
  return exhaustive_supremum(hat, rows, q);
}

SubsetSupremum subset_supremum(const HatMatrixWindow& hat, const RowSubsetFamily& family,
                               double q, SubsetMethod method, std::size_t max_rows) {
  std::vector<std::size_t> rows;
  const std::size_t last = std::min(family.m, hat.rows() == 0 ? 0 : hat.rows() - 1);
  for (std::size_t n = family.r + 1; n <= last && hat.rows() > 0; ++n) rows.push_back(n);
  return subset_supremum(hat, rows, q, method, max_rows);
}

SubsetSupremum opnorm_to_l1(const HatMatrixWindow& hat, const Exponent& p, SubsetMethod method,
                            std::size_t max_rows) {
  std::vector<std::size_t> rows(hat.rows());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return subset_supremum(hat, rows, p.q(), method, max_rows);
}

SubsetSupremum opnorm_to_l1(const MatrixSource& a, const FractionalOrder& order,
                            const Exponent& p, std::size_t row_count, std::size_t column_bound,
                            SubsetMethod method, std::size_t max_rows) {
  if (method == SubsetMethod::exhaustive && row_count > max_rows) {
    throw CostGuardRefusal("exhaustive subset enumeration over " + std::to_string(row_count) +
                           " rows exceeds the limit of " + std::to_string(max_rows));
  }
  return opnorm_to_l1(hat_matrix(a, order, row_count, column_bound), p, method, max_rows);
}

}  // namespace fracseq
