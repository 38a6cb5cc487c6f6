#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace fracseq {

// Finitely stored part of a matrix row: entries for columns
// [offset, offset + values.size()). Columns outside are zero unless
// has_tail is set, which marks a row cut at the requested column limit.
struct MatrixRow {
  std::size_t offset = 0;
  std::vector<double> values;
  bool has_tail = false;

  std::size_t support_end() const { return offset + values.size(); }
  double at(std::size_t k) const {
    if (k < offset || k >= support_end()) return 0.0;
    return values[k - offset];
  }
};

enum class MatrixKind { dense_window, banded, generator };

// Row-indexed description of an infinite matrix. Copies share immutable
// storage, and row() is safe for concurrent readers.
class MatrixSource {
 public:
  // A row generator receives (n, column_limit) and may stop at column_limit
  // when the row is infinite, setting has_tail.
  using RowFunction = std::function<MatrixRow(std::size_t, std::size_t)>;
  using Params = std::map<std::string, std::vector<double>>;

  // Explicit rows 0..rows.size()-1. With zero_beyond set, every later row is
  // zero; otherwise asking for one is a precondition violation.
  static MatrixSource dense_window(std::vector<std::vector<double>> rows, bool zero_beyond = true);

  // Row n stores columns n-lower .. n+upper (entries at negative columns are
  // ignored). Rows past band_rows.size() are zero.
  static MatrixSource banded(std::size_t lower, std::size_t upper,
                             std::vector<std::vector<double>> band_rows);

  static MatrixSource generator(std::string rule, Params params, RowFunction row,
                                std::optional<std::size_t> row_bound, bool column_decay);

  // Named rules.
  static MatrixSource identity();
  // a_nn = d_n for the listed values; zero rows afterwards.
  static MatrixSource diagonal(std::vector<double> d);
  // a_nn = scale * ratio^n for every n.
  static MatrixSource geometric_diagonal(double scale, double ratio);
  static MatrixSource finite_rows(std::vector<std::vector<double>> rows);
  // a_{n, n+shift} = scale * ratio^n.
  static MatrixSource row_scaled_shift(std::size_t shift, double scale, double ratio);

  // Throws SourceError if a generator fails and PreconditionViolation for
  // rows outside an unbounded dense window.
  MatrixRow row(std::size_t n, std::size_t column_limit) const;

  MatrixKind kind() const { return kind_; }
  const std::string& rule() const { return rule_; }
  const Params& params() const { return params_; }
  std::optional<std::size_t> declared_row_bound() const { return row_bound_; }
  bool declared_column_decay() const { return column_decay_; }

  // Explicit storage for dense-window and banded kinds.
  const std::vector<std::vector<double>>& stored_rows() const;
  std::size_t band_lower() const { return lower_; }
  std::size_t band_upper() const { return upper_; }

 private:
  MatrixSource() = default;

  MatrixKind kind_ = MatrixKind::dense_window;
  std::string rule_;
  Params params_;
  std::shared_ptr<const std::vector<std::vector<double>>> rows_;
  std::size_t lower_ = 0;
  std::size_t upper_ = 0;
  RowFunction generate_;
  std::optional<std::size_t> row_bound_;
  bool column_decay_ = true;
};

}  // namespace fracseq
