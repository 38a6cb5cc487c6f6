#include "fracseq/matrix_source.hpp"

#include <cmath>
#include <utility>

#include "fracseq/errors.hpp"

namespace fracseq {
namespace {

void require_finite(const std::vector<std::vector<double>>& rows) {
  for (std::size_t n = 0; n < rows.size(); ++n) {
    for (std::size_t k = 0; k < rows[n].size(); ++k) {
      if (!std::isfinite(rows[n][k])) {
        throw InvalidArgument("matrix entry (" + std::to_string(n) + ", " + std::to_string(k) +
                              ") is not finite");
      }
    }
  }
}

}  // namespace

MatrixSource MatrixSource::dense_window(std::vector<std::vector<double>> rows, bool zero_beyond) {
  require_finite(rows);
  MatrixSource source;
  source.kind_ = MatrixKind::dense_window;
  if (zero_beyond) source.row_bound_ = rows.size();
  source.rows_ = std::make_shared<const std::vector<std::vector<double>>>(std::move(rows));
  return source;
}

MatrixSource MatrixSource::banded(std::size_t lower, std::size_t upper,
                                  std::vector<std::vector<double>> band_rows) {
  require_finite(band_rows);
  for (std::size_t n = 0; n < band_rows.size(); ++n) {
    if (band_rows[n].size() > lower + upper + 1) {
      throw InvalidArgument("band row " + std::to_string(n) + " is wider than lower + upper + 1");
    }
  }
  MatrixSource source;
  source.kind_ = MatrixKind::banded;
  source.lower_ = lower;
  source.upper_ = upper;
  source.row_bound_ = band_rows.size();
  source.rows_ = std::make_shared<const std::vector<std::vector<double>>>(std::move(band_rows));
  return source;
}

MatrixSource MatrixSource::generator(std::string rule, Params params, RowFunction row,
                                     std::optional<std::size_t> row_bound, bool column_decay) {
  if (!row) throw InvalidArgument("generator rule '" + rule + "' has no row function");
  MatrixSource source;
  source.kind_ = MatrixKind::generator;
  source.rule_ = std::move(rule);
  source.params_ = std::move(params);
  source.generate_ = std::move(row);
  source.row_bound_ = row_bound;
  source.column_decay_ = column_decay;
  return source;
}

MatrixSource MatrixSource::identity() {
  return generator(
      "identity", {}, [](std::size_t n, std::size_t) { return MatrixRow{n, {1.0}, false}; },
      std::nullopt, true);
}

MatrixSource MatrixSource::diagonal(std::vector<double> d) {
  for (double v : d) {
    if (!std::isfinite(v)) throw InvalidArgument("diagonal entry is not finite");
  }
  auto values = std::make_shared<const std::vector<double>>(d);
  const std::size_t bound = d.size();
  return generator(
      "diagonal", {{"values", std::move(d)}},
      [values](std::size_t n, std::size_t) {
        if (n >= values->size()) return MatrixRow{};
        return MatrixRow{n, {(*values)[n]}, false};
      },
      bound, true);
}

MatrixSource MatrixSource::geometric_diagonal(double scale, double ratio) {
  return generator(
      "diagonal", {{"scale", {scale}}, {"ratio", {ratio}}},
      [scale, ratio](std::size_t n, std::size_t) {
        return MatrixRow{n, {scale * std::pow(ratio, static_cast<double>(n))}, false};
      },
      std::nullopt, true);
}

MatrixSource MatrixSource::finite_rows(std::vector<std::vector<double>> rows) {
  require_finite(rows);
  const std::size_t bound = rows.size();
  auto stored = std::make_shared<const std::vector<std::vector<double>>>(std::move(rows));
  MatrixSource source = generator(
      "finite-rows", {},
      [stored](std::size_t n, std::size_t) {
        if (n >= stored->size()) return MatrixRow{};
        return MatrixRow{0, (*stored)[n], false};
      },
      bound, true);
  source.rows_ = stored;
  return source;
}

MatrixSource MatrixSource::row_scaled_shift(std::size_t shift, double scale, double ratio) {
  return generator(
      "row-scaled-shift",
      {{"shift", {static_cast<double>(shift)}}, {"scale", {scale}}, {"ratio", {ratio}}},
      [shift, scale, ratio](std::size_t n, std::size_t) {
        return MatrixRow{n + shift, {scale * std::pow(ratio, static_cast<double>(n))}, false};
      },
      std::nullopt, true);
}

MatrixRow MatrixSource::row(std::size_t n, std::size_t column_limit) const {
  switch (kind_) {
    case MatrixKind::dense_window: {
      if (n < rows_->size()) return MatrixRow{0, (*rows_)[n], false};
      if (row_bound_) return MatrixRow{};
      throw PreconditionViolation("row " + std::to_string(n) +
                                  " lies outside a dense window without a declared row bound");
    }
    case MatrixKind::banded: {
      if (n >= rows_->size()) return MatrixRow{};
      const auto& band = (*rows_)[n];
      // Drop the part of the band that falls left of column 0.
      const std::size_t skip = n >= lower_ ? 0 : lower_ - n;
      MatrixRow row;
      row.offset = n >= lower_ ? n - lower_ : 0;
      if (skip < band.size()) row.values.assign(band.begin() + static_cast<std::ptrdiff_t>(skip), band.end());
      return row;
    }
    case MatrixKind::generator: {
      if (row_bound_ && n >= *row_bound_) return MatrixRow{};
      try {
        MatrixRow row = generate_(n, column_limit);
        for (double v : row.values) {
          if (!std::isfinite(v)) throw SourceError("non-finite entry");
        }
        return row;
      } catch (const SourceError& e) {
        throw SourceError("generator '" + rule_ + "' failed on row " + std::to_string(n) + ": " +
                          e.what());
      } catch (const std::exception& e) {
        throw SourceError("generator '" + rule_ + "' failed on row " + std::to_string(n) + ": " +
                          e.what());
      }
    }
  }
  return MatrixRow{};
}

const std::vector<std::vector<double>>& MatrixSource::stored_rows() const {
  if (!rows_) throw InvalidArgument("source '" + rule_ + "' has no stored rows");
  return *rows_;
}

}  // namespace fracseq
