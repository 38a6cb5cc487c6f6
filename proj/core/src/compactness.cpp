#include "fracseq/compactness.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <sstream>

#include "fracseq/errors.hpp"

namespace fracseq {

IndexGrid IndexGrid::parse(std::string_view text) {
  std::vector<std::size_t> parts;
  std::size_t pos = 0;
  while (true) {
    const std::size_t colon = text.find(':', pos);
    const std::string_view piece = text.substr(pos, colon == std::string_view::npos ? colon : colon - pos);
    std::size_t value = 0;
    auto [end, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
    if (piece.empty() || ec != std::errc() || end != piece.data() + piece.size()) {
      throw InvalidArgument("grid must read start:stop[:step] with nonnegative integers, got '" +
                            std::string(text) + "'");
    }
    parts.push_back(value);
    if (colon == std::string_view::npos) break;
    pos = colon + 1;
  }
  if (parts.size() < 2 || parts.size() > 3) {
    throw InvalidArgument("grid must read start:stop[:step], got '" + std::string(text) + "'");
  }
  IndexGrid grid{parts[0], parts[1], parts.size() == 3 ? parts[2] : 1};
  if (grid.step == 0) throw InvalidArgument("grid step must be positive");
  if (grid.stop <= grid.start) throw InvalidArgument("grid stop must exceed start");
  return grid;
}

std::vector<std::size_t> IndexGrid::values() const {
  std::vector<std::size_t> out;
  if (step == 0) return out;
  for (std::size_t r = start; r < stop; r += step) out.push_back(r);
  return out;
}

std::string IndexGrid::to_string() const {
  return std::to_string(start) + ":" + std::to_string(stop) + ":" + std::to_string(step);
}

std::string to_string(CriterionId id) {
  switch (id) {
    case CriterionId::T1: return "T1";
    case CriterionId::T2: return "T2";
    case CriterionId::T3: return "T3";
    case CriterionId::T4: return "T4";
    case CriterionId::T5: return "T5";
    case CriterionId::T6: return "T6";
    case CriterionId::T7: return "T7";
    case CriterionId::LinfDomain: return "LINF-DOMAIN";
    case CriterionId::MncC0: return "MNC-C0";
    case CriterionId::MncC: return "MNC-C";
    case CriterionId::MncL1: return "MNC-L1";
  }
  return "?";
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::compact: return "compact";
    case Verdict::noncompact: return "noncompact";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

bool LimitGrid::stabilized() const {
  if (stabilization_window == 0 || values.size() < stabilization_window) return false;
  auto first = values.end() - static_cast<std::ptrdiff_t>(stabilization_window);
  auto [lo, hi] = std::minmax_element(first, values.end());
  return *hi - *lo <= tolerance;
}

std::vector<AlphaHatEstimate> estimate_column_limits(const HatMatrixWindow& hat, std::size_t window,
                                                     double tolerance) {
  if (window == 0 || hat.rows() < window) {
    throw InvalidArgument("column limit estimation needs at least " + std::to_string(window) + " rows");
  }
  std::vector<AlphaHatEstimate> out;
  out.reserve(hat.cols());
  for (std::size_t k = 0; k < hat.cols(); ++k) {
    AlphaHatEstimate e;
    e.k = k;
    e.samples.reserve(hat.rows());
    for (std::size_t n = 0; n < hat.rows(); ++n) e.samples.push_back(hat(n, k));
    double sum = 0.0;
    for (std::size_t i = hat.rows() - window; i < hat.rows(); ++i) sum += e.samples[i];
    e.estimate = sum / static_cast<double>(window);
    e.converged = true;
    for (std::size_t i = hat.rows() - window; i < hat.rows(); ++i) {
      if (std::abs(e.samples[i] - e.estimate) > tolerance) e.converged = false;
    }
    out.push_back(std::move(e));
  }
  return out;
}

namespace {

void validate_options(const EvaluationOptions& options) {
  if (!(options.tolerance > 0.0)) throw InvalidArgument("tolerance must be positive");
  if (options.stabilization_window == 0) throw InvalidArgument("stabilization window must be positive");
}

// Grid points must index inside [0, limit]; `inclusive` admits limit itself.
std::vector<std::size_t> grid_points(const EvaluationOptions& options, std::size_t limit,
                                     bool inclusive, const char* what) {
  validate_options(options);
  auto points = options.grid.values();
  points.erase(std::remove_if(points.begin(), points.end(),
                              [&](std::size_t r) { return inclusive ? r > limit : r >= limit; }),
               points.end());
  if (points.size() < options.stabilization_window) {
    throw InvalidArgument(std::string("window too small to populate grid: ") + what + " bound " +
                          std::to_string(limit) + " leaves " + std::to_string(points.size()) +
                          " grid points of " + options.grid.to_string() + ", need at least " +
                          std::to_string(options.stabilization_window));
  }
  return points;
}

CompactnessReport finish(CriterionId id, std::string parameter, std::vector<std::size_t> points,
                         std::vector<double> values, double lower_factor, double upper_factor,
                         const HatMatrixWindow& hat, const EvaluationOptions& options) {
  CompactnessReport report;
  report.criterion = id;
  report.parameter = std::move(parameter);
  report.grid = LimitGrid{std::move(points), std::move(values), options.stabilization_window,
                          options.tolerance};
  report.row_count = hat.rows();
  report.column_bound = hat.cols();
  report.exactness = hat.exactness();

  const double limit = report.grid.last();
  report.lower_value = lower_factor * limit;
  report.upper_value = upper_factor * limit;
  const bool stable = report.grid.stabilized();
  if (stable && report.upper_value < options.tolerance) {
    report.verdict = Verdict::compact;
  } else if (stable && report.lower_value > options.tolerance) {
    report.verdict = Verdict::noncompact;
  } else {
    report.verdict = Verdict::inconclusive;
  }
  if (!stable) {
    report.notes.push_back("grid values did not stabilize within tolerance over the last " +
                           std::to_string(options.stabilization_window) + " points");
  }
  if (hat.exactness() == Exactness::truncated) {
    report.notes.push_back("some source rows extend past the column bound; window rows are truncated");
  }
  return report;
}

HatMatrixWindow window_of(const MatrixSource& a, const FractionalOrder& order,
                          const EvaluationOptions& options) {
  return hat_matrix(a, order, options.row_count, options.column_bound);
}

// Suffix-sup of per-row values evaluated at the grid points.
std::vector<double> suffix_sup(const std::vector<double>& per_row, const std::vector<std::size_t>& points) {
  std::vector<double> tail(per_row.size() + 1, 0.0);
  for (std::size_t n = per_row.size(); n-- > 0;) tail[n] = std::max(tail[n + 1], per_row[n]);
  std::vector<double> out;
  out.reserve(points.size());
  for (std::size_t r : points) out.push_back(tail[std::min(r, per_row.size())]);
  return out;
}

// sup_n of the l_q norm of columns r+1 .. K-1 of row n, for each grid r.
std::vector<double> column_tail_sup(const HatMatrixWindow& hat, double q,
                                    const std::vector<std::size_t>& points) {
  std::vector<double> out;
  out.reserve(points.size());
  for (std::size_t r : points) {
    double best = 0.0;
    for (std::size_t n = 0; n < hat.rows(); ++n) {
      auto row = hat.row(n);
      const std::size_t from = std::min(r + 1, row.size());
      best = std::max(best, lq_norm(row.subspan(from), q));
    }
    out.push_back(best);
  }
  return out;
}

}  // namespace

CompactnessReport mnc_c0(const HatMatrixWindow& hat, const Exponent& p, const EvaluationOptions& options) {
  const auto points = grid_points(options, hat.rows(), false, "row");
  std::vector<double> norms;
  norms.reserve(hat.rows());
  for (std::size_t n = 0; n < hat.rows(); ++n) norms.push_back(lq_norm(hat.row(n), p.q()));
  const CriterionId id = p.is_infinite() ? CriterionId::MncC0
                         : p.p() == 1.0  ? CriterionId::T5
                                         : CriterionId::T1;
  auto report = finish(id, "r", points, suffix_sup(norms, points), 1.0, 1.0, hat, options);
  if (id == CriterionId::MncC0) {
    report.notes.push_back("p = inf lies outside the tabulated classes; reported as the generic estimator");
  }
  return report;
}

CompactnessReport mnc_c0(const MatrixSource& a, const FractionalOrder& order, const Exponent& p,
                         const EvaluationOptions& options) {
  return mnc_c0(window_of(a, order, options), p, options);
}

CompactnessReport mnc_c(const HatMatrixWindow& hat, const Exponent& p, const EvaluationOptions& options) {
  const auto points = grid_points(options, hat.rows(), false, "row");
  auto limits = estimate_column_limits(hat, options.stabilization_window, options.tolerance);
  std::vector<double> distances;
  distances.reserve(hat.rows());
  std::vector<double> centered(hat.cols());
  for (std::size_t n = 0; n < hat.rows(); ++n) {
    auto row = hat.row(n);
    for (std::size_t k = 0; k < hat.cols(); ++k) centered[k] = row[k] - limits[k].estimate;
    distances.push_back(lq_norm(centered, p.q()));
  }
  const CriterionId id = p.is_infinite() ? CriterionId::MncC
                         : p.p() == 1.0  ? CriterionId::T6
                                         : CriterionId::T2;
  auto report = finish(id, "r", points, suffix_sup(distances, points), 0.5, 1.0, hat, options);
  std::size_t unconverged = 0;
  for (const auto& e : limits) unconverged += e.converged ? 0 : 1;
  if (unconverged > 0) {
    report.verdict = Verdict::inconclusive;
    report.notes.push_back(std::to_string(unconverged) +
                           " column limits did not converge over the last rows of the window");
  }
  report.column_limits = std::move(limits);
  return report;
}

CompactnessReport mnc_c(const MatrixSource& a, const FractionalOrder& order, const Exponent& p,
                        const EvaluationOptions& options) {
  return mnc_c(window_of(a, order, options), p, options);
}

CompactnessReport mnc_l1(const HatMatrixWindow& hat, const Exponent& p, const EvaluationOptions& options) {
  const auto points = grid_points(options, hat.rows(), false, "row");
  std::vector<double> values;
  values.reserve(points.size());
  for (std::size_t r : points) {
    const RowSubsetFamily family{r, hat.rows() - 1};
    values.push_back(
        subset_supremum(hat, family, p.q(), options.method, options.max_subset_rows).value);
  }
  const CriterionId id = (p.is_infinite() || p.p() == 1.0) ? CriterionId::MncL1 : CriterionId::T4;
  auto report = finish(id, "r", points, std::move(values), 1.0, 4.0, hat, options);
  if (options.method == SubsetMethod::greedy) {
    report.notes.push_back("greedy subset search: grid values are lower bounds");
  }
  return report;
}

CompactnessReport mnc_l1(const MatrixSource& a, const FractionalOrder& order, const Exponent& p,
                         const EvaluationOptions& options) {
  return mnc_l1(window_of(a, order, options), p, options);
}

CompactnessReport criterion_linf_target(const HatMatrixWindow& hat, const Exponent& p,
                                        const EvaluationOptions& options) {
  if (p.p() <= 1.0 || p.is_infinite()) {
    throw InvalidArgument("the l_inf-target column criterion needs 1 < p < inf; use the Sargent "
                          "criterion for p = 1 and the l_inf-domain criterion for p = inf");
  }
  const auto points = grid_points(options, hat.cols(), false, "column");
  auto report = finish(CriterionId::T3, "r", points, column_tail_sup(hat, p.q(), points), 1.0, 1.0,
                       hat, options);
  if (report.verdict == Verdict::compact) {
    report.notes.push_back("finite window: growth beyond the window cannot be refuted");
  }
  return report;
}

CompactnessReport criterion_linf_target(const MatrixSource& a, const FractionalOrder& order,
                                        const Exponent& p, const EvaluationOptions& options) {
  return criterion_linf_target(window_of(a, order, options), p, options);
}

CompactnessReport sargent_criterion(const HatMatrixWindow& hat, const EvaluationOptions& options) {
  const auto points = grid_points(options, hat.rows(), true, "row");
  const std::size_t columns =
      options.sargent_columns == 0 ? hat.cols() : std::min(options.sargent_columns, hat.cols());
  std::vector<double> defect(points.size(), 0.0);
  for (std::size_t k1 = 0; k1 < columns; ++k1) {
    for (std::size_t k2 = k1 + 1; k2 < columns; ++k2) {
      double full = 0.0;
      for (std::size_t n = 0; n < hat.rows(); ++n) full = std::max(full, std::abs(hat(n, k1) - hat(n, k2)));
      double prefix = 0.0;
      std::size_t n = 0;
      for (std::size_t g = 0; g < points.size(); ++g) {
        for (; n < points[g]; ++n) prefix = std::max(prefix, std::abs(hat(n, k1) - hat(n, k2)));
        defect[g] = std::max(defect[g], full - prefix);
      }
    }
  }
  auto report = finish(CriterionId::T7, "m", points, std::move(defect), 1.0, 1.0, hat, options);
  report.notes.push_back("uniformity taken over column pairs in [0, " + std::to_string(columns) + ")");
  return report;
}

CompactnessReport sargent_criterion(const MatrixSource& a, const FractionalOrder& order,
                                    const EvaluationOptions& options) {
  return sargent_criterion(window_of(a, order, options), options);
}

CompactnessReport criterion_linf_domain(const HatMatrixWindow& hat, const EvaluationOptions& options) {
  const auto points = grid_points(options, hat.cols(), false, "column");
  auto report = finish(CriterionId::LinfDomain, "r", points, column_tail_sup(hat, 1.0, points), 1.0,
                       1.0, hat, options);
  if (report.verdict == Verdict::compact) {
    report.notes.push_back("finite window: growth beyond the window cannot be refuted");
  }
  return report;
}

CompactnessReport criterion_linf_domain(const MatrixSource& a, const FractionalOrder& order,
                                        const EvaluationOptions& options) {
  return criterion_linf_domain(window_of(a, order, options), options);
}

std::string render_table(const CompactnessReport& report) {
  auto number = [](double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", v);
    return std::string(buffer);
  };
  std::ostringstream out;
  out << "criterion  " << to_string(report.criterion) << "\n"
      << "verdict    " << to_string(report.verdict) << "\n"
      << "window     " << report.row_count << " rows x " << report.column_bound << " columns ("
      << (report.exactness == Exactness::exact ? "exact" : "truncated") << ")\n"
      << "bounds     [" << number(report.lower_value) << ", " << number(report.upper_value) << "]\n"
      << "stabilized " << (report.grid.stabilized() ? "yes" : "no") << " (window "
      << report.grid.stabilization_window << ", tolerance " << number(report.grid.tolerance) << ")\n\n";
  std::size_t width = report.parameter.size();
  for (std::size_t r : report.grid.r_values) width = std::max(width, std::to_string(r).size());
  out << std::string(width - report.parameter.size(), ' ') << report.parameter << "  value\n";
  for (std::size_t i = 0; i < report.grid.r_values.size(); ++i) {
    const std::string r = std::to_string(report.grid.r_values[i]);
    out << std::string(width - r.size(), ' ') << r << "  " << number(report.grid.values[i]) << "\n";
  }
  for (const auto& note : report.notes) out << "\nnote: " << note;
  if (!report.notes.empty()) out << "\n";
  return out.str();
}

}  // namespace fracseq
