#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "fracseq/matrix_domain.hpp"
#include "fracseq/matrix_source.hpp"
#include "fracseq/order.hpp"
#include "fracseq/sequence.hpp"

namespace fracseq {

// start:stop:step with stop exclusive.
struct IndexGrid {
  std::size_t start = 0;
  std::size_t stop = 0;
  std::size_t step = 1;

  static IndexGrid parse(std::string_view text);
  std::vector<std::size_t> values() const;
  std::string to_string() const;
};

struct EvaluationOptions {
  std::size_t row_count = 64;
  std::size_t column_bound = 64;
  IndexGrid grid{0, 64, 8};
  std::size_t stabilization_window = 4;
  double tolerance = 1e-8;
  SubsetMethod method = SubsetMethod::exhaustive;
  std::size_t max_subset_rows = kDefaultMaxSubsetRows;
  // Columns [0, sargent_columns) enter the pairwise Sargent defect; 0 means
  // the full column bound.
  std::size_t sargent_columns = 0;
};

enum class CriterionId { T1, T2, T3, T4, T5, T6, T7, LinfDomain, MncC0, MncC, MncL1 };
enum class Verdict { compact, noncompact, inconclusive };

std::string to_string(CriterionId id);
std::string to_string(Verdict verdict);

// Finite-grid realization of a limit in the truncation parameter.
struct LimitGrid {
  std::vector<std::size_t> r_values;
  std::vector<double> values;
  std::size_t stabilization_window = 4;
  double tolerance = 1e-8;

  // The last `stabilization_window` values lie within `tolerance` of each other.
  bool stabilized() const;
  double last() const { return values.empty() ? 0.0 : values.back(); }
};

// Column limit of the transformed matrix estimated from the bottom of the window.
struct AlphaHatEstimate {
  std::size_t k = 0;
  std::vector<double> samples;
  double estimate = 0.0;
  bool converged = false;
};

struct CompactnessReport {
  CriterionId criterion = CriterionId::T1;
  std::string parameter = "r";  // name of the grid parameter ("r" or "m")
  LimitGrid grid;
  double lower_value = 0.0;
  double upper_value = 0.0;
  Verdict verdict = Verdict::inconclusive;
  std::vector<std::string> notes;
  std::size_t row_count = 0;
  std::size_t column_bound = 0;
  Exactness exactness = Exactness::exact;
  std::vector<AlphaHatEstimate> column_limits;
};

// Column limits estimated as the mean of the last `window` samples;
// converged when all of them lie within `tolerance` of that mean.
std::vector<AlphaHatEstimate> estimate_column_limits(const HatMatrixWindow& hat, std::size_t window,
                                                     double tolerance);

// Target c0: s(r) = sup_{r <= n < R} ||hat_n||_q. Criterion T1 for 1 < p < inf, T5 for p = 1.
CompactnessReport mnc_c0(const HatMatrixWindow& hat, const Exponent& p, const EvaluationOptions& options);
CompactnessReport mnc_c0(const MatrixSource& a, const FractionalOrder& order, const Exponent& p,
                         const EvaluationOptions& options);

// Target c: t(r) = sup_{n >= r} ||hat_n - alpha_hat||_q with bounds [t/2, t].
// T2 for 1 < p < inf, T6 for p = 1.
CompactnessReport mnc_c(const HatMatrixWindow& hat, const Exponent& p, const EvaluationOptions& options);
CompactnessReport mnc_c(const MatrixSource& a, const FractionalOrder& order, const Exponent& p,
                        const EvaluationOptions& options);

// Target l1: u(r) = sup over nonempty subsets of rows {r+1, ..., R-1} of the
// l_q norm of their sum, with bounds [u, 4u]. T4.
CompactnessReport mnc_l1(const HatMatrixWindow& hat, const Exponent& p, const EvaluationOptions& options);
CompactnessReport mnc_l1(const MatrixSource& a, const FractionalOrder& order, const Exponent& p,
                         const EvaluationOptions& options);

// Target l_inf, 1 < p < inf: v(r) = sup_n (sum_{r < k < K} |hat_nk|^q)^(1/q).
// T3. Truncates columns, not rows.
CompactnessReport criterion_linf_target(const HatMatrixWindow& hat, const Exponent& p,
                                        const EvaluationOptions& options);
CompactnessReport criterion_linf_target(const MatrixSource& a, const FractionalOrder& order,
                                        const Exponent& p, const EvaluationOptions& options);

// Domain l1, target l_inf: the uniformity defect
//   D(m) = sup_{k1,k2} [ sup_n |hat_{n,k1} - hat_{n,k2}| - sup_{n < m} |hat_{n,k1} - hat_{n,k2}| ]
// over the column window. T7. The grid runs over m.
CompactnessReport sargent_criterion(const HatMatrixWindow& hat, const EvaluationOptions& options);
CompactnessReport sargent_criterion(const MatrixSource& a, const FractionalOrder& order,
                                    const EvaluationOptions& options);

// Domain l_inf, target l_inf: v(r) = sup_n sum_{r < k < K} |hat_nk|.
CompactnessReport criterion_linf_domain(const HatMatrixWindow& hat, const EvaluationOptions& options);
CompactnessReport criterion_linf_domain(const MatrixSource& a, const FractionalOrder& order,
                                        const EvaluationOptions& options);

// Plain-text rendering with aligned columns.
std::string render_table(const CompactnessReport& report);

}  // namespace fracseq
