#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "fracseq/compactness.hpp"

namespace fracseq {
namespace {

using Rows = std::vector<std::vector<double>>;

Rows identity_rows(std::size_t rows, std::size_t cols) {
  Rows out(rows, std::vector<double>(cols, 0.0));
  for (std::size_t n = 0; n < std::min(rows, cols); ++n) out[n][n] = 1.0;
  return out;
}

Rows geometric_diagonal_rows(std::size_t rows, std::size_t cols) {
  Rows out(rows, std::vector<double>(cols, 0.0));
  for (std::size_t n = 0; n < std::min(rows, cols); ++n) out[n][n] = std::ldexp(1.0, -static_cast<int>(n));
  return out;
}

// Four nonzero rows with finite support, zero below.
Rows finite_rank_rows(std::size_t rows, std::size_t cols) {
  Rows out(rows, std::vector<double>(cols, 0.0));
  out[0][0] = 1.0;
  out[1][0] = -0.5;
  out[1][2] = 2.0;
  out[2][3] = 0.25;
  out[3][1] = 1.5;
  out[3][5] = -1.0;
  return out;
}

EvaluationOptions options_for(std::size_t rows, std::size_t cols, IndexGrid grid) {
  EvaluationOptions options;
  options.row_count = rows;
  options.column_bound = cols;
  options.grid = grid;
  return options;
}

void expect_nonincreasing(const CompactnessReport& report) {
  for (std::size_t i = 1; i < report.grid.values.size(); ++i) {
    EXPECT_LE(report.grid.values[i], report.grid.values[i - 1]) << to_string(report.criterion) << " i=" << i;
  }
}

TEST(MncC0, FiniteRankIsCompact) {
  const FractionalOrder order(1, 2);
  auto options = options_for(48, 40, {0, 40, 2});
  auto report = mnc_c0(pre_inverted(finite_rank_rows(48, 40), order), order, Exponent(2.0), options);
  EXPECT_EQ(report.criterion, CriterionId::T1);
  EXPECT_EQ(report.verdict, Verdict::compact);
  for (std::size_t i = 0; i < report.grid.r_values.size(); ++i) {
    if (report.grid.r_values[i] >= 4) EXPECT_LT(report.grid.values[i], 1e-12);
  }
}

TEST(MncC0, IdentityHatIsNoncompact) {
  const FractionalOrder order(1, 2);
  auto options = options_for(40, 40, {0, 40, 2});
  auto report = mnc_c0(pre_inverted(identity_rows(40, 40), order), order, Exponent(2.0), options);
  EXPECT_EQ(report.verdict, Verdict::noncompact);
  EXPECT_NEAR(report.lower_value, 1.0, 1e-12);
  EXPECT_EQ(report.lower_value, report.upper_value);
}

TEST(MncC0, GeometricRowsMatchClosedForm) {
  auto options = options_for(48, 48, {0, 48, 2});
  auto report = mnc_c0(HatMatrixWindow(geometric_diagonal_rows(48, 48)), Exponent(2.0), options);
  EXPECT_EQ(report.verdict, Verdict::compact);
  for (std::size_t i = 0; i < report.grid.r_values.size(); ++i) {
    EXPECT_NEAR(report.grid.values[i], std::pow(2.0, -double(report.grid.r_values[i])), 1e-8);
  }
  expect_nonincreasing(report);
}

TEST(MncC0, CriterionIdFollowsExponent) {
  HatMatrixWindow hat(finite_rank_rows(16, 16));
  auto options = options_for(16, 16, {0, 16, 2});
  EXPECT_EQ(mnc_c0(hat, Exponent(1.0), options).criterion, CriterionId::T5);
  EXPECT_EQ(mnc_c0(hat, Exponent::infinity(), options).criterion, CriterionId::MncC0);
}

TEST(MncC0, GridMustFitWindow) {
  HatMatrixWindow hat(finite_rank_rows(8, 8));
  EXPECT_THROW(mnc_c0(hat, Exponent(2.0), options_for(8, 8, {0, 64, 8})), InvalidArgument);
  auto bad = options_for(8, 8, {0, 8, 1});
  bad.tolerance = 0.0;
  EXPECT_THROW(mnc_c0(hat, Exponent(2.0), bad), InvalidArgument);
}

TEST(MncC, ConstantRowsAreCompact) {
  Rows rows(32, std::vector<double>{0.5, -1.0, 0.25, 0.0});
  auto report = mnc_c(HatMatrixWindow(rows), Exponent(2.0), options_for(32, 4, {0, 32, 2}));
  EXPECT_EQ(report.verdict, Verdict::compact);
  EXPECT_EQ(report.upper_value, 0.0);
  ASSERT_EQ(report.column_limits.size(), 4u);
  EXPECT_EQ(report.column_limits[1].estimate, -1.0);
  EXPECT_TRUE(report.column_limits[1].converged);
}

TEST(MncC, IdentityHasHalfToOneBounds) {
  // Rows past the column bound are zero inside the window, which fixes the
  // column limits at 0.
  auto report = mnc_c(MatrixSource::identity(), FractionalOrder(0.0), Exponent(2.0),
                      options_for(48, 40, {0, 40, 2}));
  EXPECT_EQ(report.criterion, CriterionId::T2);
  EXPECT_EQ(report.verdict, Verdict::noncompact);
  EXPECT_EQ(report.lower_value, 0.5);
  EXPECT_EQ(report.upper_value, 1.0);
  for (const auto& e : report.column_limits) EXPECT_EQ(e.estimate, 0.0);
}

TEST(MncC, PerturbedConstantRowsDecay) {
  const std::vector<double> v{0.3, -0.7, 0.1};
  Rows rows(48, std::vector<double>(40, 0.0));
  for (std::size_t n = 0; n < 48; ++n) {
    std::copy(v.begin(), v.end(), rows[n].begin());
    if (n < 40) rows[n][n] += std::ldexp(1.0, -static_cast<int>(n));
  }
  auto report = mnc_c(HatMatrixWindow(rows), Exponent(2.0), options_for(48, 40, {0, 40, 2}));
  EXPECT_EQ(report.verdict, Verdict::compact);
  for (std::size_t i = 0; i < report.grid.r_values.size(); ++i) {
    EXPECT_NEAR(report.grid.values[i], std::pow(2.0, -double(report.grid.r_values[i])), 1e-8);
  }
  EXPECT_EQ(report.upper_value, 2.0 * report.lower_value);
}

TEST(MncC, UnconvergedColumnMakesVerdictInconclusive) {
  Rows rows(16, std::vector<double>{0.0});
  for (std::size_t n = 0; n < 16; ++n) rows[n][0] = (n % 2 == 0) ? 1.0 : -1.0;
  auto report = mnc_c(HatMatrixWindow(rows), Exponent(2.0), options_for(16, 1, {0, 16, 2}));
  EXPECT_EQ(report.verdict, Verdict::inconclusive);
  EXPECT_FALSE(report.column_limits[0].converged);
  EXPECT_FALSE(report.notes.empty());
}

TEST(MncL1, FiniteRankIsCompact) {
  auto options = options_for(20, 20, {0, 20, 1});
  auto report = mnc_l1(HatMatrixWindow(finite_rank_rows(20, 20)), Exponent(2.0), options);
  EXPECT_EQ(report.criterion, CriterionId::T4);
  EXPECT_EQ(report.verdict, Verdict::compact);
  EXPECT_EQ(report.upper_value, 4.0 * report.lower_value);
}

TEST(MncL1, IdentityGrowsWithWindow) {
  auto report = mnc_l1(HatMatrixWindow(identity_rows(12, 12)), Exponent::infinity(),
                       options_for(12, 12, {0, 12, 1}));
  for (std::size_t i = 0; i < report.grid.r_values.size(); ++i) {
    EXPECT_EQ(report.grid.values[i], 11.0 - double(report.grid.r_values[i]));
  }
  // u(r) falls by one per step on a fixed window and never settles.
  EXPECT_FALSE(report.grid.stabilized());
  EXPECT_EQ(report.verdict, Verdict::inconclusive);
}

TEST(MncL1, AlternatingRowsAccumulateBySign) {
  Rows rows(12, std::vector<double>{0.0});
  for (std::size_t n = 0; n < 12; ++n) rows[n][0] = (n % 2 == 0) ? 1.0 : -1.0;
  auto report = mnc_l1(HatMatrixWindow(rows), Exponent::infinity(), options_for(12, 1, {0, 11, 1}));
  // The best subset keeps the rows of one sign: u(r) counts them in {r+1, ..., 11}.
  for (std::size_t i = 0; i < report.grid.r_values.size(); ++i) {
    const std::size_t r = report.grid.r_values[i];
    std::size_t even = 0, odd = 0;
    for (std::size_t n = r + 1; n < 12; ++n) (n % 2 == 0 ? even : odd) += 1;
    EXPECT_EQ(report.grid.values[i], double(std::max(even, odd)));
  }
  EXPECT_EQ(report.criterion, CriterionId::MncL1);
  EXPECT_EQ(report.verdict, Verdict::inconclusive);
  EXPECT_EQ(report.upper_value, 4.0 * report.lower_value);
}

TEST(MncL1, SingleNonzeroRowBelowGridIsNoncompact) {
  // Only the last row is nonzero, so every subset sum is that row or zero.
  Rows rows(12, std::vector<double>{0.0, 0.0});
  rows[11] = {1.0, -1.0};
  auto report = mnc_l1(HatMatrixWindow(rows), Exponent::infinity(), options_for(12, 2, {0, 11, 1}));
  for (double v : report.grid.values) EXPECT_EQ(v, 2.0);
  EXPECT_EQ(report.verdict, Verdict::noncompact);
  EXPECT_EQ(report.lower_value, 2.0);
  EXPECT_EQ(report.upper_value, 8.0);
}

TEST(MncL1, CostGuardAndGreedy) {
  HatMatrixWindow hat(finite_rank_rows(40, 8));
  auto options = options_for(40, 8, {0, 40, 4});
  EXPECT_THROW(mnc_l1(hat, Exponent(2.0), options), CostGuardRefusal);
  options.method = SubsetMethod::greedy;
  auto report = mnc_l1(hat, Exponent(2.0), options);
  EXPECT_EQ(report.verdict, Verdict::compact);
}

TEST(LinfTarget, BandedIsCompact) {
  std::vector<std::vector<double>> band(10, std::vector<double>{0.5, 1.0, -0.5, 2.0, 1.0});
  auto report = criterion_linf_target(HatMatrixWindow(hat_matrix(MatrixSource::banded(2, 2, band),
                                                                 FractionalOrder(0.0), 48, 40)),
                                      Exponent(2.0), options_for(48, 40, {0, 40, 2}));
  EXPECT_EQ(report.criterion, CriterionId::T3);
  EXPECT_EQ(report.verdict, Verdict::compact);
  for (std::size_t i = 0; i < report.grid.r_values.size(); ++i) {
    if (report.grid.r_values[i] >= 11) EXPECT_EQ(report.grid.values[i], 0.0);
  }
}

TEST(LinfTarget, IdentityIsNoncompact) {
  auto report = criterion_linf_target(HatMatrixWindow(identity_rows(40, 40)), Exponent(2.0),
                                      options_for(40, 40, {0, 38, 2}));
  EXPECT_EQ(report.verdict, Verdict::noncompact);
  for (double v : report.grid.values) EXPECT_EQ(v, 1.0);
}

TEST(LinfTarget, GeometricColumnsMatchClosedForm) {
  Rows rows(48, std::vector<double>(48, 0.0));
  for (std::size_t n = 0; n < 48; ++n) {
    for (std::size_t k = 0; k <= n; ++k) rows[n][k] = std::ldexp(1.0, -static_cast<int>(k));
  }
  auto report = criterion_linf_target(HatMatrixWindow(rows), Exponent(2.0), options_for(48, 48, {0, 40, 2}));
  EXPECT_EQ(report.verdict, Verdict::compact);
  for (std::size_t i = 0; i < report.grid.r_values.size(); ++i) {
    // (sum_{k > r} 4^{-k})^{1/2} = 2^{-r} / sqrt(3)
    const double oracle = std::pow(2.0, -double(report.grid.r_values[i])) / std::sqrt(3.0);
    EXPECT_NEAR(report.grid.values[i], oracle, 1e-8);
  }
}

TEST(LinfTarget, RejectsBoundaryExponents) {
  HatMatrixWindow hat(identity_rows(8, 8));
  EXPECT_THROW(criterion_linf_target(hat, Exponent(1.0), options_for(8, 8, {0, 8, 1})), InvalidArgument);
  EXPECT_THROW(criterion_linf_target(hat, Exponent::infinity(), options_for(8, 8, {0, 8, 1})),
               InvalidArgument);
}

TEST(Sargent, FiniteRowsAreCompact) {
  auto report = sargent_criterion(HatMatrixWindow(finite_rank_rows(32, 16)), options_for(32, 16, {0, 33, 2}));
  EXPECT_EQ(report.criterion, CriterionId::T7);
  EXPECT_EQ(report.parameter, "m");
  EXPECT_EQ(report.verdict, Verdict::compact);
  for (std::size_t i = 0; i < report.grid.r_values.size(); ++i) {
    if (report.grid.r_values[i] >= 4) EXPECT_EQ(report.grid.values[i], 0.0);
  }
}

TEST(Sargent, IdentityIsNoncompact) {
  auto report = sargent_criterion(HatMatrixWindow(identity_rows(40, 40)), options_for(40, 40, {0, 38, 2}));
  EXPECT_EQ(report.verdict, Verdict::noncompact);
  for (double v : report.grid.values) EXPECT_EQ(v, 1.0);
}

TEST(Sargent, ConstantRowsAreCompact) {
  Rows rows(24, std::vector<double>{1.0, -2.0, 0.5, 3.0});
  auto report = sargent_criterion(HatMatrixWindow(rows), options_for(24, 4, {0, 24, 2}));
  EXPECT_EQ(report.verdict, Verdict::compact);
  // From m = 1 on, the first row already realises every pairwise difference.
  for (std::size_t i = 1; i < report.grid.values.size(); ++i) EXPECT_EQ(report.grid.values[i], 0.0);
}

TEST(Sargent, GeometricRowsDecayLikeTwoToMinusM) {
  auto report = sargent_criterion(HatMatrixWindow(geometric_diagonal_rows(48, 48)), options_for(48, 48, {0, 46, 2}));
  EXPECT_EQ(report.verdict, Verdict::compact);
  for (std::size_t i = 0; i < report.grid.r_values.size(); ++i) {
    EXPECT_NEAR(report.grid.values[i], std::pow(2.0, -double(report.grid.r_values[i])), 1e-8);
  }
}

TEST(LinfDomain, Examples) {
  auto options = options_for(40, 40, {0, 38, 2});
  std::vector<std::vector<double>> band(10, std::vector<double>{1.0, -1.0, 0.5});
  auto banded = criterion_linf_domain(MatrixSource::banded(1, 1, band), FractionalOrder(0.0), options);
  EXPECT_EQ(banded.criterion, CriterionId::LinfDomain);
  EXPECT_EQ(banded.verdict, Verdict::compact);
  EXPECT_FALSE(banded.notes.empty());

  EXPECT_EQ(criterion_linf_domain(HatMatrixWindow(identity_rows(40, 40)), options).verdict, Verdict::noncompact);

  Rows geometric(40, std::vector<double>(40));
  for (auto& row : geometric) {
    for (std::size_t k = 0; k < 40; ++k) row[k] = std::pow(3.0, -double(k));
  }
  auto report = criterion_linf_domain(HatMatrixWindow(geometric), options);
  EXPECT_EQ(report.verdict, Verdict::compact);
  for (std::size_t i = 0; i < report.grid.r_values.size(); ++i) {
    EXPECT_NEAR(report.grid.values[i], 0.5 * std::pow(3.0, -double(report.grid.r_values[i])), 1e-8);
  }
}

TEST(CompactnessProperties, MonotoneGridsOnRandomWindows) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    Rows rows(16, std::vector<double>(16));
    for (auto& r : rows) for (auto& v : r) v = u(rng);
    HatMatrixWindow hat(rows);
    auto options = options_for(16, 16, {0, 16, 1});
    expect_nonincreasing(mnc_c0(hat, Exponent(2.0), options));
    expect_nonincreasing(mnc_c(hat, Exponent(2.0), options));
    expect_nonincreasing(mnc_l1(hat, Exponent(2.0), options));
    expect_nonincreasing(criterion_linf_target(hat, Exponent(3.0), options));
    expect_nonincreasing(sargent_criterion(hat, options));
    expect_nonincreasing(criterion_linf_domain(hat, options));
  }
}

TEST(CompactnessProperties, FirstGridValueIsOperatorNorm) {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const FractionalOrder order(0.4);
  for (int trial = 0; trial < 5; ++trial) {
    Rows rows(24, std::vector<double>(24));
    for (auto& r : rows) for (auto& v : r) v = u(rng);
    auto source = MatrixSource::dense_window(rows);
    auto options = options_for(24, 24, {0, 24, 3});
    for (double p : {1.0, 2.0}) {
      auto report = mnc_c0(source, order, Exponent(p), options);
      EXPECT_NEAR(report.grid.values.front(), opnorm_to_linf(source, order, Exponent(p), 24, 24), 1e-12);
    }
  }
}

TEST(CompactnessProperties, ScalingMultipliesValuesAndKeepsVerdicts) {
  const double lambda = -3.0;
  auto scale = [&](Rows rows) {
    for (auto& r : rows) for (auto& v : r) v *= lambda;
    return rows;
  };
  auto options = options_for(40, 40, {0, 38, 2});
  auto scaled_options = options;
  scaled_options.tolerance *= std::abs(lambda);
  for (const Rows& rows : {identity_rows(40, 40), geometric_diagonal_rows(40, 40), finite_rank_rows(40, 40)}) {
    HatMatrixWindow base(rows);
    HatMatrixWindow scaled(scale(rows));
    auto a = mnc_c0(base, Exponent(2.0), options);
    auto b = mnc_c0(scaled, Exponent(2.0), scaled_options);
    EXPECT_EQ(a.verdict, b.verdict);
    EXPECT_NEAR(b.upper_value, std::abs(lambda) * a.upper_value, 1e-15);
    auto c = criterion_linf_domain(base, options);
    auto d = criterion_linf_domain(scaled, scaled_options);
    EXPECT_EQ(c.verdict, d.verdict);
    EXPECT_NEAR(d.upper_value, std::abs(lambda) * c.upper_value, 1e-15);
  }
}

TEST(IndexGrid, Parsing) {
  auto grid = IndexGrid::parse("0:64:8");
  EXPECT_EQ(grid.values(), (std::vector<std::size_t>{0, 8, 16, 24, 32, 40, 48, 56}));
  EXPECT_EQ(IndexGrid::parse("2:5").values(), (std::vector<std::size_t>{2, 3, 4}));
  EXPECT_THROW(IndexGrid::parse("0:64:0"), InvalidArgument);
  EXPECT_THROW(IndexGrid::parse("8:4"), InvalidArgument);
  EXPECT_THROW(IndexGrid::parse("a:b"), InvalidArgument);
  EXPECT_THROW(IndexGrid::parse("1"), InvalidArgument);
}

TEST(RenderTable, ListsGridAndVerdict) {
  auto report = mnc_c0(HatMatrixWindow(identity_rows(8, 8)), Exponent(2.0), options_for(8, 8, {0, 8, 2}));
  const std::string text = render_table(report);
  EXPECT_NE(text.find("criterion  T1"), std::string::npos);
  EXPECT_NE(text.find("verdict    noncompact"), std::string::npos);
  EXPECT_NE(text.find("r  value"), std::string::npos);
}

}  // namespace
}  // namespace fracseq
