#include <cmath>
#include <random>

#include "doctest.h"
#include "fgx/decay.hpp"
#include "fgx/fd_oracle.hpp"
#include "fgx/grid_calculus.hpp"
#include "test_helpers.hpp"

using namespace fgx;
using fgx::testing::rel_diff;

TEST_CASE("coordinate oracle on exact de Sitter") {
  const ChartPtr chart = Chart::make(3, {8, 1, 1});
  const BlockMetricSeries g = BlockMetricSeries::fg_form(4, SpatialField::identity(chart));
  const double s = 0.05;
  const SpatialField ric = fd_oracle_ricci(g, s);
  SpatialField expect = coordinate_metric_at(g, s);
  expect *= 3.0;  // Ric = n g for the exact solution
  CHECK(rel_diff(ric, expect) < 1e-8);
}

TEST_CASE("stencil halving reduces the oracle self-error fourth-order") {
  const ChartPtr chart = Chart::make(3, {8, 1, 1});
  const BlockMetricSeries g = BlockMetricSeries::fg_form(4, SpatialField::identity(chart));
  const double s = 0.05;
  SpatialField exact = coordinate_metric_at(g, s);
  exact *= 3.0;

  auto error_at = [&](double h) {
    SpatialField diff = fd_oracle_ricci(g, s, StencilSpec{h});
    diff -= exact;
    return diff.sup_norm();
  };
  const double e1 = error_at(s / 16.0);
  const double e2 = error_at(s / 32.0);
  CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(0.35));
}

TEST_CASE("stencil bounds are enforced") {
  const ChartPtr chart = Chart::make(3, {4, 1, 1});
  const BlockMetricSeries g = BlockMetricSeries::fg_form(2, SpatialField::identity(chart));
  CHECK_THROWS_AS(fd_oracle_ricci(g, 0.05, StencilSpec{0.02}), std::invalid_argument);
}

TEST_CASE("compare_fields") {
  const ChartPtr chart = Chart::make(3, {8, 1, 1});
  std::mt19937_64 rng(97);
  const auto modes = fgx::testing::random_sym_modes(rng, 3, 3, 2, 1.0);
  const SpatialField x = sym2_from_modes(chart, modes, true);

  CHECK(compare_fields(x, x, 1e-14).max_rel_diff == 0.0);

  SpatialField y = x;
  y.comp(0)[0] += 1e-9;
  const auto cmp = compare_fields(y, x, 1e-6);
  CHECK(cmp.max_rel_diff == doctest::Approx(1e-9 / x.sup_norm()).epsilon(1e-3));
  CHECK(cmp.pass);

  SpatialField wrong_shape(chart, 1);
  CHECK_THROWS(compare_fields(wrong_shape, x, 1e-6));
}

TEST_CASE("slope fit on a synthetic power law") {
  const ChartPtr chart = Chart::make(3, {4, 1, 1});
  PhgSeries residual(8, chart, 2, IndexKind::spacetime);
  SpatialField c(chart, 2, IndexKind::spacetime);
  c.comp(0)[0] = 0.7;
  residual.add_term(5, 0, c);
  const DecayReport report = decay_report_from_series(residual, {1e-2, 5e-3, 2e-3, 1e-3});
  CHECK(!report.exact_zero);
  CHECK(report.fitted_slope == doctest::Approx(5.0).epsilon(0.002));
  CHECK(!report.log_correction_used);
  CHECK(report.leading_order == 5);
}

TEST_CASE("a populated log level is divided out before the fit") {
  const ChartPtr chart = Chart::make(3, {4, 1, 1});
  PhgSeries residual(8, chart, 2, IndexKind::spacetime);
  SpatialField c(chart, 2, IndexKind::spacetime);
  c.comp(0)[0] = 0.7;
  residual.add_term(5, 1, c);  // 0.7 s^5 log(s)
  const DecayReport report = decay_report_from_series(residual, {1e-2, 5e-3, 2e-3, 1e-3});
  CHECK(report.log_correction_used);
  CHECK(report.fitted_slope == doctest::Approx(5.0).epsilon(0.002));
}

TEST_CASE("flat expansion reports the exact-zero sentinel") {
  const ChartPtr chart = Chart::make(3, {4, 1, 1});
  const SpatialMetric g0{SpatialField::identity(chart)};
  const ExpansionResult result = expand(BoundaryData{3, 6, g0, SpatialField(chart, 2), {}});
  const DecayReport report = residual_report(result, default_s_samples());
  CHECK(report.exact_zero);
  for (double norm : report.norms) CHECK(norm < 1e-12);
  CHECK(std::isinf(report.fitted_slope));
}

TEST_CASE("residual decay slope tracks the truncation order") {
  const ChartPtr chart = Chart::make(3, {16, 1, 1});
  std::mt19937_64 rng(101);
  const auto modes = fgx::testing::random_sym_modes(rng, 3, 3, 1, 0.02);
  const SpatialMetric g0{sym2_from_modes(chart, modes, true)};

  auto slope_at = [&](int N) {
    const ExpansionResult result = expand(BoundaryData{3, N, g0, SpatialField(chart, 2), {}});
    return residual_report(result, default_s_samples()).fitted_slope;
  };
  const double s4 = slope_at(4);
  const double s6 = slope_at(6);
  CHECK(s4 > 4.5);
  CHECK(s6 >= s4 + 1.5);
}

TEST_CASE("csv emission") {
  const ChartPtr chart = Chart::make(3, {4, 1, 1});
  PhgSeries residual(8, chart, 2, IndexKind::spacetime);
  SpatialField c(chart, 2, IndexKind::spacetime);
  c.comp(0)[0] = 1.0;
  residual.add_term(5, 0, c);
  const DecayReport report = decay_report_from_series(residual, {1e-2, 5e-3, 2e-3, 1e-3});
  const std::string csv = decay_report_csv(report);
  CHECK(csv.find("s,residual_norm,log_level_active") == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);  // header + 4 rows
}

TEST_CASE("degenerate sample sets are rejected") {
  const ChartPtr chart = Chart::make(3, {4, 1, 1});
  PhgSeries residual(8, chart, 2, IndexKind::spacetime);
  CHECK_THROWS(decay_report_from_series(residual, {1e-2, 5e-3}));         // too few
  CHECK_THROWS(decay_report_from_series(residual, {1e-2, 5e-3, 2e-3, 2.0}));  // out of range
}
