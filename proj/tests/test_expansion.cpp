#include <cmath>
#include <cstring>
#include <mutex>
#include <random>
#include <thread>

#include "doctest.h"
#include "fgx/expansion.hpp"
#include "fgx/fd_oracle.hpp"
#include "fgx/grid_calculus.hpp"
#include "test_helpers.hpp"

using namespace fgx;
using fgx::testing::rel_diff;

namespace {

SpatialField constant_diag_tt(const ChartPtr& chart, double eps) {
  // eps * diag(1, -1, 0, ...): trace-free, constant (hence divergence-free)
  SpatialField gn(chart, 2);
  for (std::size_t p = 0; p < chart->num_nodes(); ++p) {
    gn.comp(gn.comp_index({0, 0}))[p] = eps;
    gn.comp(gn.comp_index({1, 1}))[p] = -eps;
  }
  return gn;
}

}  // namespace

TEST_CASE("validate_boundary_data") {
  const ChartPtr chart = Chart::make(3, {16, 1, 1});
  const SpatialMetric g0{SpatialField::identity(chart)};

  SUBCASE("zero data is clean") {
    const BoundaryData d{3, 4, g0, SpatialField(chart, 2), {}};
    const DataDefects out = validate_boundary_data(d);
    CHECK(out.trace_defect == 0.0);
    CHECK(out.divergence_defect == 0.0);
    CHECK(out.positive_definite);
  }

  SUBCASE("gn = g0 has trace defect n") {
    const BoundaryData d{3, 4, g0, g0.g(), {}};
    CHECK(validate_boundary_data(d).trace_defect == doctest::Approx(3.0));
  }

  SUBCASE("sin-mode data is flagged with its divergence sup") {
    std::vector<FourierMode> modes;
    push_sym_mode(modes, 0, 0, {1, 0, 0}, 1.0, -1.5707963267948966);  // sin(x1) dx1 dx1
    const SpatialField gn = sym2_from_modes(chart, modes, false);
    const BoundaryData d{3, 4, g0, gn, {}};
    const DataDefects out = validate_boundary_data(d);
    CHECK(out.divergence_defect == doctest::Approx(1.0).epsilon(1e-10));  // sup |cos|
    CHECK(out.trace_defect > 0.5);                                       // also not trace-free
  }

  SUBCASE("N below n is rejected") {
    const BoundaryData d{3, 2, g0, SpatialField(chart, 2), {}};
    CHECK_THROWS_AS(validate_boundary_data(d), std::invalid_argument);
  }
}

TEST_CASE("flat data reproduces de Sitter exactly") {
  for (int n : {3, 4, 5}) {
    std::vector<int> res(static_cast<std::size_t>(n), 1);
    res[0] = 4;
    const ChartPtr chart = Chart::make(n, res);
    const SpatialMetric g0{SpatialField::identity(chart)};
    const BoundaryData data{n, n + 2, g0, SpatialField(chart, 2), {}};
    const ExpansionResult result = expand(data);

    CHECK(result.coeffs.empty());
    CHECK(result.residual_coeff_norm < 1e-12);
    const PhgSeries res_series = einstein_residual(result.metric, n);
    if (!res_series.empty()) {
      CHECK(res_series.evaluate_at(1e-2).sup_norm() < 1e-12);
    }
    if (n % 2 == 0) {
      REQUIRE(result.obstruction.has_value());
      CHECK(result.obstruction->sup_norm() < 1e-12);
    }
    for (const auto& [key, coeff] : result.coeffs) CHECK(key.m == 0);
  }
}

TEST_CASE("odd dimension with constant trace-free data") {
  const ChartPtr chart = Chart::make(3, {4, 4, 1});
  const SpatialMetric g0{SpatialField::identity(chart)};
  const double eps = 1e-2;
  const SpatialField gn = constant_diag_tt(chart, eps);
  const BoundaryData data{3, 8, g0, gn, {}};
  const ExpansionResult result = expand(data);

  SUBCASE("order n injects the free data and the square appears at order 2n") {
    REQUIRE(result.coeff(3, 0) != nullptr);
    CHECK(rel_diff(*result.coeff(3, 0), gn) == 0.0);
    REQUIRE(result.coeff(6, 0) != nullptr);
    CHECK(result.coeff_norm(6, 0) > 1e-6);
    // no log terms in odd dimension
    for (const auto& [key, coeff] : result.coeffs) CHECK(key.m == 0);
    // orders 1, 2, 4, 5, 7, 8 carry nothing for flat g0 and constant gn
    for (int i : {1, 2, 4, 5, 7, 8}) CHECK(result.coeff_norm(i, 0) < 1e-10);
  }

  SUBCASE("residual of the truncated metric is tiny") {
    CHECK(result.residual_coeff_norm < 1e-9 * result.max_coeff_norm);
    const PhgSeries res_series = einstein_residual(result.metric, 3);
    CHECK(res_series.evaluate_at(1e-2).sup_norm() < 1e-9 * result.max_coeff_norm);
  }

  SUBCASE("frame Ricci of the result agrees with the coordinate oracle") {
    const PhgSeries ric = frame_ricci(result.metric);
    const auto cmp = compare_fields(frame_to_coordinates_at(ric, 0.05),
                                    fd_oracle_ricci(result.metric, 0.05), 1e-6);
    CHECK(cmp.pass);
  }

  SUBCASE("runs are bitwise deterministic") {
    const ExpansionResult again = expand(data);
    REQUIRE(again.coeffs.size() == result.coeffs.size());
    auto it = result.coeffs.begin();
    auto jt = again.coeffs.begin();
    for (; it != result.coeffs.end(); ++it, ++jt) {
      CHECK(it->first == jt->first);
      CHECK(std::memcmp(it->second.raw().data(), jt->second.raw().data(),
                        it->second.raw().size() * sizeof(double)) == 0);
    }
  }
}

TEST_CASE("coefficients below order n do not depend on gn") {
  const ChartPtr chart = Chart::make(3, {16, 1, 1});
  std::mt19937_64 rng(83);
  const auto modes = fgx::testing::random_sym_modes(rng, 3, 3, 1, 0.02);
  const SpatialMetric g0{sym2_from_modes(chart, modes, true)};

  const BoundaryData without{3, 4, g0, SpatialField(chart, 2), {}};
  const ExpansionResult base = expand(without);

  std::vector<FourierMode> gm;
  push_sym_mode(gm, 0, 1, {1, 0, 0}, 5e-3, 0.7);
  const SpatialField gn = tt_project_flat(sym2_from_modes(chart, gm, false));
  const BoundaryData with{3, 4, g0, gn, {}};
  const ExpansionResult shifted = expand(with);

  REQUIRE(base.coeff(2, 0) != nullptr);
  REQUIRE(shifted.coeff(2, 0) != nullptr);
  CHECK(rel_diff(*base.coeff(2, 0), *shifted.coeff(2, 0)) < 1e-12);
}

TEST_CASE("solvability identity holds at every solved order") {
  const ChartPtr chart = Chart::make(3, {16, 1, 1});
  std::mt19937_64 rng(89);
  const auto modes = fgx::testing::random_sym_modes(rng, 3, 3, 1, 0.02);
  const SpatialMetric g0{sym2_from_modes(chart, modes, true)};
  const BoundaryData data{3, 6, g0, SpatialField(chart, 2), {}};
  const ExpansionResult result = expand(data);
  CHECK(!result.diagnostics.empty());
  for (const auto& diag : result.diagnostics) {
    CHECK(diag.kernel_defect < 1e-9 * result.max_coeff_norm);
  }
  CHECK(result.residual_coeff_norm < 1e-9 * result.max_coeff_norm);
}

TEST_CASE("even dimension: flat metric has no logs and no obstruction") {
  const ChartPtr chart = Chart::make(4, {4, 1, 1, 1});
  const SpatialMetric g0{SpatialField::identity(chart)};
  const BoundaryData data{4, 6, g0, SpatialField(chart, 2), {}};
  const ExpansionResult result = expand(data);
  REQUIRE(result.obstruction.has_value());
  CHECK(result.obstruction->sup_norm() < 1e-12);
  for (const auto& [key, coeff] : result.coeffs) CHECK(key.m == 0);
  CHECK(obstruction_tensor(g0, 4).sup_norm() < 1e-12);
}

TEST_CASE("even dimension: perturbed metric produces the log coefficient") {
  const ChartPtr chart = Chart::make(4, {16, 1, 1, 1});
  const double eps = 1e-3;
  std::vector<FourierMode> modes;
  push_sym_mode(modes, 1, 1, {1, 0, 0, 0}, eps, -1.5707963267948966);  // eps sin(x1) dx2 dx2
  const SpatialMetric g0{sym2_from_modes(chart, modes, true)};
  const BoundaryData data{4, 4, g0, SpatialField(chart, 2), {}};
  const ExpansionResult result = expand(data);

  SUBCASE("log grading respects the floor(i/n) cap") {
    for (const auto& [key, coeff] : result.coeffs) CHECK(key.m <= key.i / result.n);
  }

  SUBCASE("log coefficient equals half the order-4 forcing trace-free slot") {
    REQUIRE(result.coeff(4, 1) != nullptr);
    REQUIRE(result.order_n_forcing.has_value());
    CHECK(result.coeff_norm(4, 1) > 1e-8);
    SpatialField half_f4 = result.order_n_forcing->h4;
    half_f4 *= 0.5;  // 2 alpha / n with n = 4
    SpatialField diff = *result.coeff(4, 1);
    diff -= half_f4;
    CHECK(diff.sup_norm() < 1e-10 * result.max_coeff_norm);
  }

  SUBCASE("obstruction is present, trace-free and linear in the perturbation") {
    REQUIRE(result.obstruction.has_value());
    const double norm1 = result.obstruction->sup_norm();
    CHECK(norm1 > 1e-8);
    CHECK(trace(g0, *result.obstruction).sup_norm() < 1e-12);

    std::vector<FourierMode> modes2;
    push_sym_mode(modes2, 1, 1, {1, 0, 0, 0}, 2 * eps, -1.5707963267948966);
    const SpatialMetric g0b{sym2_from_modes(chart, modes2, true)};
    const double norm2 = obstruction_tensor(g0b, 4).sup_norm();
    CHECK(norm2 / norm1 == doctest::Approx(2.0).epsilon(0.05));
  }

  SUBCASE("obstruction vanishes exactly when the log coefficient does") {
    // flat comparison run on the same chart shape
    const SpatialMetric flat{SpatialField::identity(chart)};
    const ExpansionResult flat_run = expand(BoundaryData{4, 4, flat, SpatialField(chart, 2), {}});
    CHECK(flat_run.obstruction->sup_norm() < 1e-12);
    CHECK(flat_run.coeff(4, 1) == nullptr);
    CHECK(result.obstruction->sup_norm() > 1e-8);
    CHECK(result.coeff(4, 1) != nullptr);
  }
}

TEST_CASE("illegal divergence fails at order n + 1 with the defect reported") {
  const ChartPtr chart = Chart::make(3, {16, 1, 1});
  const SpatialMetric g0{SpatialField::identity(chart)};
  const double a = 1e-2;
  std::vector<FourierMode> modes;
  push_sym_mode(modes, 0, 0, {1, 0, 0}, a, -1.5707963267948966);
  push_sym_mode(modes, 1, 1, {1, 0, 0}, -a, -1.5707963267948966);  // trace-free, divergence a cos
  const SpatialField gn = sym2_from_modes(chart, modes, false);

  const BoundaryData bad{3, 6, g0, gn, {}};
  const double input_defect = validate_boundary_data(bad).divergence_defect;
  CHECK(input_defect == doctest::Approx(a).epsilon(1e-8));

  try {
    expand(bad);
    FAIL("expected a solvability violation");
  } catch (const SolvabilityViolation& err) {
    CHECK(err.order() == 4);
    CHECK(err.defect() > input_defect / 3.0);
    CHECK(err.defect() < input_defect * 3.0);
  }

  // the TT projection of the same data passes
  const BoundaryData good{3, 6, g0, tt_project_flat(gn), {}};
  const ExpansionResult result = expand(good);
  CHECK(result.residual_coeff_norm < 1e-9 * result.max_coeff_norm);
}

TEST_CASE("trace violations are rejected up front") {
  const ChartPtr chart = Chart::make(3, {8, 1, 1});
  const SpatialMetric g0{SpatialField::identity(chart)};
  const BoundaryData d{3, 4, g0, g0.g(), {}};
  CHECK_THROWS_AS(expand(d), std::invalid_argument);
}

TEST_CASE("obstruction tensor rejects odd or too-small dimension") {
  const ChartPtr chart = Chart::make(3, {8, 1, 1});
  const SpatialMetric g0{SpatialField::identity(chart)};
  CHECK_THROWS_AS(obstruction_tensor(g0, 3), std::invalid_argument);
}

TEST_CASE("order-2 coefficient is the Schouten tensor of the boundary metric") {
  // Classical identity: the first correction in the block form is
  //   h_2 = (1/(n-2)) (Ric(g0) - R(g0)/(2(n-1)) g0),
  // exactly, not only to linear order. The comparison path goes through the
  // spatial coordinate curvature, fully disjoint from the frame machinery
  // that produced the coefficient.
  for (int n : {3, 4, 5}) {
    std::vector<int> res(static_cast<std::size_t>(n), 1);
    res[0] = 32;
    const ChartPtr chart = Chart::make(n, res);
    std::vector<FourierMode> modes;
    push_sym_mode(modes, 1, 1, {2, 0, 0}, 0.01, 0.7);
    push_sym_mode(modes, 0, 1, {1, 0, 0}, 0.008, 1.3);
    const SpatialMetric g0{sym2_from_modes(chart, modes, true)};
    const ExpansionResult result = expand(BoundaryData{n, n, g0, SpatialField(chart, 2), {}});

    const SpatialField ric = ricci(g0);
    const SpatialField rsc = scalar_curvature(g0);
    SpatialField schouten = ric;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        double* o = schouten.comp(schouten.comp_index({i, j}));
        const double* rv = rsc.comp(0);
        const double* gv = g0.g().comp(g0.g().comp_index({i, j}));
        for (std::size_t p = 0; p < chart->num_nodes(); ++p) {
          o[p] = (o[p] - rv[p] * gv[p] / (2.0 * (n - 1))) / (n - 2);
        }
      }
    }
    REQUIRE(result.coeff(2, 0) != nullptr);
    CHECK(rel_diff(*result.coeff(2, 0), schouten) < 1e-12);
  }
}

TEST_CASE("linearized obstruction is biharmonic with the TT component pattern") {
  // For g0 = delta + eps sin(k x1) dx2 dx2 in n = 4 the linearized
  // obstruction is proportional to Lap^2 of the transverse-traceless part of
  // the perturbation: components (0, 2/3, -1/3, -1/3) sin(k x1) up to the
  // engine normalization, growing like k^4.
  const ChartPtr chart = Chart::make(4, {32, 1, 1, 1});
  auto obstruction_of = [&chart](int k, double eps) {
    std::vector<FourierMode> modes;
    push_sym_mode(modes, 1, 1, {k, 0, 0, 0}, eps, -1.5707963267948966);
    const SpatialMetric g0{sym2_from_modes(chart, modes, true)};
    return obstruction_tensor(g0, 4);
  };

  const double eps = 1e-4;
  const SpatialField o1 = obstruction_of(1, eps);
  const std::size_t peak = 8;  // x1 = pi/2 on 32 points: sin = 1
  const double o22 = o1.at({1, 1}, peak);
  CHECK(std::abs(o1.at({0, 0}, peak) / o22) < 2e-3);
  CHECK(o1.at({2, 2}, peak) / o22 == doctest::Approx(-0.5).epsilon(2e-3));
  CHECK(o1.at({3, 3}, peak) / o22 == doctest::Approx(-0.5).epsilon(2e-3));
  CHECK(std::abs(o1.at({0, 1}, peak) / o22) < 2e-3);

  const SpatialField o2 = obstruction_of(2, eps);
  CHECK(o2.sup_norm() / o1.sup_norm() == doctest::Approx(16.0).epsilon(1e-3));
}

TEST_CASE("even-n log terms cascade through the orders above n") {
  // Small enough boundary curvature keeps the induced divergence of the
  // missing order-n datum below tolerance, so the run continues past n + 1
  // and the order-6 step solves two log levels with recomputation between.
  const ChartPtr chart = Chart::make(4, {32, 1, 1, 1});
  std::vector<FourierMode> modes;
  push_sym_mode(modes, 1, 1, {1, 0, 0, 0}, 1e-4, -1.5707963267948966);
  const SpatialMetric g0{sym2_from_modes(chart, modes, true)};
  const ExpansionResult result = expand(BoundaryData{4, 6, g0, SpatialField(chart, 2), {}});

  CHECK(result.coeff_norm(4, 1) > 1e-7);
  CHECK(result.coeff_norm(6, 1) > 1e-8);
  CHECK(result.coeff_norm(6, 0) > 1e-8);
  for (const auto& [key, coeff] : result.coeffs) {
    CHECK(key.m <= key.i / 4);
    CHECK(key.i % 2 == 0);  // only even powers appear
  }
  CHECK(result.residual_coeff_norm < 1e-9 * result.max_coeff_norm);
}

TEST_CASE("higher odd and even dimensions run on mostly-constant charts") {
  // n = 5 with a varying transverse-traceless datum reaches order 2n = 10,
  // where the trace solve must switch to the nondegenerate row.
  {
    const ChartPtr chart = Chart::make(5, {16, 1, 1, 1, 1});
    const SpatialMetric g0{SpatialField::identity(chart)};
    std::vector<FourierMode> modes;
    push_sym_mode(modes, 1, 1, {1, 0, 0, 0, 0}, 1e-2, 0.4);
    push_sym_mode(modes, 2, 3, {1, 0, 0, 0, 0}, 6e-3, 1.9);
    const SpatialField gn = tt_project_flat(sym2_from_modes(chart, modes, false));
    const ExpansionResult result = expand(BoundaryData{5, 10, g0, gn, {}});
    CHECK(rel_diff(*result.coeff(5, 0), gn) == 0.0);
    CHECK(result.coeff_norm(10, 0) > 1e-8);  // quadratic echo of the datum
    CHECK(result.residual_coeff_norm < 1e-9 * result.max_coeff_norm);
    for (const auto& [key, coeff] : result.coeffs) CHECK(key.m == 0);
  }
  // n = 6: constant data keep the run cheap on a singleton grid.
  {
    const ChartPtr chart = Chart::make(6, {1, 1, 1, 1, 1, 1});
    const SpatialMetric g0{SpatialField::identity(chart)};
    const SpatialField gn = constant_diag_tt(chart, 1e-2);
    const ExpansionResult result = expand(BoundaryData{6, 8, g0, gn, {}});
    CHECK(rel_diff(*result.coeff(6, 0), gn) == 0.0);
    REQUIRE(result.obstruction.has_value());
    CHECK(result.obstruction->sup_norm() < 1e-12);  // flat boundary
    CHECK(result.residual_coeff_norm < 1e-9 * result.max_coeff_norm);
  }
}

TEST_CASE("concurrent expansions agree bitwise") {
  const ChartPtr chart = Chart::make(3, {16, 1, 1});
  std::vector<FourierMode> modes;
  push_sym_mode(modes, 1, 1, {1, 0, 0}, 0.01, 0.3);
  const SpatialMetric g0{sym2_from_modes(chart, modes, true)};
  const BoundaryData data{3, 6, g0, SpatialField(chart, 2), {}};

  std::vector<ExpansionResult> results;
  results.reserve(4);
  {
    std::vector<std::thread> workers;
    std::mutex mtx;
    for (int t = 0; t < 4; ++t) {
      workers.emplace_back([&] {
        ExpansionResult r = expand(data);
        std::lock_guard<std::mutex> lock(mtx);
        results.push_back(std::move(r));
      });
    }
    for (auto& w : workers) w.join();
  }
  for (std::size_t t = 1; t < results.size(); ++t) {
    REQUIRE(results[t].coeffs.size() == results[0].coeffs.size());
    auto it = results[0].coeffs.begin();
    auto jt = results[t].coeffs.begin();
    for (; it != results[0].coeffs.end(); ++it, ++jt) {
      CHECK(std::memcmp(it->second.raw().data(), jt->second.raw().data(),
                        it->second.raw().size() * sizeof(double)) == 0);
    }
  }
}
