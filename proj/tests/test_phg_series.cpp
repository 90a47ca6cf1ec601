#include <cmath>
#include <random>

#include "doctest.h"
#include "fgx/frame_calculus.hpp"
#include "fgx/phg_series.hpp"
#include "test_helpers.hpp"

using namespace fgx;
using fgx::testing::rel_diff;

namespace {

const ChartPtr& tiny_chart() {
  static const ChartPtr chart = Chart::make(3, {8, 1, 1});
  return chart;
}

/// Scalar series with dyadic random coefficients (exactly representable, so
/// ring identities hold bit-for-bit).
PhgSeries random_dyadic_series(std::mt19937_64& rng, int trunc, int max_log) {
  PhgSeries out(trunc, tiny_chart(), 0);
  std::uniform_int_distribution<int> num(-8, 8);
  std::uniform_int_distribution<int> logp(0, max_log);
  for (int i = 0; i <= trunc; ++i) {
    SpatialField c(tiny_chart(), 0);
    for (std::size_t p = 0; p < c.num_nodes(); ++p) c.comp(0)[p] = num(rng) / 16.0;
    out.add_term(i, logp(rng), c);
  }
  return out;
}

PhgSeries constant_series(double v, int trunc, int i, int m) {
  PhgSeries out(trunc, tiny_chart(), 0);
  out.add_term(i, m, SpatialField::constant(tiny_chart(), v));
  return out;
}

bool exactly_equal(const PhgSeries& a, const PhgSeries& b) {
  PhgSeries d = a;
  d -= b;
  d.normalize(0.0);
  return d.empty();
}

}  // namespace

TEST_CASE("series addition") {
  const PhgSeries a = constant_series(2.0, 6, 2, 0);
  const PhgSeries zero(6, tiny_chart(), 0);

  PhgSeries sum = a;
  sum += zero;
  CHECK(exactly_equal(sum, a));

  PhgSeries cancel = a;
  cancel += -a;
  cancel.normalize(0.0);
  CHECK(cancel.empty());

  // s^2 log(s) c + s^2 d occupy two distinct slots
  PhgSeries two = constant_series(1.0, 6, 2, 1);
  two += constant_series(3.0, 6, 2, 0);
  CHECK(two.terms().size() == 2);
  CHECK(two.term(2, 0) != nullptr);
  CHECK(two.term(2, 1) != nullptr);
}

TEST_CASE("series multiplication") {
  SUBCASE("(1 + s^2 a)(1 - s^2 a) = 1 - s^4 a^2") {
    PhgSeries p(8, tiny_chart(), 0);
    p.add_term(0, 0, SpatialField::constant(tiny_chart(), 1.0));
    p.add_term(2, 0, SpatialField::constant(tiny_chart(), 0.5));
    PhgSeries q(8, tiny_chart(), 0);
    q.add_term(0, 0, SpatialField::constant(tiny_chart(), 1.0));
    q.add_term(2, 0, SpatialField::constant(tiny_chart(), -0.5));
    PhgSeries prod = mul(p, q);
    prod.normalize(0.0);
    CHECK(prod.terms().size() == 2);
    CHECK(prod.term_or_zero(0, 0).sup_norm() == 1.0);
    CHECK(prod.term(2, 0) == nullptr);
    CHECK(prod.term_or_zero(4, 0).comp(0)[0] == -0.25);
  }

  SUBCASE("(s log s)^2 = s^2 log^2 s") {
    const PhgSeries slog = constant_series(1.0, 8, 1, 1);
    PhgSeries sq = mul(slog, slog);
    sq.normalize(0.0);
    CHECK(sq.terms().size() == 1);
    CHECK(sq.term(2, 2) != nullptr);
  }

  SUBCASE("evaluation is a ring homomorphism on truncation-exact input") {
    std::mt19937_64 rng(5);
    PhgSeries a = random_dyadic_series(rng, 3, 1);
    PhgSeries b = random_dyadic_series(rng, 3, 1);
    const PhgSeries ab = series_combine(a.with_truncation(8), b.with_truncation(8), 0,
                                        IndexKind::spatial, [](const auto& x, const auto& y) {
                                          SpatialField out = x;
                                          for (std::size_t p = 0; p < out.num_nodes(); ++p) {
                                            out.comp(0)[p] *= y.comp(0)[p];
                                          }
                                          return out;
                                        });
    const double s = 0.01;
    const double lhs = ab.evaluate_at(s).comp(0)[0];
    const double rhs = a.evaluate_at(s).comp(0)[0] * b.evaluate_at(s).comp(0)[0];
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
  }

  SUBCASE("homomorphism defect of truncated products decays like s^(N+1)") {
    // Degree-3 factors truncated at N = 4: the dropped terms start at s^5.
    std::mt19937_64 rng(6);
    PhgSeries a = random_dyadic_series(rng, 3, 0);
    PhgSeries b = random_dyadic_series(rng, 3, 0);
    const PhgSeries ab = mul(a.with_truncation(4), b.with_truncation(4));
    std::vector<double> ss{1e-2, 5e-3, 2e-3, 1e-3};
    std::vector<double> errs;
    for (double s : ss) {
      const double lhs = ab.evaluate_at(s).comp(0)[0];
      const double rhs = a.evaluate_at(s).comp(0)[0] * b.evaluate_at(s).comp(0)[0];
      errs.push_back(std::abs(lhs - rhs));
    }
    // fit slope
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < ss.size(); ++k) {
      const double x = std::log(ss[k]), y = std::log(errs[k]);
      sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    const double slope = (4 * sxy - sx * sy) / (4 * sxx - sx * sx);
    CHECK(slope > 4.5);
    CHECK(slope < 6.5);
  }
}

TEST_CASE("ring axioms hold exactly for dyadic series") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    const PhgSeries a = random_dyadic_series(rng, 4, 1);
    const PhgSeries b = random_dyadic_series(rng, 4, 1);
    const PhgSeries c = random_dyadic_series(rng, 4, 1);
    CHECK(exactly_equal(mul(mul(a, b), c), mul(a, mul(b, c))));
    PhgSeries bc = b;
    bc += c;
    PhgSeries ab_ac = mul(a, b);
    ab_ac += mul(a, c);
    CHECK(exactly_equal(mul(a, bc), ab_ac));
  }
}

TEST_CASE("s d/ds") {
  SUBCASE("s^2 c -> 2 s^2 c") {
    const PhgSeries a = constant_series(3.0, 6, 2, 0);
    const PhgSeries d = a.s_dds();
    CHECK(d.terms().size() == 1);
    CHECK(d.term_or_zero(2, 0).comp(0)[0] == 6.0);
  }
  SUBCASE("s^2 log s c -> 2 s^2 log s c + s^2 c") {
    const PhgSeries a = constant_series(1.0, 6, 2, 1);
    const PhgSeries d = a.s_dds();
    CHECK(d.term_or_zero(2, 1).comp(0)[0] == 2.0);
    CHECK(d.term_or_zero(2, 0).comp(0)[0] == 1.0);
  }
  SUBCASE("constants are annihilated") {
    const PhgSeries a = constant_series(5.0, 6, 0, 0);
    PhgSeries d = a.s_dds();
    d.normalize(0.0);
    CHECK(d.empty());
  }
  SUBCASE("Leibniz rule holds exactly on dyadic series") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 5; ++trial) {
      const PhgSeries a = random_dyadic_series(rng, 4, 1);
      const PhgSeries b = random_dyadic_series(rng, 4, 1);
      const PhgSeries lhs = mul(a, b).s_dds();
      PhgSeries rhs = mul(a.s_dds(), b);
      rhs += mul(a, b.s_dds());
      CHECK(exactly_equal(lhs, rhs));
    }
  }
}

TEST_CASE("evaluation") {
  const PhgSeries c = constant_series(4.5, 6, 0, 0);
  CHECK(c.evaluate_at(0.37).comp(0)[0] == 4.5);

  const PhgSeries s2 = constant_series(1.0, 6, 2, 0);
  CHECK(std::abs(s2.evaluate_at(0.1).comp(0)[0] - 0.01) < 1e-17);

  const PhgSeries s4log = constant_series(1.0, 6, 4, 1);
  const double e1 = std::exp(-1.0);
  CHECK(std::abs(s4log.evaluate_at(e1).comp(0)[0] - (-std::exp(-4.0))) < 1e-17);

  CHECK_THROWS(c.evaluate_at(0.0));
  CHECK_THROWS(c.evaluate_at(-0.5));
  CHECK_THROWS(c.evaluate_at(1.0));
}

TEST_CASE("metric series inversion") {
  const ChartPtr chart = Chart::make(3, {8, 1, 1});

  SUBCASE("constant de Sitter block is its own inverse") {
    const BlockMetricSeries g = BlockMetricSeries::fg_form(6, SpatialField::identity(chart));
    PhgSeries inv = invert_metric_series(g);
    inv -= g.frame();
    inv.normalize(0.0);
    CHECK(inv.empty());
  }

  SUBCASE("geometric series for delta + s^2 a") {
    // gij = (1 + 0.3 s^2) delta: inverse spatial block (1 - 0.3 s^2 + 0.09 s^4 - ...) delta
    BlockMetricSeries g = BlockMetricSeries::fg_form(6, SpatialField::identity(chart));
    SpatialField a = SpatialField::identity(chart);
    a *= 0.3;
    g.add_spatial_term(2, 0, a);
    const PhgSeries inv = invert_metric_series(g);
    CHECK(std::abs(inv.term_or_zero(2, 0).at({1, 1}, 0) - (-0.3)) < 1e-15);
    CHECK(std::abs(inv.term_or_zero(4, 0).at({1, 1}, 0) - 0.09) < 1e-15);
    CHECK(std::abs(inv.term_or_zero(6, 0).at({1, 1}, 0) - (-0.027)) < 1e-15);
    // scalar block stays -1
    CHECK(std::abs(inv.term_or_zero(0, 0).at({0, 0}, 0) + 1.0) < 1e-15);
  }

  SUBCASE("random perturbed block metric composes to the identity") {
    std::mt19937_64 rng(31);
    const auto modes = fgx::testing::random_sym_modes(rng, 3, 4, 2, 0.2);
    const ChartPtr c16 = Chart::make(3, {16, 1, 1});
    BlockMetricSeries g = BlockMetricSeries::fg_form(6, sym2_from_modes(c16, modes, true));
    const auto more = fgx::testing::random_sym_modes(rng, 3, 3, 2, 0.3);
    g.add_spatial_term(1, 0, sym2_from_modes(c16, more, false));
    g.add_spatial_term(3, 1, sym2_from_modes(c16, more, false));

    const PhgSeries inv = invert_metric_series(g);
    // compose and compare to the identity series
    const int d = 4;
    PhgSeries comp = series_combine(
        g.frame(), inv, 2, IndexKind::spacetime, [d](const SpatialField& fa, const SpatialField& fb) {
          SpatialField out(fa.chart(), 2, IndexKind::spacetime);
          for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
              double* o = out.comp(out.comp_index({i, j}));
              for (int r = 0; r < d; ++r) {
                const double* a = fa.comp(fa.comp_index({i, r}));
                const double* b = fb.comp(fb.comp_index({r, j}));
                for (std::size_t p = 0; p < out.num_nodes(); ++p) o[p] += a[p] * b[p];
              }
            }
          }
          return out;
        });
    comp.add_term(0, 0, SpatialField::identity(c16, IndexKind::spacetime), -1.0);
    comp.normalize(0.0);
    CHECK(comp.sup_norm() < 1e-11);
  }
}

TEST_CASE("series shape mismatches raise") {
  const PhgSeries a = constant_series(1.0, 4, 0, 0);
  PhgSeries b(4, tiny_chart(), 1);
  PhgSeries c = a;
  CHECK_THROWS(c += b);
  const ChartPtr other = Chart::make(3, {4, 1, 1});
  PhgSeries d(4, other, 0);
  d.add_term(0, 0, SpatialField::constant(other, 1.0));
  CHECK_THROWS(c += d);
  CHECK_THROWS(mul(b, b));  // neither factor scalar
}
