#include "fgx/order_solve.hpp"

#include <cmath>
#include <cstdio>

namespace fgx {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

SpatialField scaled_copy(const SpatialField& f, double c) {
  SpatialField out = f;
  out *= c;
  return out;
}

}  // namespace

OrderSolveResult solve_order(const Rational& lambda, const Block4Field& f, int n,
                             const std::optional<SpatialField>& free_h4,
                             const SolveTolerances& tol) {
  if (!(Rational(0) < lambda)) {
    throw std::invalid_argument("solve_order: lambda must be positive (lambda = 0 is the gauge slot)");
  }
  const ChartPtr chart = f.h1.chart();
  const double threshold = tol.compatibility * tol.scale;

  OrderSolveResult out{SpatialField(chart, 0), SpatialField(chart, 2), std::nullopt, 0.0, 0.0, 0.0};

  out.f2_defect = f.h2.sup_norm();
  if (out.f2_defect > threshold) {
    throw SolvabilityError("mixed-slot", out.f2_defect,
                           "solve_order: mixed-slot forcing violates solvability (defect " +
                               fmt(out.f2_defect) + ")");
  }

  // Kernel of the divergence family: (lambda - 2n) f1 + n (lambda - 2) f3 = 0.
  const double c1 = (lambda - Rational(2 * n)).to_double();
  const double c3 = (Rational(n) * (lambda - Rational(2))).to_double();
  {
    SpatialField defect = scaled_copy(f.h1, c1);
    defect += scaled_copy(f.h3, c3);
    out.kernel_defect = defect.sup_norm();
  }
  if (out.kernel_defect > threshold) {
    throw SolvabilityError("kernel", out.kernel_defect,
                           "solve_order: forcing escapes the divergence-family kernel (defect " +
                               fmt(out.kernel_defect) + ")");
  }

  const bool at_n = lambda == Rational(n);
  if (free_h4 && !at_n) {
    throw std::invalid_argument("solve_order: free data is only accepted at lambda = n");
  }

  if (at_n) {
    if (n % 2 == 0) {
      // Fourth row and column vanish; the log coefficient absorbs f4 through
      // the lambda-derivative of the family, whose last column is (0,0,0,n).
      const double rowcheck_den = static_cast<double>(n) * static_cast<double>(n) * (n - 2);
      out.h3 = scaled_copy(f.h1, -1.0 / rowcheck_den);
      {
        SpatialField consistency = f.h1;
        consistency += scaled_copy(f.h3, -static_cast<double>(n - 2));
        out.row_consistency_defect = consistency.sup_norm();
      }
      if (out.row_consistency_defect > threshold) {
        throw SolvabilityError("row-consistency", out.row_consistency_defect,
                               "solve_order: rows 1 and 3 disagree at lambda = n");
      }
      out.h4 = free_h4 ? *free_h4 : SpatialField(chart, 2);
      out.log_h4 = scaled_copy(f.h4, 1.0 / static_cast<double>(n));
      return out;
    }
    // Odd n: the forcing must vanish outright; order n only injects free data.
    const double fnorm = f.sup_norm();
    if (fnorm > threshold) {
      throw SolvabilityError("order-n-forcing", fnorm,
                             "solve_order: nonzero forcing at lambda = n with n odd (defect " +
                                 fmt(fnorm) + ")");
    }
    out.h4 = free_h4 ? *free_h4 : SpatialField(chart, 2);
    return out;
  }

  // Generic lambda: the trace-free slot decouples.
  const double den4 = (lambda * (lambda - Rational(n))).to_double();
  out.h4 = scaled_copy(f.h4, 1.0 / den4);

  // h3 from row 3 (f3 = lambda(lambda-2n) h3) or row 1 (f1 = -n lambda(lambda-2) h3).
  const double den3 = (lambda * (lambda - Rational(2 * n))).to_double();
  const double den1 = -(Rational(n) * lambda * (lambda - Rational(2))).to_double();
  if (std::abs(den3) >= std::abs(den1)) {
    out.h3 = scaled_copy(f.h3, 1.0 / den3);
    SpatialField cross = f.h1;
    cross += scaled_copy(out.h3, -den1);
    out.row_consistency_defect = cross.sup_norm();
  } else {
    out.h3 = scaled_copy(f.h1, 1.0 / den1);
    SpatialField cross = f.h3;
    cross += scaled_copy(out.h3, -den3);
    out.row_consistency_defect = cross.sup_norm();
  }
  if (out.row_consistency_defect > threshold) {
    throw SolvabilityError("row-consistency", out.row_consistency_defect,
                           "solve_order: trace rows are mutually inconsistent");
  }
  return out;
}

}  // namespace fgx
