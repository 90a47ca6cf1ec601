#pragma once

#include <compare>
#include <functional>
#include <map>

#include "fgx/spatial_field.hpp"

namespace fgx {

/// Grading of one polyhomogeneous term s^i log(s)^m.
struct PhgKey {
  int i = 0;
  int m = 0;
  auto operator<=>(const PhgKey&) const = default;
};

/// Finite polyhomogeneous series sum_{i,m} s^i log(s)^m c_{i,m} whose
/// coefficients are spatial fields of one common chart/rank/kind. The
/// truncation order N is a hard cap: terms above N are silently dropped,
/// including in products, since the expansion never consumes them.
class PhgSeries {
 public:
  PhgSeries() = default;
  PhgSeries(int truncation, ChartPtr chart, int rank, IndexKind kind = IndexKind::spatial);

  /// Series with a single order-0 coefficient.
  static PhgSeries from_order_zero(int truncation, const SpatialField& f);

  int truncation() const { return truncation_; }
  const ChartPtr& chart() const { return chart_; }
  int rank() const { return rank_; }
  IndexKind kind() const { return kind_; }

  const std::map<PhgKey, SpatialField>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  /// Pointer to a stored coefficient, or nullptr.
  const SpatialField* term(int i, int m) const;
  SpatialField term_or_zero(int i, int m) const;

  /// Accumulate f into the (i, m) coefficient (dropped if i > truncation).
  void add_term(int i, int m, const SpatialField& f, double scale = 1.0);

  /// Drop coefficients with sup-norm below drop_tol.
  void normalize(double drop_tol = 1e-15);

  int max_order() const;               // largest stored i, -1 when empty
  int max_log_at(int i) const;         // largest stored m at order i, -1 when none
  double sup_norm() const;             // max over stored coefficients
  double order_sup_norm(int i) const;  // max over log levels at order i

  PhgSeries& operator+=(const PhgSeries& o);
  PhgSeries& operator-=(const PhgSeries& o);
  friend PhgSeries operator+(PhgSeries a, const PhgSeries& b) { return a += b; }
  friend PhgSeries operator-(PhgSeries a, const PhgSeries& b) { return a -= b; }
  PhgSeries operator-() const;
  PhgSeries scaled(double c) const;

  /// The b-derivative s d/ds: s^i log^m -> i s^i log^m + m s^i log^{m-1}.
  PhgSeries s_dds() const;

  /// Multiplication by s^shift.
  PhgSeries shifted(int shift) const;

  /// Retruncate (possibly raising the cap; existing terms are kept).
  PhgSeries with_truncation(int truncation) const;

  /// Exact floating evaluation at 0 < s < 1.
  SpatialField evaluate_at(double s) const;

  bool compatible(const PhgSeries& o) const;

 private:
  int truncation_ = 0;
  ChartPtr chart_;
  int rank_ = 0;
  IndexKind kind_ = IndexKind::spatial;
  std::map<PhgKey, SpatialField> terms_;
};

/// Graded product with a caller-supplied coefficient combiner:
/// result(i1+i2, m1+m2) += combine(a_{i1,m1}, b_{i2,m2}), truncated at
/// min(Na, Nb). The combiner returns a field of shape (rank, kind).
PhgSeries series_combine(const PhgSeries& a, const PhgSeries& b, int rank, IndexKind kind,
                         const std::function<SpatialField(const SpatialField&, const SpatialField&)>& combine);

/// Pointwise product where at least one factor is scalar (rank 0).
PhgSeries mul(const PhgSeries& a, const PhgSeries& b);

}  // namespace fgx
