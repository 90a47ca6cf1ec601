#pragma once

#include <optional>

#include "fgx/phg_series.hpp"
#include "fgx/spatial_field.hpp"

namespace fgx {

/// Spacetime metric near the boundary in the 0-frame e_0 = s d/ds,
/// e_i = s d/dx^i, stored as one polyhomogeneous series of spacetime rank-2
/// coefficient fields. The order-0 part must be (-1, 0, g0) with g0 positive
/// definite; all decaying corrections live at positive s-orders. Frame
/// components are O(1) up to the boundary; coordinate components are the
/// frame components divided by s^2.
class BlockMetricSeries {
 public:
  /// From the three blocks (scalar, one-form, symmetric spatial rank-2).
  BlockMetricSeries(const PhgSeries& g00, const PhgSeries& g0i, const PhgSeries& gij);

  /// From a unified spacetime rank-2 series.
  explicit BlockMetricSeries(PhgSeries frame);

  /// Fefferman-Graham form metric (-1, 0, g0 + decaying spatial series).
  static BlockMetricSeries fg_form(int truncation, const SpatialField& g0);

  const PhgSeries& frame() const { return frame_; }
  PhgSeries& frame() { return frame_; }
  int truncation() const { return frame_.truncation(); }
  const ChartPtr& chart() const { return frame_.chart(); }
  int dim() const { return frame_.chart()->dim(); }

  /// Block extraction (copies).
  PhgSeries g00() const;
  PhgSeries g0i() const;
  PhgSeries gij() const;

  /// Boundary metric: the order-0 spatial block.
  SpatialField boundary_metric() const;

  /// Accumulate s^i log^m times a symmetric spatial tensor into the spatial
  /// block. Used by the expansion driver; keeps FG block form.
  void add_spatial_term(int i, int m, const SpatialField& sym2, double scale = 1.0);

  BlockMetricSeries with_truncation(int truncation) const;

 private:
  void validate_leading_block() const;
  PhgSeries frame_;
};

/// e_mu applied to every coefficient: e_0 = s d/ds, e_i = s d/dx^i (which
/// shifts the s-order up by one).
PhgSeries frame_derivative(const PhgSeries& a, int mu);

/// Series inverse of a block metric by Neumann iteration around the order-0
/// part. The composition defect g * g^{-1} - id stays below ~1e-11 per entry
/// through the truncation order.
PhgSeries invert_metric_series(const BlockMetricSeries& g);

/// Frame connection coefficients of a block metric.
struct FrameConnection {
  PhgSeries lowered;  // Gamma_{lam,mu,nu}, rank-3 spacetime, index order (lam, mu, nu)
  PhgSeries raised;   // Gamma^lam_{mu,nu}
};

/// All frame Christoffel symbols, including the frame-commutator corrections
/// ([e_0, e_i] = e_i makes them non-symmetric in the lower indices).
FrameConnection frame_christoffels(const BlockMetricSeries& g);

/// Frame Ricci tensor computed directly from the connection coefficients
/// (not by Riemann contraction; the verification oracle goes the other way).
PhgSeries frame_ricci(const BlockMetricSeries& g);

/// Ric(g) - n g as a frame series.
PhgSeries einstein_residual(const BlockMetricSeries& g, int n);

/// The 4-component splitting of a symmetric spacetime rank-2 coefficient:
///   h1: scalar ds^2/s^2 slot, h2: mixed one-form slot,
///   h3: coefficient of g0 in the spatial block, h4: trace-free remainder.
struct Block4Field {
  SpatialField h1;
  SpatialField h2;
  SpatialField h3;
  SpatialField h4;

  double sup_norm() const;
};

Block4Field split4(const SpatialField& t, const SpatialMetric& g0);
SpatialField unsplit4(const Block4Field& b, const SpatialMetric& g0);

/// Coefficient-level parity diagnostics of a frame series (typically an
/// Einstein residual): for even-parity block-diagonal metrics the mixed slot
/// is odd in s and the other slots are even, so h2 must vanish at even
/// orders and h1/h3/h4 at odd orders.
struct ParityDefects {
  double h2_at_even_orders = 0.0;
  double diag_at_odd_orders = 0.0;
  double scale = 0.0;  // sup norm of the series, for relative statements
};

ParityDefects parity_defects(const PhgSeries& series, const SpatialMetric& g0, int max_order);

}  // namespace fgx
