#pragma once

#include <vector>

#include "fgx/frame_calculus.hpp"
#include "fgx/modes.hpp"

namespace fgx {

/// Five-point centered stencil in s used by the coordinate-space curvature
/// oracle. Nested differentiation evaluates the metric at s +/- 4*step, so
/// the whole stencil must stay inside (0, 1).
struct StencilSpec {
  double step = 0.0;  // 0 picks s/512
};

/// Coordinate components of the metric at fixed s (frame components / s^2),
/// as a spacetime rank-2 field.
SpatialField coordinate_metric_at(const BlockMetricSeries& g, double s);

/// Coordinate Ricci tensor at fixed s, computed independently of the frame
/// machinery: coordinate Christoffels by 4th-order finite differences in s
/// (spectral in x), then the Riemann contraction. Returns a spacetime rank-2
/// field of coordinate components.
SpatialField fd_oracle_ricci(const BlockMetricSeries& g, double s, const StencilSpec& stencil = {});

/// Frame series converted to coordinate components at s (divide by s^2).
SpatialField frame_to_coordinates_at(const PhgSeries& frame_tensor, double s);

/// Sup-norm relative comparison with floor 1e-14 on the denominator.
struct CompareResult {
  double max_rel_diff = 0.0;
  bool pass = false;
};
CompareResult compare_fields(const SpatialField& a, const SpatialField& b, double tol);

/// Spatial curvature oracles: evaluate an analytic mode description of a
/// metric on a refine-times-finer grid, differentiate with 4th-order centered
/// finite differences there, and restrict back to the coarse nodes. Fully
/// independent of the spectral engine path.
SpatialField fd_spatial_christoffel_oracle(const ChartPtr& chart,
                                           const std::vector<FourierMode>& modes, bool add_identity,
                                           int refine);
SpatialField fd_spatial_ricci_oracle(const ChartPtr& chart, const std::vector<FourierMode>& modes,
                                     bool add_identity, int refine);

}  // namespace fgx
