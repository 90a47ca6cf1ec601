#pragma once

#include "fgx/grid_calculus.hpp"
#include "fgx/spatial_field.hpp"

namespace fgx {

/// Tolerance ladder of the expansion engine. Every threshold is applied
/// relative to the largest metric-coefficient sup norm of the run; the
/// scale_factor is a global multiplier (CLI --tol-scale).
struct Tolerances {
  double compatibility = 1e-9;  // solvability / kernel defects
  double parity = 1e-10;        // vanishing of odd-order forcings
  double zero_coeff = 1e-12;    // treat coefficients below this as zero
  double drop = 1e-15;          // series normalization floor
  double scale_factor = 1.0;

  double compat_at(double scale) const { return compatibility * scale_factor * scale; }
  double parity_at(double scale) const { return parity * scale_factor * scale; }
  double zero_at(double scale) const { return zero_coeff * scale_factor * scale; }
};

/// Scattering data for the expansion: boundary metric g0 and the free
/// trace-free order-n coefficient gn, plus the truncation order N >= n.
struct BoundaryData {
  int n;
  int N;
  SpatialMetric g0;
  SpatialField gn;  // symmetric spatial rank-2; may be identically zero
  Tolerances tol{};
};

/// Data-quality report: trace and divergence of gn with respect to g0.
/// Positive definiteness of g0 is enforced by SpatialMetric itself and is
/// echoed here. The divergence condition is only a hard constraint for odd
/// n; the engine enforces it dynamically through the order-(n+1)
/// solvability check rather than up front.
struct DataDefects {
  double trace_defect = 0.0;
  double divergence_defect = 0.0;
  bool positive_definite = true;
};

DataDefects validate_boundary_data(const BoundaryData& d);

}  // namespace fgx
