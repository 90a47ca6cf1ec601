#include "fgx/boundary_data.hpp"

#include <stdexcept>

namespace fgx {

DataDefects validate_boundary_data(const BoundaryData& d) {
  if (d.n != d.g0.dim()) throw std::invalid_argument("BoundaryData: n does not match the chart");
  if (d.N < d.n) throw std::invalid_argument("BoundaryData: truncation order N must be >= n");
  if (!d.gn.same_shape(d.g0.g())) throw std::invalid_argument("BoundaryData: gn shape mismatch");
  if (d.gn.max_asymmetry() > 1e-12 * std::max(1.0, d.gn.sup_norm())) {
    throw std::invalid_argument("BoundaryData: gn is not symmetric");
  }
  DataDefects out;
  out.trace_defect = trace(d.g0, d.gn).sup_norm();
  out.divergence_defect = divergence(d.g0, d.gn).sup_norm();
  out.positive_definite = true;  // SpatialMetric construction already enforced this
  return out;
}

}  // namespace fgx
