#pragma once

#include <vector>

#include "fgx/spatial_field.hpp"

namespace fgx {

/// One Fourier contribution to a symmetric rank-2 field:
///   amplitude * cos(sum_a k[a] * (2 pi / period[a]) * x_a + phase)
/// added to component (ci, cj) only (0-based component indices). Symmetric
/// tensors therefore need matching (ci, cj) and (cj, ci) entries unless
/// ci == cj; validators reject one-sided specs.
struct FourierMode {
  int ci = 0;
  int cj = 0;
  std::vector<int> k;
  double amplitude = 0.0;
  double phase = 0.0;
};

/// Evaluate the mode sum for component (ci, cj) at a coordinate point.
double modes_value_at(const std::vector<FourierMode>& modes, const std::vector<double>& period,
                      int ci, int cj, const std::vector<double>& x);

/// Build a rank-2 field from modes; add_identity adds the Kronecker delta.
SpatialField sym2_from_modes(const ChartPtr& chart, const std::vector<FourierMode>& modes,
                             bool add_identity);

/// True when every off-diagonal mode has a matching transposed partner.
bool modes_are_symmetric(const std::vector<FourierMode>& modes);

/// Convenience: append the pair (ci,cj) and (cj,ci) sharing one waveform.
void push_sym_mode(std::vector<FourierMode>& modes, int ci, int cj, std::vector<int> k,
                   double amplitude, double phase = 0.0);

}  // namespace fgx
