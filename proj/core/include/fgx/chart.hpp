#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace fgx {

/// Uniform periodic n-dimensional chart (a flat torus patch). Axes with
/// resolution 1 carry fields that are constant along that axis; their
/// derivatives vanish identically, which keeps larger n affordable when the
/// data only varies in a couple of directions.
class Chart {
 public:
  /// resolution: grid points per axis (size n, each >= 1).
  /// period: axis periods (size n, each > 0); defaults to 2*pi everywhere.
  Chart(int n, std::vector<int> resolution, std::vector<double> period = {});

  static std::shared_ptr<const Chart> make(int n, std::vector<int> resolution,
                                           std::vector<double> period = {});

  int dim() const { return n_; }
  const std::vector<int>& resolution() const { return resolution_; }
  const std::vector<double>& period() const { return period_; }
  std::size_t num_nodes() const { return num_nodes_; }
  std::size_t stride(int axis) const { return strides_[static_cast<std::size_t>(axis)]; }

  /// Coordinate of grid index j along an axis: j * period/resolution.
  double coord(int axis, int j) const;

  /// Dense real trigonometric differentiation matrix for one axis
  /// (resolution x resolution, row-major). Exact on resolved Fourier modes;
  /// the Nyquist mode of even resolutions is mapped to zero. Empty for
  /// resolution-1 axes.
  const std::vector<double>& deriv_matrix(int axis) const {
    return deriv_[static_cast<std::size_t>(axis)];
  }

  bool same_as(const Chart& other) const;

 private:
  int n_;
  std::vector<int> resolution_;
  std::vector<double> period_;
  std::vector<std::size_t> strides_;
  std::size_t num_nodes_;
  std::vector<std::vector<double>> deriv_;
};

using ChartPtr = std::shared_ptr<const Chart>;

}  // namespace fgx
