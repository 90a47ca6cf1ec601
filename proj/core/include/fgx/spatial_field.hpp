#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "fgx/chart.hpp"

namespace fgx {

/// Whether tensor indices of a field range over the n spatial directions or
/// over the n+1 frame directions (0 = s-direction, 1..n spatial).
enum class IndexKind { spatial, spacetime };

/// Rank-r covariant tensor field on a Chart, stored densely on the grid,
/// component-major. Values are immutable in spirit: operations return new
/// fields; in-place mutation is used only while assembling a value.
class SpatialField {
 public:
  SpatialField() = default;
  SpatialField(ChartPtr chart, int rank, IndexKind kind = IndexKind::spatial);

  static SpatialField zeros(ChartPtr chart, int rank, IndexKind kind = IndexKind::spatial);
  /// Constant scalar field.
  static SpatialField constant(ChartPtr chart, double value);
  /// Kronecker-delta rank-2 field (spatial or spacetime index range).
  static SpatialField identity(ChartPtr chart, IndexKind kind = IndexKind::spatial);

  bool valid() const { return chart_ != nullptr; }
  const ChartPtr& chart() const { return chart_; }
  int rank() const { return rank_; }
  IndexKind kind() const { return kind_; }
  /// Number of values each tensor index takes (n or n+1).
  int index_dim() const;
  std::size_t num_components() const { return num_components_; }
  std::size_t num_nodes() const { return chart_->num_nodes(); }

  double* comp(std::size_t c) { return data_.data() + c * num_nodes(); }
  const double* comp(std::size_t c) const { return data_.data() + c * num_nodes(); }

  /// Flattened component index of a tensor multi-index.
  std::size_t comp_index(std::initializer_list<int> idx) const;
  std::size_t comp_index(const std::vector<int>& idx) const;

  double& at(std::initializer_list<int> idx, std::size_t node) {
    return data_[comp_index(idx) * num_nodes() + node];
  }
  double at(std::initializer_list<int> idx, std::size_t node) const {
    return data_[comp_index(idx) * num_nodes() + node];
  }

  std::vector<double>& raw() { return data_; }
  const std::vector<double>& raw() const { return data_; }

  double sup_norm() const;
  bool same_shape(const SpatialField& o) const;

  SpatialField& operator+=(const SpatialField& o);
  SpatialField& operator-=(const SpatialField& o);
  SpatialField& operator*=(double c);
  friend SpatialField operator+(SpatialField a, const SpatialField& b) { return a += b; }
  friend SpatialField operator-(SpatialField a, const SpatialField& b) { return a -= b; }
  friend SpatialField operator*(SpatialField a, double c) { return a *= c; }
  friend SpatialField operator*(double c, SpatialField a) { return a *= c; }
  SpatialField operator-() const;

  /// Max over nodes of |a(i,j) - a(j,i)| for rank-2 fields.
  double max_asymmetry() const;
  /// Symmetrize a rank-2 field in place.
  void symmetrize();

 private:
  ChartPtr chart_;
  int rank_ = 0;
  IndexKind kind_ = IndexKind::spatial;
  std::size_t num_components_ = 0;
  std::vector<double> data_;
};

/// Riemannian metric on a chart: a symmetric positive definite rank-2 field
/// together with its pointwise inverse. Positive definiteness is checked at
/// construction by pointwise Cholesky factorization (pivot threshold 1e-10).
class SpatialMetric {
 public:
  explicit SpatialMetric(SpatialField g);

  const SpatialField& g() const { return g_; }
  const SpatialField& inv() const { return inv_; }
  const ChartPtr& chart() const { return g_.chart(); }
  int dim() const { return g_.chart()->dim(); }

 private:
  SpatialField g_;
  SpatialField inv_;
};

/// Pointwise inverse of a symmetric rank-2 field (spatial or spacetime kind);
/// throws if any nodal matrix is singular. Not restricted to definite input.
SpatialField pointwise_inverse(const SpatialField& g, double pivot_tol = 1e-13);

}  // namespace fgx
