#include "fgx/spatial_field.hpp"

#include <cmath>
#include <stdexcept>

namespace fgx {

namespace {

std::size_t ipow(std::size_t base, int exp) {
  std::size_t out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

}  // namespace

SpatialField::SpatialField(ChartPtr chart, int rank, IndexKind kind)
    : chart_(std::move(chart)), rank_(rank), kind_(kind) {
  if (!chart_) throw std::invalid_argument("SpatialField: null chart");
  if (rank_ < 0) throw std::invalid_argument("SpatialField: negative rank");
  num_components_ = ipow(static_cast<std::size_t>(index_dim()), rank_);
  data_.assign(num_components_ * chart_->num_nodes(), 0.0);
}

SpatialField SpatialField::zeros(ChartPtr chart, int rank, IndexKind kind) {
  return SpatialField(std::move(chart), rank, kind);
}

SpatialField SpatialField::constant(ChartPtr chart, double value) {
  SpatialField f(std::move(chart), 0);
  for (auto& v : f.data_) v = value;
  return f;
}

SpatialField SpatialField::identity(ChartPtr chart, IndexKind kind) {
  SpatialField f(std::move(chart), 2, kind);
  const int d = f.index_dim();
  const std::size_t nodes = f.num_nodes();
  for (int i = 0; i < d; ++i) {
    double* c = f.comp(static_cast<std::size_t>(i) * d + i);
    for (std::size_t p = 0; p < nodes; ++p) c[p] = 1.0;
  }
  return f;
}

int SpatialField::index_dim() const {
  return kind_ == IndexKind::spatial ? chart_->dim() : chart_->dim() + 1;
}

std::size_t SpatialField::comp_index(std::initializer_list<int> idx) const {
  std::size_t c = 0;
  const auto d = static_cast<std::size_t>(index_dim());
  for (int i : idx) c = c * d + static_cast<std::size_t>(i);
  return c;
}

std::size_t SpatialField::comp_index(const std::vector<int>& idx) const {
  std::size_t c = 0;
  const auto d = static_cast<std::size_t>(index_dim());
  for (int i : idx) c = c * d + static_cast<std::size_t>(i);
  return c;
}

double SpatialField::sup_norm() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

bool SpatialField::same_shape(const SpatialField& o) const {
  return chart_ && o.chart_ && chart_->same_as(*o.chart_) && rank_ == o.rank_ && kind_ == o.kind_;
}

SpatialField& SpatialField::operator+=(const SpatialField& o) {
  if (!same_shape(o)) throw std::invalid_argument("SpatialField: shape mismatch in +=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

SpatialField& SpatialField::operator-=(const SpatialField& o) {
  if (!same_shape(o)) throw std::invalid_argument("SpatialField: shape mismatch in -=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

SpatialField& SpatialField::operator*=(double c) {
  for (auto& v : data_) v *= c;
  return *this;
}

SpatialField SpatialField::operator-() const {
  SpatialField out = *this;
  for (auto& v : out.data_) v = -v;
  return out;
}

double SpatialField::max_asymmetry() const {
  if (rank_ != 2) throw std::invalid_argument("max_asymmetry: rank-2 fields only");
  const int d = index_dim();
  const std::size_t nodes = num_nodes();
  double m = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      const double* a = comp(static_cast<std::size_t>(i) * d + j);
      const double* b = comp(static_cast<std::size_t>(j) * d + i);
      for (std::size_t p = 0; p < nodes; ++p) m = std::max(m, std::abs(a[p] - b[p]));
    }
  }
  return m;
}

void SpatialField::symmetrize() {
  if (rank_ != 2) throw std::invalid_argument("symmetrize: rank-2 fields only");
  const int d = index_dim();
  const std::size_t nodes = num_nodes();
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      double* a = comp(static_cast<std::size_t>(i) * d + j);
      double* b = comp(static_cast<std::size_t>(j) * d + i);
      for (std::size_t p = 0; p < nodes; ++p) {
        const double v = 0.5 * (a[p] + b[p]);
        a[p] = v;
        b[p] = v;
      }
    }
  }
}

namespace {

/// In-place Cholesky of a dense d x d matrix; returns false if a pivot drops
/// below tol.
bool cholesky(std::vector<double>& m, int d, double tol) {
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j <= i; ++j) {
      double sum = m[static_cast<std::size_t>(i) * d + j];
      for (int k = 0; k < j; ++k) {
        sum -= m[static_cast<std::size_t>(i) * d + k] * m[static_cast<std::size_t>(j) * d + k];
      }
      if (i == j) {
        if (sum < tol) return false;
        m[static_cast<std::size_t>(i) * d + j] = std::sqrt(sum);
      } else {
        m[static_cast<std::size_t>(i) * d + j] = sum / m[static_cast<std::size_t>(j) * d + j];
      }
    }
  }
  return true;
}

/// Gauss-Jordan inverse with partial pivoting.
bool invert_dense(std::vector<double> m, int d, std::vector<double>& inv, double pivot_tol) {
  inv.assign(static_cast<std::size_t>(d) * d, 0.0);
  for (int i = 0; i < d; ++i) inv[static_cast<std::size_t>(i) * d + i] = 1.0;
  for (int col = 0; col < d; ++col) {
    int pivot = col;
    double best = std::abs(m[static_cast<std::size_t>(col) * d + col]);
    for (int r = col + 1; r < d; ++r) {
      const double v = std::abs(m[static_cast<std::size_t>(r) * d + col]);
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (best < pivot_tol) return false;
    if (pivot != col) {
      for (int c = 0; c < d; ++c) {
        std::swap(m[static_cast<std::size_t>(pivot) * d + c], m[static_cast<std::size_t>(col) * d + c]);
        std::swap(inv[static_cast<std::size_t>(pivot) * d + c],
                  inv[static_cast<std::size_t>(col) * d + c]);
      }
    }
    const double diag = m[static_cast<std::size_t>(col) * d + col];
    for (int c = 0; c < d; ++c) {
      m[static_cast<std::size_t>(col) * d + c] /= diag;
      inv[static_cast<std::size_t>(col) * d + c] /= diag;
    }
    for (int r = 0; r < d; ++r) {
      if (r == col) continue;
      const double f = m[static_cast<std::size_t>(r) * d + col];
      if (f == 0.0) continue;
      for (int c = 0; c < d; ++c) {
        m[static_cast<std::size_t>(r) * d + c] -= f * m[static_cast<std::size_t>(col) * d + c];
        inv[static_cast<std::size_t>(r) * d + c] -= f * inv[static_cast<std::size_t>(col) * d + c];
      }
    }
  }
  return true;
}

}  // namespace

SpatialField pointwise_inverse(const SpatialField& g, double pivot_tol) {
  if (g.rank() != 2) throw std::invalid_argument("pointwise_inverse: rank-2 fields only");
  const int d = g.index_dim();
  const std::size_t nodes = g.num_nodes();
  SpatialField out(g.chart(), 2, g.kind());
  std::vector<double> m(static_cast<std::size_t>(d) * d);
  std::vector<double> inv;
  for (std::size_t p = 0; p < nodes; ++p) {
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        m[static_cast<std::size_t>(i) * d + j] = g.comp(static_cast<std::size_t>(i) * d + j)[p];
      }
    }
    if (!invert_dense(m, d, inv, pivot_tol)) {
      throw std::runtime_error("pointwise_inverse: singular matrix at a grid node");
    }
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        out.comp(static_cast<std::size_t>(i) * d + j)[p] = inv[static_cast<std::size_t>(i) * d + j];
      }
    }
  }
  return out;
}

SpatialMetric::SpatialMetric(SpatialField g) : g_(std::move(g)) {
  if (g_.rank() != 2 || g_.kind() != IndexKind::spatial) {
    throw std::invalid_argument("SpatialMetric: expects a spatial rank-2 field");
  }
  if (g_.max_asymmetry() > 1e-13) {
    throw std::invalid_argument("SpatialMetric: field is not symmetric");
  }
  const int d = g_.index_dim();
  const std::size_t nodes = g_.num_nodes();
  std::vector<double> m(static_cast<std::size_t>(d) * d);
  for (std::size_t p = 0; p < nodes; ++p) {
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        m[static_cast<std::size_t>(i) * d + j] = g_.comp(static_cast<std::size_t>(i) * d + j)[p];
      }
    }
    std::vector<double> chol = m;
    if (!cholesky(chol, d, 1e-10)) {
      throw std::invalid_argument("SpatialMetric: not positive definite (Cholesky pivot < 1e-10)");
    }
  }
  inv_ = pointwise_inverse(g_);
}

}  // namespace fgx
