#include "fgx/chart.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fgx {

Chart::Chart(int n, std::vector<int> resolution, std::vector<double> period)
    : n_(n), resolution_(std::move(resolution)), period_(std::move(period)) {
  if (n_ < 3) throw std::invalid_argument("Chart: spatial dimension must be >= 3");
  if (static_cast<int>(resolution_.size()) != n_) {
    throw std::invalid_argument("Chart: resolution size must equal n");
  }
  if (period_.empty()) period_.assign(static_cast<std::size_t>(n_), 2.0 * std::numbers::pi);
  if (static_cast<int>(period_.size()) != n_) {
    throw std::invalid_argument("Chart: period size must equal n");
  }
  for (int a = 0; a < n_; ++a) {
    if (resolution_[static_cast<std::size_t>(a)] < 1) {
      throw std::invalid_argument("Chart: every resolution must be >= 1");
    }
    if (!(period_[static_cast<std::size_t>(a)] > 0.0)) {
      throw std::invalid_argument("Chart: periods must be positive");
    }
  }

  strides_.assign(static_cast<std::size_t>(n_), 1);
  num_nodes_ = 1;
  for (int a = n_ - 1; a >= 0; --a) {
    strides_[static_cast<std::size_t>(a)] = num_nodes_;
    num_nodes_ *= static_cast<std::size_t>(resolution_[static_cast<std::size_t>(a)]);
  }

  // Realified DFT differentiation matrices in closed form: for points
  // x_j = j L / R the trigonometric-interpolation derivative (with the even-R
  // Nyquist mode sent to zero) is the circulant
  //   D_{jl} = (2 pi / L) * (1/2) (-1)^(j-l) * cot(pi (j-l)/R)   (R even)
  //   D_{jl} = (2 pi / L) * (1/2) (-1)^(j-l) / sin(pi (j-l)/R)   (R odd)
  // with zero diagonal.
  deriv_.resize(static_cast<std::size_t>(n_));
  for (int a = 0; a < n_; ++a) {
    const int R = resolution_[static_cast<std::size_t>(a)];
    if (R == 1) continue;
    const double L = period_[static_cast<std::size_t>(a)];
    auto& D = deriv_[static_cast<std::size_t>(a)];
    D.assign(static_cast<std::size_t>(R) * R, 0.0);
    const double scale = 2.0 * std::numbers::pi / L;
    for (int j = 0; j < R; ++j) {
      for (int l = 0; l < R; ++l) {
        if (j == l) continue;
        const int delta = j - l;
        const double angle = std::numbers::pi * delta / static_cast<double>(R);
        const double sign = (delta % 2 == 0) ? 1.0 : -1.0;
        const double entry = (R % 2 == 0) ? 0.5 * sign * std::cos(angle) / std::sin(angle)
                                          : 0.5 * sign / std::sin(angle);
        D[static_cast<std::size_t>(j) * R + l] = scale * entry;
      }
    }
  }
}

std::shared_ptr<const Chart> Chart::make(int n, std::vector<int> resolution,
                                         std::vector<double> period) {
  return std::make_shared<const Chart>(n, std::move(resolution), std::move(period));
}

double Chart::coord(int axis, int j) const {
  const auto a = static_cast<std::size_t>(axis);
  return period_[a] * static_cast<double>(j) / static_cast<double>(resolution_[a]);
}

bool Chart::same_as(const Chart& other) const {
  return n_ == other.n_ && resolution_ == other.resolution_ && period_ == other.period_;
}

}  // namespace fgx
