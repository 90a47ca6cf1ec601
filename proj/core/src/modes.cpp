#include "fgx/modes.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fgx {

double modes_value_at(const std::vector<FourierMode>& modes, const std::vector<double>& period,
                      int ci, int cj, const std::vector<double>& x) {
  double out = 0.0;
  for (const FourierMode& m : modes) {
    if (m.ci != ci || m.cj != cj) continue;
    double arg = m.phase;
    for (std::size_t a = 0; a < x.size(); ++a) {
      const int k = a < m.k.size() ? m.k[a] : 0;
      arg += 2.0 * std::numbers::pi * k * x[a] / period[a];
    }
    out += m.amplitude * std::cos(arg);
  }
  return out;
}

SpatialField sym2_from_modes(const ChartPtr& chart, const std::vector<FourierMode>& modes,
                             bool add_identity) {
  const int n = chart->dim();
  SpatialField f = add_identity ? SpatialField::identity(chart) : SpatialField::zeros(chart, 2);
  const std::size_t nodes = chart->num_nodes();
  std::vector<double> x(static_cast<std::size_t>(n));
  for (const FourierMode& m : modes) {
    if (m.ci < 0 || m.ci >= n || m.cj < 0 || m.cj >= n) {
      throw std::invalid_argument("FourierMode: component index out of range");
    }
    if (static_cast<int>(m.k.size()) > n) {
      throw std::invalid_argument("FourierMode: wavenumber tuple longer than n");
    }
    double* comp = f.comp(f.comp_index({m.ci, m.cj}));
    for (std::size_t p = 0; p < nodes; ++p) {
      double arg = m.phase;
      for (int a = 0; a < n; ++a) {
        const int R = chart->resolution()[static_cast<std::size_t>(a)];
        const int j = static_cast<int>((p / chart->stride(a)) % static_cast<std::size_t>(R));
        const int k = a < static_cast<int>(m.k.size()) ? m.k[a] : 0;
        arg += 2.0 * std::numbers::pi * k * chart->coord(a, j) / chart->period()[static_cast<std::size_t>(a)];
      }
      comp[p] += m.amplitude * std::cos(arg);
    }
  }
  return f;
}

bool modes_are_symmetric(const std::vector<FourierMode>& modes) {
  for (const FourierMode& m : modes) {
    if (m.ci == m.cj) continue;
    bool matched = false;
    for (const FourierMode& o : modes) {
      if (o.ci == m.cj && o.cj == m.ci && o.k == m.k && o.amplitude == m.amplitude &&
          o.phase == m.phase) {
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

void push_sym_mode(std::vector<FourierMode>& modes, int ci, int cj, std::vector<int> k,
                   double amplitude, double phase) {
  modes.push_back({ci, cj, k, amplitude, phase});
  if (ci != cj) modes.push_back({cj, ci, std::move(k), amplitude, phase});
}

}  // namespace fgx
