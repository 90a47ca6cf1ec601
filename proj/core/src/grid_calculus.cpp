#include "fgx/grid_calculus.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace fgx {

SpatialField partial_derivative0(const SpatialField& f, int axis0) {
  const Chart& chart = *f.chart();
  if (axis0 < 0 || axis0 >= chart.dim()) throw std::invalid_argument("partial_derivative: axis out of range");
  SpatialField out(f.chart(), f.rank(), f.kind());
  const int R = chart.resolution()[static_cast<std::size_t>(axis0)];
  if (R == 1) return out;
  const std::size_t stride = chart.stride(axis0);
  const std::size_t nodes = chart.num_nodes();
  const std::vector<double>& D = chart.deriv_matrix(axis0);
  const std::size_t block = stride * static_cast<std::size_t>(R);
  for (std::size_t c = 0; c < f.num_components(); ++c) {
    const double* in = f.comp(c);
    double* o = out.comp(c);
    for (std::size_t chunk = 0; chunk < nodes; chunk += block) {
      for (std::size_t off = 0; off < stride; ++off) {
        const std::size_t base = chunk + off;
        // Shift the line by its first value: the derivative annihilates
        // constants analytically, and centering makes that exact in floating
        // point (constant lines give exactly zero).
        const double shift = in[base];
        for (int j = 0; j < R; ++j) {
          double acc = 0.0;
          const double* Dj = D.data() + static_cast<std::size_t>(j) * R;
          for (int l = 0; l < R; ++l) {
            acc += Dj[l] * (in[base + static_cast<std::size_t>(l) * stride] - shift);
          }
          o[base + static_cast<std::size_t>(j) * stride] = acc;
        }
      }
    }
  }
  return out;
}

SpatialField partial_derivative(const SpatialField& f, int axis) {
  if (axis < 1 || axis > f.chart()->dim()) throw std::invalid_argument("partial_derivative: axis out of range");
  return partial_derivative0(f, axis - 1);
}

SpatialField christoffel(const SpatialMetric& g) {
  const ChartPtr chart = g.chart();
  const int n = chart->dim();
  const std::size_t nodes = chart->num_nodes();
  std::vector<SpatialField> dg;
  dg.reserve(static_cast<std::size_t>(n));
  for (int l = 0; l < n; ++l) dg.push_back(partial_derivative0(g.g(), l));

  SpatialField gamma(chart, 3);
  const SpatialField& ginv = g.inv();
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        double* out = gamma.comp(gamma.comp_index({k, i, j}));
        for (int l = 0; l < n; ++l) {
          const double* gi = ginv.comp(ginv.comp_index({k, l}));
          const double* a = dg[static_cast<std::size_t>(i)].comp(g.g().comp_index({j, l}));
          const double* b = dg[static_cast<std::size_t>(j)].comp(g.g().comp_index({i, l}));
          const double* c = dg[static_cast<std::size_t>(l)].comp(g.g().comp_index({i, j}));
          for (std::size_t p = 0; p < nodes; ++p) out[p] += 0.5 * gi[p] * (a[p] + b[p] - c[p]);
        }
        if (j != i) {
          double* mirror = gamma.comp(gamma.comp_index({k, j, i}));
          for (std::size_t p = 0; p < nodes; ++p) mirror[p] = out[p];
        }
      }
    }
  }
  return gamma;
}

SpatialField ricci(const SpatialMetric& g) {
  const ChartPtr chart = g.chart();
  const int n = chart->dim();
  const std::size_t nodes = chart->num_nodes();
  const SpatialField gamma = christoffel(g);
  std::vector<SpatialField> dgamma;
  dgamma.reserve(static_cast<std::size_t>(n));
  for (int l = 0; l < n; ++l) dgamma.push_back(partial_derivative0(gamma, l));

  // R_ij = d_k Gamma^k_{ij} - d_i Gamma^k_{kj} + Gamma^k_{kl} Gamma^l_{ij}
  //        - Gamma^k_{il} Gamma^l_{kj}
  SpatialField ric(chart, 2);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double* out = ric.comp(ric.comp_index({i, j}));
      for (int k = 0; k < n; ++k) {
        const double* t1 = dgamma[static_cast<std::size_t>(k)].comp(gamma.comp_index({k, i, j}));
        const double* t2 = dgamma[static_cast<std::size_t>(i)].comp(gamma.comp_index({k, k, j}));
        for (std::size_t p = 0; p < nodes; ++p) out[p] += t1[p] - t2[p];
        for (int l = 0; l < n; ++l) {
          const double* a = gamma.comp(gamma.comp_index({k, k, l}));
          const double* b = gamma.comp(gamma.comp_index({l, i, j}));
          const double* c = gamma.comp(gamma.comp_index({k, i, l}));
          const double* d = gamma.comp(gamma.comp_index({l, k, j}));
          for (std::size_t p = 0; p < nodes; ++p) out[p] += a[p] * b[p] - c[p] * d[p];
        }
      }
    }
  }
  return ric;
}

SpatialField scalar_curvature(const SpatialMetric& g) { return trace(g, ricci(g)); }

SpatialField trace(const SpatialMetric& g, const SpatialField& t) {
  if (t.rank() != 2 || t.kind() != IndexKind::spatial) {
    throw std::invalid_argument("trace: expects a spatial rank-2 field");
  }
  if (!t.same_shape(g.g())) throw std::invalid_argument("trace: chart mismatch");
  const int n = g.dim();
  const std::size_t nodes = t.num_nodes();
  SpatialField out(t.chart(), 0);
  double* o = out.comp(0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double* gi = g.inv().comp(g.inv().comp_index({i, j}));
      const double* tc = t.comp(t.comp_index({i, j}));
      for (std::size_t p = 0; p < nodes; ++p) o[p] += gi[p] * tc[p];
    }
  }
  return out;
}

SpatialField divergence(const SpatialMetric& g, const SpatialField& k) {
  if (k.rank() != 2) throw std::invalid_argument("divergence: expects rank-2 field");
  if (k.max_asymmetry() > 1e-12 * std::max(1.0, k.sup_norm())) {
    throw std::invalid_argument("divergence: field is not symmetric");
  }
  const ChartPtr chart = g.chart();
  const int n = chart->dim();
  const std::size_t nodes = chart->num_nodes();
  const SpatialField gamma = christoffel(g);
  std::vector<SpatialField> dk;
  dk.reserve(static_cast<std::size_t>(n));
  for (int b = 0; b < n; ++b) dk.push_back(partial_derivative0(k, b));

  // (delta k)_i = -g^{ab} (d_b k_{ia} - Gamma^m_{bi} k_{ma} - Gamma^m_{ba} k_{im})
  SpatialField out(chart, 1);
  for (int i = 0; i < n; ++i) {
    double* o = out.comp(static_cast<std::size_t>(i));
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        const double* gi = g.inv().comp(g.inv().comp_index({a, b}));
        const double* d = dk[static_cast<std::size_t>(b)].comp(k.comp_index({i, a}));
        for (std::size_t p = 0; p < nodes; ++p) o[p] -= gi[p] * d[p];
        for (int m = 0; m < n; ++m) {
          const double* g1 = gamma.comp(gamma.comp_index({m, b, i}));
          const double* k1 = k.comp(k.comp_index({m, a}));
          const double* g2 = gamma.comp(gamma.comp_index({m, b, a}));
          const double* k2 = k.comp(k.comp_index({i, m}));
          for (std::size_t p = 0; p < nodes; ++p) o[p] += gi[p] * (g1[p] * k1[p] + g2[p] * k2[p]);
        }
      }
    }
  }
  return out;
}

SpatialField tracefree_part(const SpatialMetric& g, const SpatialField& t) {
  const SpatialField tr = trace(g, t);
  const int n = g.dim();
  const std::size_t nodes = t.num_nodes();
  SpatialField out = t;
  const double* trv = tr.comp(0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double* o = out.comp(out.comp_index({i, j}));
      const double* gv = g.g().comp(g.g().comp_index({i, j}));
      for (std::size_t p = 0; p < nodes; ++p) o[p] -= trv[p] * gv[p] / static_cast<double>(n);
    }
  }
  return out;
}

SpatialField squared_norm(const SpatialMetric& g, const SpatialField& t) {
  const int n = g.dim();
  const std::size_t nodes = t.num_nodes();
  SpatialField out(t.chart(), 0);
  double* o = out.comp(0);
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < n; ++a) {
      for (int j = 0; j < n; ++j) {
        for (int b = 0; b < n; ++b) {
          const double* g1 = g.inv().comp(g.inv().comp_index({i, a}));
          const double* g2 = g.inv().comp(g.inv().comp_index({j, b}));
          const double* t1 = t.comp(t.comp_index({i, j}));
          const double* t2 = t.comp(t.comp_index({a, b}));
          for (std::size_t p = 0; p < nodes; ++p) o[p] += g1[p] * g2[p] * t1[p] * t2[p];
        }
      }
    }
  }
  return out;
}

std::pair<SpatialField, SpatialField> check_constraints(const SpatialMetric& gamma,
                                                        const SpatialField& k, double lambda) {
  const SpatialField r = scalar_curvature(gamma);
  const SpatialField k2 = squared_norm(gamma, k);
  const SpatialField trk = trace(gamma, k);
  const std::size_t nodes = r.num_nodes();

  SpatialField hamiltonian(gamma.chart(), 0);
  {
    double* o = hamiltonian.comp(0);
    const double* rv = r.comp(0);
    const double* kv = k2.comp(0);
    const double* tv = trk.comp(0);
    for (std::size_t p = 0; p < nodes; ++p) o[p] = rv[p] - kv[p] + tv[p] * tv[p] - 2.0 * lambda;
  }

  SpatialField momentum = divergence(gamma, k);
  for (int i = 0; i < gamma.dim(); ++i) {
    const SpatialField dtrk = partial_derivative0(trk, i);
    double* o = momentum.comp(static_cast<std::size_t>(i));
    const double* d = dtrk.comp(0);
    for (std::size_t p = 0; p < nodes; ++p) o[p] += d[p];
  }
  return {hamiltonian, momentum};
}

namespace {

using cd = std::complex<double>;

/// Dense DFT along one axis of a complex grid array (forward: sign = -1).
void dft_axis(std::vector<cd>& data, const Chart& chart, int axis, int sign) {
  const int R = chart.resolution()[static_cast<std::size_t>(axis)];
  if (R == 1) return;
  const std::size_t stride = chart.stride(axis);
  const std::size_t nodes = chart.num_nodes();
  const std::size_t block = stride * static_cast<std::size_t>(R);
  std::vector<cd> line(static_cast<std::size_t>(R));
  std::vector<cd> twiddle(static_cast<std::size_t>(R) * R);
  for (int k = 0; k < R; ++k) {
    for (int j = 0; j < R; ++j) {
      const double ang = sign * 2.0 * std::numbers::pi *
                         static_cast<double>((static_cast<long long>(k) * j) % R) / R;
      twiddle[static_cast<std::size_t>(k) * R + j] = cd(std::cos(ang), std::sin(ang));
    }
  }
  const double scale = sign < 0 ? 1.0 : 1.0 / static_cast<double>(R);
  for (std::size_t chunk = 0; chunk < nodes; chunk += block) {
    for (std::size_t off = 0; off < stride; ++off) {
      const std::size_t base = chunk + off;
      for (int j = 0; j < R; ++j) line[static_cast<std::size_t>(j)] = data[base + static_cast<std::size_t>(j) * stride];
      for (int k = 0; k < R; ++k) {
        cd acc(0.0, 0.0);
        const cd* tw = twiddle.data() + static_cast<std::size_t>(k) * R;
        for (int j = 0; j < R; ++j) acc += tw[j] * line[static_cast<std::size_t>(j)];
        data[base + static_cast<std::size_t>(k) * stride] = scale * acc;
      }
    }
  }
}

}  // namespace

SpatialField tt_project_flat(const SpatialField& t) {
  if (t.rank() != 2 || t.kind() != IndexKind::spatial) {
    throw std::invalid_argument("tt_project_flat: expects a spatial rank-2 field");
  }
  const Chart& chart = *t.chart();
  const int n = chart.dim();
  const std::size_t nodes = chart.num_nodes();
  const std::size_t comps = t.num_components();

  std::vector<std::vector<cd>> hat(comps, std::vector<cd>(nodes));
  for (std::size_t c = 0; c < comps; ++c) {
    const double* src = t.comp(c);
    for (std::size_t p = 0; p < nodes; ++p) hat[c][p] = cd(src[p], 0.0);
    for (int a = 0; a < n; ++a) dft_axis(hat[c], chart, a, -1);
  }

  // Per-frequency projection. q is the physical wavevector of the node's
  // frequency tuple; the Nyquist sign choice is irrelevant (P is even in q).
  std::vector<double> q(static_cast<std::size_t>(n));
  std::vector<cd> A(static_cast<std::size_t>(n) * n);
  std::vector<double> P(static_cast<std::size_t>(n) * n);
  for (std::size_t p = 0; p < nodes; ++p) {
    for (int a = 0; a < n; ++a) {
      const int R = chart.resolution()[static_cast<std::size_t>(a)];
      int k = static_cast<int>((p / chart.stride(a)) % static_cast<std::size_t>(R));
      if (k > R / 2) k -= R;
      q[static_cast<std::size_t>(a)] = 2.0 * std::numbers::pi * k / chart.period()[static_cast<std::size_t>(a)];
    }
    double q2 = 0.0;
    for (int a = 0; a < n; ++a) q2 += q[static_cast<std::size_t>(a)] * q[static_cast<std::size_t>(a)];

    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        A[static_cast<std::size_t>(i) * n + j] = hat[t.comp_index({i, j})][p];
      }
    }

    if (q2 == 0.0) {
      // Zero mode: constants are divergence-free; remove the trace part.
      cd tr(0.0, 0.0);
      for (int i = 0; i < n; ++i) tr += A[static_cast<std::size_t>(i) * n + i];
      for (int i = 0; i < n; ++i) A[static_cast<std::size_t>(i) * n + i] -= tr / static_cast<double>(n);
    } else {
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          P[static_cast<std::size_t>(i) * n + j] =
              (i == j ? 1.0 : 0.0) - q[static_cast<std::size_t>(i)] * q[static_cast<std::size_t>(j)] / q2;
        }
      }
      std::vector<cd> PA(static_cast<std::size_t>(n) * n, cd(0, 0));
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          cd acc(0, 0);
          for (int m = 0; m < n; ++m) acc += P[static_cast<std::size_t>(i) * n + m] * A[static_cast<std::size_t>(m) * n + j];
          PA[static_cast<std::size_t>(i) * n + j] = acc;
        }
      }
      std::vector<cd> PAP(static_cast<std::size_t>(n) * n, cd(0, 0));
      cd trPA(0, 0);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          cd acc(0, 0);
          for (int m = 0; m < n; ++m) acc += PA[static_cast<std::size_t>(i) * n + m] * P[static_cast<std::size_t>(m) * n + j];
          PAP[static_cast<std::size_t>(i) * n + j] = acc;
        }
        trPA += PAP[static_cast<std::size_t>(i) * n + i];
      }
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          A[static_cast<std::size_t>(i) * n + j] =
              PAP[static_cast<std::size_t>(i) * n + j] -
              trPA * P[static_cast<std::size_t>(i) * n + j] / static_cast<double>(n - 1);
        }
      }
    }

    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        hat[t.comp_index({i, j})][p] = A[static_cast<std::size_t>(i) * n + j];
      }
    }
  }

  SpatialField out(t.chart(), 2);
  for (std::size_t c = 0; c < comps; ++c) {
    for (int a = 0; a < n; ++a) dft_axis(hat[c], chart, a, +1);
    double* dst = out.comp(c);
    for (std::size_t p = 0; p < nodes; ++p) dst[p] = hat[c][p].real();
  }
  out.symmetrize();
  return out;
}

}  // namespace fgx
