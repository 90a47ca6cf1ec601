#include "fgx/fd_oracle.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "fgx/grid_calculus.hpp"

namespace fgx {

SpatialField coordinate_metric_at(const BlockMetricSeries& g, double s) {
  SpatialField out = g.frame().evaluate_at(s);
  out *= 1.0 / (s * s);
  return out;
}

SpatialField frame_to_coordinates_at(const PhgSeries& frame_tensor, double s) {
  SpatialField out = frame_tensor.evaluate_at(s);
  out *= 1.0 / (s * s);
  return out;
}

namespace {

/// 4th-order centered first derivative from a five-point sample
/// f(-2h), f(-h), f(0), f(h), f(2h).
SpatialField fd5_derivative(const std::function<SpatialField(double)>& f, double s, double h) {
  SpatialField out = f(s - 2.0 * h);
  out -= f(s + 2.0 * h);
  SpatialField mid = f(s + h);
  mid -= f(s - h);
  mid *= 8.0;
  out += mid;
  out *= 1.0 / (12.0 * h);
  return out;
}

/// Coordinate Christoffels Gamma^lam_{mu nu} at fixed s; the s-derivative of
/// the metric uses the five-point stencil, spatial derivatives are spectral
/// on the evaluated slice.
SpatialField coordinate_christoffels_at(const BlockMetricSeries& g, double s, double h) {
  const ChartPtr chart = g.chart();
  const int d = chart->dim() + 1;
  const std::size_t nodes = chart->num_nodes();

  const SpatialField metric = coordinate_metric_at(g, s);
  const SpatialField ginv = pointwise_inverse(metric);

  std::vector<SpatialField> dg;
  dg.reserve(static_cast<std::size_t>(d));
  dg.push_back(fd5_derivative([&g](double sv) { return coordinate_metric_at(g, sv); }, s, h));
  for (int a = 0; a < chart->dim(); ++a) dg.push_back(partial_derivative0(metric, a));

  SpatialField gamma(chart, 3, IndexKind::spacetime);
  for (int lam = 0; lam < d; ++lam) {
    for (int mu = 0; mu < d; ++mu) {
      for (int nu = mu; nu < d; ++nu) {
        double* o = gamma.comp(gamma.comp_index({lam, mu, nu}));
        for (int rho = 0; rho < d; ++rho) {
          const double* gi = ginv.comp(ginv.comp_index({lam, rho}));
          const double* a = dg[static_cast<std::size_t>(mu)].comp(metric.comp_index({nu, rho}));
          const double* b = dg[static_cast<std::size_t>(nu)].comp(metric.comp_index({mu, rho}));
          const double* c = dg[static_cast<std::size_t>(rho)].comp(metric.comp_index({mu, nu}));
          for (std::size_t p = 0; p < nodes; ++p) o[p] += 0.5 * gi[p] * (a[p] + b[p] - c[p]);
        }
        if (nu != mu) {
          double* mirror = gamma.comp(gamma.comp_index({lam, nu, mu}));
          const double* src = o;
          for (std::size_t p = 0; p < nodes; ++p) mirror[p] = src[p];
        }
      }
    }
  }
  return gamma;
}

}  // namespace

SpatialField fd_oracle_ricci(const BlockMetricSeries& g, double s, const StencilSpec& stencil) {
  const double h = stencil.step > 0.0 ? stencil.step : s / 512.0;
  if (!(s - 4.0 * h > 0.0) || !(s + 4.0 * h < 1.0)) {
    throw std::invalid_argument("fd_oracle_ricci: stencil leaves (0, 1)");
  }
  const ChartPtr chart = g.chart();
  const int d = chart->dim() + 1;
  const std::size_t nodes = chart->num_nodes();

  const SpatialField gamma = coordinate_christoffels_at(g, s, h);
  std::vector<SpatialField> dgamma;
  dgamma.reserve(static_cast<std::size_t>(d));
  dgamma.push_back(fd5_derivative(
      [&g, h](double sv) { return coordinate_christoffels_at(g, sv, h); }, s, h));
  for (int a = 0; a < chart->dim(); ++a) dgamma.push_back(partial_derivative0(gamma, a));

  // Ricci as the Riemann contraction in a coordinate basis:
  // Ric_{sig nu} = d_mu Gamma^mu_{nu sig} - d_nu Gamma^mu_{mu sig}
  //              + Gamma^mu_{mu lam} Gamma^lam_{nu sig}
  //              - Gamma^mu_{nu lam} Gamma^lam_{mu sig}
  SpatialField ric(chart, 2, IndexKind::spacetime);
  for (int sig = 0; sig < d; ++sig) {
    for (int nu = 0; nu < d; ++nu) {
      double* o = ric.comp(ric.comp_index({sig, nu}));
      for (int mu = 0; mu < d; ++mu) {
        const double* t1 = dgamma[static_cast<std::size_t>(mu)].comp(gamma.comp_index({mu, nu, sig}));
        const double* t2 = dgamma[static_cast<std::size_t>(nu)].comp(gamma.comp_index({mu, mu, sig}));
        for (std::size_t p = 0; p < nodes; ++p) o[p] += t1[p] - t2[p];
        for (int lam = 0; lam < d; ++lam) {
          const double* a = gamma.comp(gamma.comp_index({mu, mu, lam}));
          const double* b = gamma.comp(gamma.comp_index({lam, nu, sig}));
          const double* c = gamma.comp(gamma.comp_index({mu, nu, lam}));
          const double* e = gamma.comp(gamma.comp_index({lam, mu, sig}));
          for (std::size_t p = 0; p < nodes; ++p) o[p] += a[p] * b[p] - c[p] * e[p];
        }
      }
    }
  }
  ric.symmetrize();
  return ric;
}

CompareResult compare_fields(const SpatialField& a, const SpatialField& b, double tol) {
  if (!a.same_shape(b)) throw std::invalid_argument("compare_fields: shape mismatch");
  SpatialField diff = a;
  diff -= b;
  const double denom = std::max(b.sup_norm(), 1e-14);
  CompareResult out;
  out.max_rel_diff = diff.sup_norm() / denom;
  out.pass = out.max_rel_diff <= tol;
  return out;
}

namespace {

ChartPtr refined_chart(const Chart& coarse, int refine) {
  std::vector<int> res = coarse.resolution();
  for (int& r : res) {
    if (r > 1) r *= refine;
  }
  return Chart::make(coarse.dim(), std::move(res), coarse.period());
}

/// 4th-order centered periodic finite difference along an axis.
SpatialField fd_derivative_axis(const SpatialField& f, int axis0) {
  const Chart& chart = *f.chart();
  const int R = chart.resolution()[static_cast<std::size_t>(axis0)];
  SpatialField out(f.chart(), f.rank(), f.kind());
  if (R == 1) return out;
  if (R < 5) throw std::invalid_argument("fd_derivative_axis: need at least 5 points");
  const double h = chart.period()[static_cast<std::size_t>(axis0)] / R;
  const std::size_t stride = chart.stride(axis0);
  const std::size_t nodes = chart.num_nodes();
  const std::size_t block = stride * static_cast<std::size_t>(R);
  for (std::size_t c = 0; c < f.num_components(); ++c) {
    const double* in = f.comp(c);
    double* o = out.comp(c);
    for (std::size_t chunk = 0; chunk < nodes; chunk += block) {
      for (std::size_t off = 0; off < stride; ++off) {
        const std::size_t base = chunk + off;
        for (int j = 0; j < R; ++j) {
          const auto wrap = [&](int jj) {
            return in[base + static_cast<std::size_t>(((jj % R) + R) % R) * stride];
          };
          o[base + static_cast<std::size_t>(j) * stride] =
              (wrap(j - 2) - 8.0 * wrap(j - 1) + 8.0 * wrap(j + 1) - wrap(j + 2)) / (12.0 * h);
        }
      }
    }
  }
  return out;
}

SpatialField restrict_to_coarse(const SpatialField& fine, const ChartPtr& coarse, int refine) {
  SpatialField out(coarse, fine.rank(), fine.kind());
  const Chart& cf = *fine.chart();
  const Chart& cc = *coarse;
  const int n = cc.dim();
  for (std::size_t c = 0; c < out.num_components(); ++c) {
    const double* src = fine.comp(c);
    double* dst = out.comp(c);
    for (std::size_t p = 0; p < cc.num_nodes(); ++p) {
      std::size_t q = 0;
      for (int a = 0; a < n; ++a) {
        const int Rc = cc.resolution()[static_cast<std::size_t>(a)];
        const int j = static_cast<int>((p / cc.stride(a)) % static_cast<std::size_t>(Rc));
        const int jf = Rc > 1 ? j * refine : j;
        q += static_cast<std::size_t>(jf) * cf.stride(a);
      }
      dst[p] = src[q];
    }
  }
  return out;
}

SpatialField fd_christoffel_on(const ChartPtr& fine, const SpatialField& g) {
  const int n = fine->dim();
  const std::size_t nodes = fine->num_nodes();
  const SpatialField ginv = pointwise_inverse(g);
  std::vector<SpatialField> dg;
  for (int l = 0; l < n; ++l) dg.push_back(fd_derivative_axis(g, l));
  SpatialField gamma(fine, 3);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        double* o = gamma.comp(gamma.comp_index({k, i, j}));
        for (int l = 0; l < n; ++l) {
          const double* gi = ginv.comp(ginv.comp_index({k, l}));
          const double* a = dg[static_cast<std::size_t>(i)].comp(g.comp_index({j, l}));
          const double* b = dg[static_cast<std::size_t>(j)].comp(g.comp_index({i, l}));
          const double* c = dg[static_cast<std::size_t>(l)].comp(g.comp_index({i, j}));
          for (std::size_t p = 0; p < nodes; ++p) o[p] += 0.5 * gi[p] * (a[p] + b[p] - c[p]);
        }
      }
    }
  }
  return gamma;
}

}  // namespace

SpatialField fd_spatial_christoffel_oracle(const ChartPtr& chart,
                                           const std::vector<FourierMode>& modes, bool add_identity,
                                           int refine) {
  const ChartPtr fine = refined_chart(*chart, refine);
  const SpatialField g = sym2_from_modes(fine, modes, add_identity);
  return restrict_to_coarse(fd_christoffel_on(fine, g), chart, refine);
}

SpatialField fd_spatial_ricci_oracle(const ChartPtr& chart, const std::vector<FourierMode>& modes,
                                     bool add_identity, int refine) {
  const ChartPtr fine = refined_chart(*chart, refine);
  const SpatialField g = sym2_from_modes(fine, modes, add_identity);
  const SpatialField gamma = fd_christoffel_on(fine, g);
  const int n = fine->dim();
  const std::size_t nodes = fine->num_nodes();
  std::vector<SpatialField> dgamma;
  for (int l = 0; l < n; ++l) dgamma.push_back(fd_derivative_axis(gamma, l));
  SpatialField ric(fine, 2);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double* o = ric.comp(ric.comp_index({i, j}));
      for (int k = 0; k < n; ++k) {
        const double* t1 = dgamma[static_cast<std::size_t>(k)].comp(gamma.comp_index({k, i, j}));
        const double* t2 = dgamma[static_cast<std::size_t>(i)].comp(gamma.comp_index({k, k, j}));
        for (std::size_t p = 0; p < nodes; ++p) o[p] += t1[p] - t2[p];
        for (int l = 0; l < n; ++l) {
          const double* a = gamma.comp(gamma.comp_index({k, k, l}));
          const double* b = gamma.comp(gamma.comp_index({l, i, j}));
          const double* c = gamma.comp(gamma.comp_index({k, i, l}));
          const double* d = gamma.comp(gamma.comp_index({l, k, j}));
          for (std::size_t p = 0; p < nodes; ++p) o[p] += a[p] * b[p] - c[p] * d[p];
        }
      }
    }
  }
  return restrict_to_coarse(ric, chart, refine);
}

}  // namespace fgx
