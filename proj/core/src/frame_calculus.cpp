#include "fgx/frame_calculus.hpp"

#include <cmath>
#include <stdexcept>

#include "fgx/grid_calculus.hpp"

namespace fgx {

namespace {

void check_sym2_spacetime(const PhgSeries& s) {
  if (s.rank() != 2 || s.kind() != IndexKind::spacetime) {
    throw std::invalid_argument("expected a spacetime rank-2 series");
  }
}

}  // namespace

BlockMetricSeries::BlockMetricSeries(const PhgSeries& g00, const PhgSeries& g0i,
                                     const PhgSeries& gij)
    : frame_(std::min(std::min(g00.truncation(), g0i.truncation()), gij.truncation()),
             g00.chart(), 2, IndexKind::spacetime) {
  if (g00.rank() != 0 || g0i.rank() != 1 || gij.rank() != 2) {
    throw std::invalid_argument("BlockMetricSeries: block ranks must be 0, 1, 2");
  }
  const int n = frame_.chart()->dim();
  const std::size_t nodes = frame_.chart()->num_nodes();
  auto scatter = [&](const PhgSeries& src, auto&& embed) {
    for (const auto& [key, f] : src.terms()) {
      if (key.i > frame_.truncation()) continue;
      SpatialField coeff(frame_.chart(), 2, IndexKind::spacetime);
      embed(f, coeff);
      frame_.add_term(key.i, key.m, coeff);
    }
  };
  scatter(g00, [&](const SpatialField& f, SpatialField& out) {
    const double* v = f.comp(0);
    double* o = out.comp(out.comp_index({0, 0}));
    for (std::size_t p = 0; p < nodes; ++p) o[p] += v[p];
  });
  scatter(g0i, [&](const SpatialField& f, SpatialField& out) {
    for (int i = 1; i <= n; ++i) {
      const double* v = f.comp(static_cast<std::size_t>(i - 1));
      double* a = out.comp(out.comp_index({0, i}));
      double* b = out.comp(out.comp_index({i, 0}));
      for (std::size_t p = 0; p < nodes; ++p) {
        a[p] += v[p];
        b[p] += v[p];
      }
    }
  });
  scatter(gij, [&](const SpatialField& f, SpatialField& out) {
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        const double* v = f.comp(f.comp_index({i - 1, j - 1}));
        double* o = out.comp(out.comp_index({i, j}));
        for (std::size_t p = 0; p < nodes; ++p) o[p] += v[p];
      }
    }
  });
  validate_leading_block();
}

BlockMetricSeries::BlockMetricSeries(PhgSeries frame) : frame_(std::move(frame)) {
  check_sym2_spacetime(frame_);
  validate_leading_block();
}

void BlockMetricSeries::validate_leading_block() const {
  const SpatialField* lead = frame_.term(0, 0);
  if (lead == nullptr) throw std::invalid_argument("BlockMetricSeries: missing order-0 part");
  if (frame_.max_log_at(0) > 0) {
    throw std::invalid_argument("BlockMetricSeries: log terms at order 0");
  }
  const int n = dim();
  const std::size_t nodes = frame_.chart()->num_nodes();
  const double* g00 = lead->comp(lead->comp_index({0, 0}));
  for (std::size_t p = 0; p < nodes; ++p) {
    if (std::abs(g00[p] + 1.0) > 1e-12) {
      throw std::invalid_argument("BlockMetricSeries: order-0 scalar block must be -1");
    }
  }
  for (int i = 1; i <= n; ++i) {
    const double* g0i = lead->comp(lead->comp_index({0, i}));
    for (std::size_t p = 0; p < nodes; ++p) {
      if (std::abs(g0i[p]) > 1e-12) {
        throw std::invalid_argument("BlockMetricSeries: order-0 mixed block must vanish");
      }
    }
  }
  // Positive definiteness of the order-0 spatial block: SpatialMetric checks it.
  SpatialMetric check(boundary_metric());
  (void)check;
}

BlockMetricSeries BlockMetricSeries::fg_form(int truncation, const SpatialField& g0) {
  const ChartPtr chart = g0.chart();
  const int n = chart->dim();
  const std::size_t nodes = chart->num_nodes();
  SpatialField lead(chart, 2, IndexKind::spacetime);
  {
    double* o = lead.comp(lead.comp_index({0, 0}));
    for (std::size_t p = 0; p < nodes; ++p) o[p] = -1.0;
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      const double* v = g0.comp(g0.comp_index({i - 1, j - 1}));
      double* o = lead.comp(lead.comp_index({i, j}));
      for (std::size_t p = 0; p < nodes; ++p) o[p] = v[p];
    }
  }
  PhgSeries frame(truncation, chart, 2, IndexKind::spacetime);
  frame.add_term(0, 0, lead);
  return BlockMetricSeries(std::move(frame));
}

PhgSeries BlockMetricSeries::g00() const {
  PhgSeries out(truncation(), chart(), 0);
  const std::size_t nodes = chart()->num_nodes();
  for (const auto& [key, f] : frame_.terms()) {
    SpatialField c(chart(), 0);
    const double* v = f.comp(f.comp_index({0, 0}));
    double* o = c.comp(0);
    for (std::size_t p = 0; p < nodes; ++p) o[p] = v[p];
    out.add_term(key.i, key.m, c);
  }
  out.normalize(0.0);
  return out;
}

PhgSeries BlockMetricSeries::g0i() const {
  const int n = dim();
  PhgSeries out(truncation(), chart(), 1);
  const std::size_t nodes = chart()->num_nodes();
  for (const auto& [key, f] : frame_.terms()) {
    SpatialField c(chart(), 1);
    for (int i = 1; i <= n; ++i) {
      const double* v = f.comp(f.comp_index({0, i}));
      double* o = c.comp(static_cast<std::size_t>(i - 1));
      for (std::size_t p = 0; p < nodes; ++p) o[p] = v[p];
    }
    out.add_term(key.i, key.m, c);
  }
  out.normalize(0.0);
  return out;
}

PhgSeries BlockMetricSeries::gij() const {
  const int n = dim();
  PhgSeries out(truncation(), chart(), 2);
  const std::size_t nodes = chart()->num_nodes();
  for (const auto& [key, f] : frame_.terms()) {
    SpatialField c(chart(), 2);
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        const double* v = f.comp(f.comp_index({i, j}));
        double* o = c.comp(c.comp_index({i - 1, j - 1}));
        for (std::size_t p = 0; p < nodes; ++p) o[p] = v[p];
      }
    }
    out.add_term(key.i, key.m, c);
  }
  out.normalize(0.0);
  return out;
}

SpatialField BlockMetricSeries::boundary_metric() const {
  const SpatialField* lead = frame_.term(0, 0);
  const int n = dim();
  const std::size_t nodes = chart()->num_nodes();
  SpatialField g0(chart(), 2);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      const double* v = lead->comp(lead->comp_index({i, j}));
      double* o = g0.comp(g0.comp_index({i - 1, j - 1}));
      for (std::size_t p = 0; p < nodes; ++p) o[p] = v[p];
    }
  }
  return g0;
}

void BlockMetricSeries::add_spatial_term(int i, int m, const SpatialField& sym2, double scale) {
  if (sym2.rank() != 2 || sym2.kind() != IndexKind::spatial) {
    throw std::invalid_argument("add_spatial_term: expects a spatial rank-2 field");
  }
  const int n = dim();
  const std::size_t nodes = chart()->num_nodes();
  SpatialField embedded(chart(), 2, IndexKind::spacetime);
  for (int a = 1; a <= n; ++a) {
    for (int b = 1; b <= n; ++b) {
      const double* v = sym2.comp(sym2.comp_index({a - 1, b - 1}));
      double* o = embedded.comp(embedded.comp_index({a, b}));
      for (std::size_t p = 0; p < nodes; ++p) o[p] = v[p];
    }
  }
  frame_.add_term(i, m, embedded, scale);
}

BlockMetricSeries BlockMetricSeries::with_truncation(int truncation) const {
  return BlockMetricSeries(frame_.with_truncation(truncation));
}

PhgSeries frame_derivative(const PhgSeries& a, int mu) {
  if (mu == 0) return a.s_dds();
  PhgSeries out(a.truncation(), a.chart(), a.rank(), a.kind());
  for (const auto& [key, f] : a.terms()) {
    if (key.i + 1 > a.truncation()) continue;
    out.add_term(key.i + 1, key.m, partial_derivative0(f, mu - 1));
  }
  return out;
}

namespace {

/// Graded product contracting the first index of b against the second of a:
/// out[..a-free.., ..b-free..] = sum_rho a[.., rho] b[rho, ..].
PhgSeries contract_series(const PhgSeries& a, const PhgSeries& b, int out_rank) {
  const int d = a.chart()->dim() + 1;
  const std::size_t nodes = a.chart()->num_nodes();
  return series_combine(a, b, out_rank, IndexKind::spacetime,
                        [d, nodes, out_rank](const SpatialField& fa, const SpatialField& fb) {
                          SpatialField out(fa.chart(), out_rank, IndexKind::spacetime);
                          const std::size_t a_free = fa.num_components() / static_cast<std::size_t>(d);
                          const std::size_t b_free = fb.num_components() / static_cast<std::size_t>(d);
                          for (std::size_t ca = 0; ca < a_free; ++ca) {
                            for (std::size_t cb = 0; cb < b_free; ++cb) {
                              double* o = out.comp(ca * b_free + cb);
                              for (int rho = 0; rho < d; ++rho) {
                                const double* va = fa.comp(ca * static_cast<std::size_t>(d) + static_cast<std::size_t>(rho));
                                const double* vb = fb.comp(static_cast<std::size_t>(rho) * b_free + cb);
                                for (std::size_t p = 0; p < nodes; ++p) o[p] += va[p] * vb[p];
                              }
                            }
                          }
                          return out;
                        });
}

}  // namespace

PhgSeries invert_metric_series(const BlockMetricSeries& g) {
  const PhgSeries& frame = g.frame();
  const int N = frame.truncation();
  const SpatialField* lead = frame.term(0, 0);
  const SpatialField inv0 = pointwise_inverse(*lead);

  PhgSeries inv0_series(N, frame.chart(), 2, IndexKind::spacetime);
  inv0_series.add_term(0, 0, inv0);

  PhgSeries h = frame;  // decaying part
  h.add_term(0, 0, *lead, -1.0);
  h.normalize(0.0);
  if (h.empty()) return inv0_series;

  // Neumann iteration: X <- inv0 - inv0 * h * X. The decaying part raises the
  // s-order each round, so N rounds saturate every coefficient up to order N.
  PhgSeries x = inv0_series;
  for (int it = 0; it < N; ++it) {
    PhgSeries hx = contract_series(h, x, 2);
    PhgSeries correction = contract_series(inv0_series, hx, 2);
    x = inv0_series - correction;
    x.normalize(0.0);
  }
  return x;
}

FrameConnection frame_christoffels(const BlockMetricSeries& g) {
  const PhgSeries& gf = g.frame();
  const ChartPtr& chart = gf.chart();
  const int n = chart->dim();
  const int d = n + 1;
  const int N = gf.truncation();
  const std::size_t nodes = chart->num_nodes();

  std::vector<PhgSeries> dg;
  dg.reserve(static_cast<std::size_t>(d));
  for (int mu = 0; mu < d; ++mu) dg.push_back(frame_derivative(gf, mu));

  // Gamma_{lam,mu,nu} = (1/2)(e_mu g_{nu lam} + e_nu g_{mu lam} - e_lam g_{mu nu})
  //                   + C_{lam,mu,nu},
  // where the commutator correction uses [e_0, e_i] = e_i:
  //   C = (1/2)(-g(e_mu,[e_nu,e_lam]) - g(e_nu,[e_mu,e_lam]) + g(e_lam,[e_mu,e_nu]))
  // and g(e_x,[e_a,e_b]) = [a=0][b!=0] g_{xb} - [b=0][a!=0] g_{xa}.
  PhgSeries lowered(N, chart, 3, IndexKind::spacetime);

  // union of keys appearing in dg or gf
  std::map<PhgKey, int> keys;
  for (const auto& [key, f] : gf.terms()) keys[key] = 1;
  for (const auto& s : dg) {
    for (const auto& [key, f] : s.terms()) keys[key] = 1;
  }

  auto comm_weight = [](int a, int b, int& index_out) -> double {
    // returns w with g(e_x, [e_a, e_b]) = w * g_{x, index_out}
    if (a == 0 && b != 0) {
      index_out = b;
      return 1.0;
    }
    if (b == 0 && a != 0) {
      index_out = a;
      return -1.0;
    }
    index_out = -1;
    return 0.0;
  };

  for (const auto& [key, unused] : keys) {
    (void)unused;
    SpatialField coeff(chart, 3, IndexKind::spacetime);
    const SpatialField* gk = gf.term(key.i, key.m);
    for (int lam = 0; lam < d; ++lam) {
      for (int mu = 0; mu < d; ++mu) {
        for (int nu = 0; nu < d; ++nu) {
          double* o = coeff.comp(coeff.comp_index({lam, mu, nu}));
          if (const SpatialField* t = dg[static_cast<std::size_t>(mu)].term(key.i, key.m)) {
            const double* v = t->comp(t->comp_index({nu, lam}));
            for (std::size_t p = 0; p < nodes; ++p) o[p] += 0.5 * v[p];
          }
          if (const SpatialField* t = dg[static_cast<std::size_t>(nu)].term(key.i, key.m)) {
            const double* v = t->comp(t->comp_index({mu, lam}));
            for (std::size_t p = 0; p < nodes; ++p) o[p] += 0.5 * v[p];
          }
          if (const SpatialField* t = dg[static_cast<std::size_t>(lam)].term(key.i, key.m)) {
            const double* v = t->comp(t->comp_index({mu, nu}));
            for (std::size_t p = 0; p < nodes; ++p) o[p] -= 0.5 * v[p];
          }
          if (gk != nullptr) {
            int idx = -1;
            double w = comm_weight(nu, lam, idx);
            if (w != 0.0) {
              const double* v = gk->comp(gk->comp_index({mu, idx}));
              for (std::size_t p = 0; p < nodes; ++p) o[p] -= 0.5 * w * v[p];
            }
            w = comm_weight(mu, lam, idx);
            if (w != 0.0) {
              const double* v = gk->comp(gk->comp_index({nu, idx}));
              for (std::size_t p = 0; p < nodes; ++p) o[p] -= 0.5 * w * v[p];
            }
            w = comm_weight(mu, nu, idx);
            if (w != 0.0) {
              const double* v = gk->comp(gk->comp_index({lam, idx}));
              for (std::size_t p = 0; p < nodes; ++p) o[p] += 0.5 * w * v[p];
            }
          }
        }
      }
    }
    lowered.add_term(key.i, key.m, coeff);
  }
  lowered.normalize(0.0);

  FrameConnection out{lowered, PhgSeries()};
  const PhgSeries ginv = invert_metric_series(g);
  out.raised = contract_series(ginv, lowered, 3);
  out.raised.normalize(0.0);
  return out;
}

PhgSeries frame_ricci(const BlockMetricSeries& g) {
  const ChartPtr& chart = g.chart();
  const int n = chart->dim();
  const int d = n + 1;
  const int N = g.truncation();
  const std::size_t nodes = chart->num_nodes();

  const PhgSeries raised = frame_christoffels(g).raised;

  // Ric_{mu nu} = e_lam Gamma^lam_{nu mu} - e_nu Gamma^lam_{lam mu}
  //             + Gamma^lam_{lam rho} Gamma^rho_{nu mu}
  //             - Gamma^lam_{nu rho} Gamma^rho_{lam mu}
  //             - c^rho_{lam nu} Gamma^lam_{rho mu},
  // with structure constants c^j_{0j} = 1 = -c^j_{j0} from [e_0, e_j] = e_j.
  PhgSeries ric(N, chart, 2, IndexKind::spacetime);

  // T1: e_lam Gamma^lam_{nu mu}
  for (int lam = 0; lam < d; ++lam) {
    const PhgSeries dG = frame_derivative(raised, lam);
    for (const auto& [key, f] : dG.terms()) {
      SpatialField coeff(chart, 2, IndexKind::spacetime);
      for (int mu = 0; mu < d; ++mu) {
        for (int nu = 0; nu < d; ++nu) {
          const double* v = f.comp(f.comp_index({lam, nu, mu}));
          double* o = coeff.comp(coeff.comp_index({mu, nu}));
          for (std::size_t p = 0; p < nodes; ++p) o[p] += v[p];
        }
      }
      ric.add_term(key.i, key.m, coeff);
    }
  }

  // trace over the first two slots: tr[mu] = Gamma^lam_{lam mu}
  PhgSeries tr(N, chart, 1, IndexKind::spacetime);
  for (const auto& [key, f] : raised.terms()) {
    SpatialField coeff(chart, 1, IndexKind::spacetime);
    for (int mu = 0; mu < d; ++mu) {
      double* o = coeff.comp(static_cast<std::size_t>(mu));
      for (int lam = 0; lam < d; ++lam) {
        const double* v = f.comp(f.comp_index({lam, lam, mu}));
        for (std::size_t p = 0; p < nodes; ++p) o[p] += v[p];
      }
    }
    tr.add_term(key.i, key.m, coeff);
  }

  // T2: - e_nu tr[mu]
  for (int nu = 0; nu < d; ++nu) {
    const PhgSeries dtr = frame_derivative(tr, nu);
    for (const auto& [key, f] : dtr.terms()) {
      SpatialField coeff(chart, 2, IndexKind::spacetime);
      for (int mu = 0; mu < d; ++mu) {
        const double* v = f.comp(static_cast<std::size_t>(mu));
        double* o = coeff.comp(coeff.comp_index({mu, nu}));
        for (std::size_t p = 0; p < nodes; ++p) o[p] -= v[p];
      }
      ric.add_term(key.i, key.m, coeff);
    }
  }

  // T3: + tr[rho] Gamma^rho_{nu mu}
  {
    PhgSeries t3 = series_combine(
        tr, raised, 2, IndexKind::spacetime,
        [d, nodes](const SpatialField& ftr, const SpatialField& fG) {
          SpatialField out(ftr.chart(), 2, IndexKind::spacetime);
          for (int mu = 0; mu < d; ++mu) {
            for (int nu = 0; nu < d; ++nu) {
              double* o = out.comp(out.comp_index({mu, nu}));
              for (int rho = 0; rho < d; ++rho) {
                const double* a = ftr.comp(static_cast<std::size_t>(rho));
                const double* b = fG.comp(fG.comp_index({rho, nu, mu}));
                for (std::size_t p = 0; p < nodes; ++p) o[p] += a[p] * b[p];
              }
            }
          }
          return out;
        });
    ric += t3;
  }

  // T4: - Gamma^lam_{nu rho} Gamma^rho_{lam mu}
  {
    PhgSeries t4 = series_combine(
        raised, raised, 2, IndexKind::spacetime,
        [d, nodes](const SpatialField& fa, const SpatialField& fb) {
          SpatialField out(fa.chart(), 2, IndexKind::spacetime);
          for (int mu = 0; mu < d; ++mu) {
            for (int nu = 0; nu < d; ++nu) {
              double* o = out.comp(out.comp_index({mu, nu}));
              for (int lam = 0; lam < d; ++lam) {
                for (int rho = 0; rho < d; ++rho) {
                  const double* a = fa.comp(fa.comp_index({lam, nu, rho}));
                  const double* b = fb.comp(fb.comp_index({rho, lam, mu}));
                  for (std::size_t p = 0; p < nodes; ++p) o[p] -= a[p] * b[p];
                }
              }
            }
          }
          return out;
        });
    ric += t4;
  }

  // T5: - c^rho_{lam nu} Gamma^lam_{rho mu}
  //   nu = 0: + sum_j Gamma^j_{j mu};  nu = j: - Gamma^0_{j mu}
  for (const auto& [key, f] : raised.terms()) {
    SpatialField coeff(chart, 2, IndexKind::spacetime);
    for (int mu = 0; mu < d; ++mu) {
      double* o0 = coeff.comp(coeff.comp_index({mu, 0}));
      for (int j = 1; j < d; ++j) {
        const double* v = f.comp(f.comp_index({j, j, mu}));
        for (std::size_t p = 0; p < nodes; ++p) o0[p] += v[p];
        const double* w = f.comp(f.comp_index({0, j, mu}));
        double* oj = coeff.comp(coeff.comp_index({mu, j}));
        for (std::size_t p = 0; p < nodes; ++p) oj[p] -= w[p];
      }
    }
    ric.add_term(key.i, key.m, coeff);
  }

  // The formula is symmetric analytically; average away roundoff asymmetry.
  PhgSeries out(N, chart, 2, IndexKind::spacetime);
  for (const auto& [key, f] : ric.terms()) {
    SpatialField sym = f;
    sym.symmetrize();
    out.add_term(key.i, key.m, sym);
  }
  out.normalize(0.0);
  return out;
}

PhgSeries einstein_residual(const BlockMetricSeries& g, int n) {
  PhgSeries res = frame_ricci(g);
  res -= g.frame().scaled(static_cast<double>(n));
  res.normalize(0.0);
  return res;
}

double Block4Field::sup_norm() const {
  return std::max(std::max(h1.sup_norm(), h2.sup_norm()), std::max(h3.sup_norm(), h4.sup_norm()));
}

Block4Field split4(const SpatialField& t, const SpatialMetric& g0) {
  if (t.rank() != 2 || t.kind() != IndexKind::spacetime) {
    throw std::invalid_argument("split4: expects a spacetime rank-2 field");
  }
  const ChartPtr& chart = t.chart();
  const int n = chart->dim();
  const std::size_t nodes = chart->num_nodes();

  Block4Field out{SpatialField(chart, 0), SpatialField(chart, 1), SpatialField(chart, 0),
                  SpatialField(chart, 2)};
  {
    const double* v = t.comp(t.comp_index({0, 0}));
    double* o = out.h1.comp(0);
    for (std::size_t p = 0; p < nodes; ++p) o[p] = v[p];
  }
  for (int i = 1; i <= n; ++i) {
    const double* a = t.comp(t.comp_index({0, i}));
    const double* b = t.comp(t.comp_index({i, 0}));
    double* o = out.h2.comp(static_cast<std::size_t>(i - 1));
    for (std::size_t p = 0; p < nodes; ++p) o[p] = 0.5 * (a[p] + b[p]);
  }
  SpatialField spatial(chart, 2);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      const double* v = t.comp(t.comp_index({i, j}));
      double* o = spatial.comp(spatial.comp_index({i - 1, j - 1}));
      for (std::size_t p = 0; p < nodes; ++p) o[p] = v[p];
    }
  }
  const SpatialField tr = trace(g0, spatial);
  {
    const double* v = tr.comp(0);
    double* o = out.h3.comp(0);
    for (std::size_t p = 0; p < nodes; ++p) o[p] = v[p] / static_cast<double>(n);
  }
  out.h4 = spatial;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double* gv = g0.g().comp(g0.g().comp_index({i, j}));
      const double* h3v = out.h3.comp(0);
      double* o = out.h4.comp(out.h4.comp_index({i, j}));
      for (std::size_t p = 0; p < nodes; ++p) o[p] -= h3v[p] * gv[p];
    }
  }
  return out;
}

SpatialField unsplit4(const Block4Field& b, const SpatialMetric& g0) {
  const ChartPtr& chart = b.h1.chart();
  const int n = chart->dim();
  const std::size_t nodes = chart->num_nodes();
  SpatialField t(chart, 2, IndexKind::spacetime);
  {
    const double* v = b.h1.comp(0);
    double* o = t.comp(t.comp_index({0, 0}));
    for (std::size_t p = 0; p < nodes; ++p) o[p] = v[p];
  }
  for (int i = 1; i <= n; ++i) {
    const double* v = b.h2.comp(static_cast<std::size_t>(i - 1));
    double* a = t.comp(t.comp_index({0, i}));
    double* c = t.comp(t.comp_index({i, 0}));
    for (std::size_t p = 0; p < nodes; ++p) {
      a[p] = v[p];
      c[p] = v[p];
    }
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      const double* gv = g0.g().comp(g0.g().comp_index({i - 1, j - 1}));
      const double* h3v = b.h3.comp(0);
      const double* h4v = b.h4.comp(b.h4.comp_index({i - 1, j - 1}));
      double* o = t.comp(t.comp_index({i, j}));
      for (std::size_t p = 0; p < nodes; ++p) o[p] = h3v[p] * gv[p] + h4v[p];
    }
  }
  return t;
}

ParityDefects parity_defects(const PhgSeries& series, const SpatialMetric& g0, int max_order) {
  ParityDefects out;
  out.scale = series.sup_norm();
  for (const auto& [key, f] : series.terms()) {
    if (key.i > max_order) continue;
    const Block4Field b = split4(f, g0);
    const double diag = std::max(std::max(b.h1.sup_norm(), b.h3.sup_norm()), b.h4.sup_norm());
    if (key.i % 2 == 0) {
      out.h2_at_even_orders = std::max(out.h2_at_even_orders, b.h2.sup_norm());
    } else {
      out.diag_at_odd_orders = std::max(out.diag_at_odd_orders, diag);
    }
  }
  return out;
}

}  // namespace fgx
