#include "fgx/expansion.hpp"

#include <cmath>
#include <string>

namespace fgx {

namespace {

/// Spatial update h3 * g0 + h4 of one order/level.
SpatialField assemble_update(const SpatialField& h3, const SpatialField& h4,
                             const SpatialMetric& g0) {
  SpatialField out = h4;
  const int n = g0.dim();
  const std::size_t nodes = out.num_nodes();
  const double* h3v = h3.comp(0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double* gv = g0.g().comp(g0.g().comp_index({i, j}));
      double* o = out.comp(out.comp_index({i, j}));
      for (std::size_t p = 0; p < nodes; ++p) o[p] += h3v[p] * gv[p];
    }
  }
  return out;
}

Block4Field negated(Block4Field b, double scale) {
  b.h1 *= scale;
  b.h2 *= scale;
  b.h3 *= scale;
  b.h4 *= scale;
  return b;
}

OrderDiagnostics make_diag(int order, int level, const Block4Field& f_report) {
  OrderDiagnostics d;
  d.order = order;
  d.log_level = level;
  d.f1_norm = f_report.h1.sup_norm();
  d.f2_norm = f_report.h2.sup_norm();
  d.f3_norm = f_report.h3.sup_norm();
  d.f4_norm = f_report.h4.sup_norm();
  d.forcing_norm = f_report.sup_norm();
  return d;
}

}  // namespace

const SpatialField* ExpansionResult::coeff(int i, int m) const {
  const auto it = coeffs.find(PhgKey{i, m});
  return it == coeffs.end() ? nullptr : &it->second;
}

double ExpansionResult::coeff_norm(int i, int m) const {
  const SpatialField* c = coeff(i, m);
  return c == nullptr ? 0.0 : c->sup_norm();
}

ExpansionResult expand(const BoundaryData& data) {
  const int n = data.n;
  const int N = data.N;
  const Tolerances& tol = data.tol;
  const SpatialMetric& g0 = data.g0;

  const DataDefects defects = validate_boundary_data(data);
  const double gn_scale = std::max(1.0, data.gn.sup_norm());
  if (defects.trace_defect > tol.compat_at(gn_scale)) {
    throw std::invalid_argument("expand: gn is not trace-free (defect " +
                                std::to_string(defects.trace_defect) + ")");
  }
  // An illegal divergence (odd n) is not rejected here: it violates the
  // order-(n+1) solvability condition and is reported from there, which also
  // pins down the order at which the obstruction occurs.

  ExpansionResult result{.n = n,
                         .N = N,
                         .coeffs = {},
                         .obstruction = std::nullopt,
                         .order_n_forcing = std::nullopt,
                         .metric = BlockMetricSeries::fg_form(N, g0.g()),
                         .diagnostics = {},
                         .data_defects = defects,
                         .max_coeff_norm = std::max(1.0, g0.g().sup_norm()),
                         .residual_coeff_norm = 0.0};

  const bool even_n = n % 2 == 0;

  auto record_coeff = [&](int i, int m, const SpatialField& upd) {
    if (upd.sup_norm() <= tol.zero_at(result.max_coeff_norm)) return;
    auto [it, inserted] = result.coeffs.try_emplace(PhgKey{i, m}, upd);
    if (!inserted) it->second += upd;
    result.max_coeff_norm = std::max(result.max_coeff_norm, it->second.sup_norm());
  };

  for (int order = 1; order <= N; ++order) {
    const bool must_vanish =
        order % 2 == 1 && order != n && (order < n || (even_n && order != n + 1));
    const int max_passes = order / n + 3;

    for (int pass = 0; pass < max_passes; ++pass) {
      const PhgSeries residual = einstein_residual(result.metric.with_truncation(order), n);
      const double floor = tol.zero_at(result.max_coeff_norm);

      int level = -1;
      for (int m = residual.max_log_at(order); m >= 0; --m) {
        if (const SpatialField* c = residual.term(order, m); c && c->sup_norm() > floor) {
          level = m;
          break;
        }
      }

      if (order == n && pass == 0) {
        // Order n always runs the special step, even with zero forcing:
        // gn is injected here and the even-n bookkeeping (log coefficient,
        // obstruction) happens here.
        if (level > 0) {
          throw std::runtime_error("expand: unexpected log forcing entering order n");
        }
        const Block4Field r = split4(residual.term_or_zero(n, 0), g0);
        const Block4Field f_report = negated(r, -1.0);
        const Block4Field f_solver = negated(r, -2.0);
        OrderDiagnostics diag = make_diag(order, 0, f_report);

        OrderSolveResult sol;
        try {
          sol = solve_order(Rational(n), f_solver, n, data.gn,
                            SolveTolerances{tol.compatibility * tol.scale_factor,
                                            result.max_coeff_norm});
        } catch (const SolvabilityError& err) {
          throw SolvabilityViolation(order, err.check(), err.defect(), err.what());
        }
        diag.kernel_defect = sol.kernel_defect;
        diag.row_consistency_defect = sol.row_consistency_defect;
        diag.solved = true;
        result.diagnostics.push_back(diag);

        result.order_n_forcing = f_report;
        if (even_n) {
          result.obstruction = tracefree_part(g0, f_report.h4);
        }

        const SpatialField update = assemble_update(sol.h3, sol.h4, g0);
        if (update.sup_norm() > 0.0) {
          result.metric.add_spatial_term(n, 0, update);
          record_coeff(n, 0, update);
        }
        if (sol.log_h4 && sol.log_h4->sup_norm() > 0.0) {
          result.metric.add_spatial_term(n, 1, *sol.log_h4);
          record_coeff(n, 1, *sol.log_h4);
        }
        continue;  // re-enter to verify the order is clean
      }

      if (level < 0) break;  // order finished

      const Block4Field r = split4(*residual.term(order, level), g0);
      const Block4Field f_report = negated(r, -1.0);
      OrderDiagnostics diag = make_diag(order, level, f_report);

      if (must_vanish) {
        // Parity plus the Bianchi identity force this forcing to vanish.
        if (diag.forcing_norm > tol.parity_at(result.max_coeff_norm)) {
          throw ParityViolation(order, diag.forcing_norm,
                                "expand: odd-order forcing fails to vanish at order " +
                                    std::to_string(order) + " (defect " +
                                    std::to_string(diag.forcing_norm) + ")");
        }
        result.diagnostics.push_back(diag);
        break;
      }

      if (order == n) {
        // Residual left over after the special order-n step.
        if (diag.forcing_norm > tol.compat_at(result.max_coeff_norm)) {
          throw std::runtime_error("expand: order-n step failed to cancel the residual");
        }
        result.diagnostics.push_back(diag);
        break;
      }

      const Block4Field f_solver = negated(r, -2.0);
      OrderSolveResult sol;
      try {
        sol = solve_order(Rational(order), f_solver, n, std::nullopt,
                          SolveTolerances{tol.compatibility * tol.scale_factor,
                                          result.max_coeff_norm});
      } catch (const SolvabilityError& err) {
        throw SolvabilityViolation(order, err.check(), err.defect(), err.what());
      }
      diag.kernel_defect = sol.kernel_defect;
      diag.row_consistency_defect = sol.row_consistency_defect;
      diag.solved = true;
      result.diagnostics.push_back(diag);

      const SpatialField update = assemble_update(sol.h3, sol.h4, g0);
      result.metric.add_spatial_term(order, level, update);
      record_coeff(order, level, update);
    }
  }

  // Residual health of the finished metric, orders <= N.
  const PhgSeries residual = einstein_residual(result.metric, n);
  for (const auto& [key, f] : residual.terms()) {
    if (key.i <= N) result.residual_coeff_norm = std::max(result.residual_coeff_norm, f.sup_norm());
  }
  return result;
}

SpatialField obstruction_tensor(const SpatialMetric& g0, int n, const Tolerances& tol) {
  if (n < 4 || n % 2 != 0) {
    throw std::invalid_argument("obstruction_tensor: n must be even and >= 4");
  }
  BoundaryData data{n, n, g0, SpatialField(g0.chart(), 2), tol};
  const ExpansionResult result = expand(data);
  return tracefree_part(g0, result.order_n_forcing->h4);
}

}  // namespace fgx
