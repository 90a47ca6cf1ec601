#pragma once

#include <map>
#include <optional>
#include <vector>

#include "fgx/boundary_data.hpp"
#include "fgx/frame_calculus.hpp"
#include "fgx/order_solve.hpp"
#include "fgx/phg_series.hpp"

namespace fgx {

/// A forcing term failed a solvability condition at some order. For odd n,
/// order-n data with nonzero divergence surfaces here at order n+1.
class SolvabilityViolation : public std::runtime_error {
 public:
  SolvabilityViolation(int order, std::string check, double defect, const std::string& message)
      : std::runtime_error(message), order_(order), check_(std::move(check)), defect_(defect) {}

  int order() const { return order_; }
  const std::string& check() const { return check_; }
  double defect() const { return defect_; }

 private:
  int order_;
  std::string check_;
  double defect_;
};

/// An odd-order forcing that should vanish by parity did not.
class ParityViolation : public std::runtime_error {
 public:
  ParityViolation(int order, double defect, const std::string& message)
      : std::runtime_error(message), order_(order), defect_(defect) {}

  int order() const { return order_; }
  double defect() const { return defect_; }

 private:
  int order_;
  double defect_;
};

/// Per-(order, log level) record of the forcing the recursion saw. Forcing
/// slots are reported as minus the residual coefficient in the 4-splitting,
/// i.e. in the normalization of the linearized-Einstein family itself (half
/// the stored doubled matrix).
struct OrderDiagnostics {
  int order = 0;
  int log_level = 0;
  double forcing_norm = 0.0;
  double f1_norm = 0.0;
  double f2_norm = 0.0;
  double f3_norm = 0.0;
  double f4_norm = 0.0;
  double kernel_defect = 0.0;
  double row_consistency_defect = 0.0;
  bool solved = false;  // false when the level was asserted to vanish
};

struct ExpansionResult {
  int n = 0;
  int N = 0;
  /// (i, m) -> spatial symmetric coefficient of s^i log^m in the spatial
  /// block. Orders whose coefficients vanish are simply absent.
  std::map<PhgKey, SpatialField> coeffs;
  /// Trace-free obstruction candidate (even n only): the trace-free slot of
  /// the order-n forcing, engine normalization c_n = 1.
  std::optional<SpatialField> obstruction;
  /// Order-n forcing in the reported normalization (see OrderDiagnostics).
  std::optional<Block4Field> order_n_forcing;
  BlockMetricSeries metric;
  std::vector<OrderDiagnostics> diagnostics;
  DataDefects data_defects;
  double max_coeff_norm = 0.0;       // includes the boundary metric
  double residual_coeff_norm = 0.0;  // largest residual coefficient, orders <= N

  const SpatialField* coeff(int i, int m) const;
  double coeff_norm(int i, int m) const;
};

/// Run the order-by-order expansion from scattering data. Constructs the
/// block-diagonal metric (-ds^2 + H)/s^2 with
///   H = g0 + sum s^i log(s)^m h_{i,m},
/// solving each order (log levels from highest to lowest, recomputing the
/// residual in between), injecting gn at order n, and recording the log
/// coefficient and obstruction in even dimension.
ExpansionResult expand(const BoundaryData& data);

/// Obstruction tensor of a boundary metric (n even, >= 4): runs the
/// expansion with gn = 0 through order n and returns the trace-free slot of
/// the order-n forcing.
SpatialField obstruction_tensor(const SpatialMetric& g0, int n, const Tolerances& tol = {});

}  // namespace fgx
