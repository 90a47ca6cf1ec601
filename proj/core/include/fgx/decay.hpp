#pragma once

#include <string>
#include <vector>

#include "fgx/expansion.hpp"

namespace fgx {

/// Numeric decay measurement of a truncated metric's Einstein residual.
struct DecayReport {
  std::vector<double> s_samples;  // strictly decreasing
  std::vector<double> norms;      // frame-component sup norms per sample
  double fitted_slope = 0.0;
  bool exact_zero = false;        // all norms below 1e-12: residual is zero to
                                  // machine precision and no slope is fit
  bool log_correction_used = false;
  int leading_order = -1;         // first populated residual order
  int leading_log_level = 0;
};

/// Least-squares slope of log(norm) against log(s).
double fit_loglog_slope(const std::vector<double>& s, const std::vector<double>& norms);

/// Decay report straight from a residual series: evaluates the stored
/// coefficients at each sample (summing coefficients, never re-deriving
/// curvature at tiny s, so there is no cancellation floor) and fits the
/// slope, dividing out a log(s) power when the leading order carries one.
DecayReport decay_report_from_series(const PhgSeries& residual, std::vector<double> s_samples);

/// Recompute the Einstein residual of the expanded metric with the
/// truncation cap raised by extra_orders (the first nonzero orders of the
/// residual lie above N) and report its decay over the samples.
DecayReport residual_report(const ExpansionResult& result, std::vector<double> s_samples,
                            int extra_orders = 4);

/// CSV rows: s, residual_norm, log_level_active.
std::string decay_report_csv(const DecayReport& report);

/// Default sample window [1e-3, 1e-2], log-spaced.
std::vector<double> default_s_samples();

}  // namespace fgx
