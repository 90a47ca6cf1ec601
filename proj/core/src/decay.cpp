#include "fgx/decay.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace fgx {

double fit_loglog_slope(const std::vector<double>& s, const std::vector<double>& norms) {
  if (s.size() != norms.size() || s.size() < 2) {
    throw std::invalid_argument("fit_loglog_slope: need matching samples, at least two");
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const auto m = static_cast<double>(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (!(norms[k] > 0.0)) throw std::invalid_argument("fit_loglog_slope: degenerate fit (zero norm)");
    const double x = std::log(s[k]);
    const double y = std::log(norms[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = m * sxx - sx * sx;
  if (std::abs(denom) < 1e-300) throw std::invalid_argument("fit_loglog_slope: degenerate abscissae");
  return (m * sxy - sx * sy) / denom;
}

DecayReport decay_report_from_series(const PhgSeries& residual, std::vector<double> s_samples) {
  if (s_samples.size() < 4) throw std::invalid_argument("decay report needs at least 4 samples");
  std::sort(s_samples.begin(), s_samples.end(), std::greater<double>());
  for (double s : s_samples) {
    if (!(s > 0.0) || !(s < 1.0)) throw std::invalid_argument("decay samples must lie in (0, 1)");
  }

  DecayReport report;
  report.s_samples = s_samples;

  // Leading populated order (relative to the series scale).
  const double scale = residual.sup_norm();
  const double floor = 1e-13 * std::max(scale, 1.0);
  for (const auto& [key, f] : residual.terms()) {
    if (f.sup_norm() <= floor) continue;
    if (report.leading_order < 0 || key.i < report.leading_order) {
      report.leading_order = key.i;
      report.leading_log_level = key.m;
    } else if (key.i == report.leading_order) {
      report.leading_log_level = std::max(report.leading_log_level, key.m);
    }
  }

  for (double s : s_samples) report.norms.push_back(residual.evaluate_at(s).sup_norm());

  // The sentinel is coefficient-level: healthy runs evaluate to tiny norms at
  // small s (that is the decay being measured), but a residual whose stored
  // coefficients all sit at the machine floor has no slope to fit.
  if (scale < 1e-12) {
    report.exact_zero = true;
    report.fitted_slope = std::numeric_limits<double>::infinity();
    return report;
  }

  std::vector<double> corrected = report.norms;
  if (report.leading_log_level > 0) {
    report.log_correction_used = true;
    for (std::size_t k = 0; k < corrected.size(); ++k) {
      corrected[k] /= std::pow(std::abs(std::log(s_samples[k])),
                               static_cast<double>(report.leading_log_level));
    }
  }
  report.fitted_slope = fit_loglog_slope(s_samples, corrected);
  return report;
}

DecayReport residual_report(const ExpansionResult& result, std::vector<double> s_samples,
                            int extra_orders) {
  const BlockMetricSeries extended = result.metric.with_truncation(result.N + extra_orders);
  PhgSeries residual = einstein_residual(extended, result.n);
  residual.normalize(1e-15 * std::max(1.0, result.max_coeff_norm));
  return decay_report_from_series(residual, std::move(s_samples));
}

std::string decay_report_csv(const DecayReport& report) {
  std::ostringstream os;
  os << "s,residual_norm,log_level_active\n";
  os.precision(17);
  for (std::size_t k = 0; k < report.s_samples.size(); ++k) {
    os << report.s_samples[k] << "," << report.norms[k] << ","
       << (report.log_correction_used ? report.leading_log_level : 0) << "\n";
  }
  return os.str();
}

std::vector<double> default_s_samples() { return {1e-2, 5e-3, 2e-3, 1e-3}; }

}  // namespace fgx
