#include "fgx/run_config.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "fgx/decay.hpp"
#include "fgx/expansion.hpp"
#include "fgx/fd_oracle.hpp"
#include "fgx/grid_calculus.hpp"
#include "fgx/indicial_families.hpp"
#include "json.hpp"

namespace fgx {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json modes_to_json(const std::vector<FourierMode>& modes) {
  ordered_json out = ordered_json::array();
  for (const FourierMode& m : modes) {
    ordered_json j;
    j["comp"] = {m.ci + 1, m.cj + 1};
    j["k"] = m.k;
    j["amplitude"] = m.amplitude;
    j["phase"] = m.phase;
    out.push_back(j);
  }
  return out;
}

std::vector<FourierMode> modes_from_json(const ordered_json& j, const std::string& which,
                                         std::vector<std::string>& violations) {
  std::vector<FourierMode> out;
  if (!j.is_array()) {
    violations.push_back(which + " must be an array of mode objects");
    return out;
  }
  for (const auto& e : j) {
    FourierMode m;
    try {
      const auto comp = e.at("comp");
      m.ci = comp.at(0).get<int>() - 1;
      m.cj = comp.at(1).get<int>() - 1;
      if (e.contains("k")) m.k = e.at("k").get<std::vector<int>>();
      m.amplitude = e.at("amplitude").get<double>();
      m.phase = e.value("phase", 0.0);
    } catch (const std::exception& ex) {
      violations.push_back(which + ": malformed mode entry (" + ex.what() + ")");
      continue;
    }
    out.push_back(std::move(m));
  }
  return out;
}

void validate_config(const RunConfig& c, std::vector<std::string>& violations) {
  if (c.n < 3) violations.push_back("n must be >= 3");
  const bool needs_expansion = c.mode == "expand" || c.mode == "verify";
  if (needs_expansion && c.N < c.n) violations.push_back("N must be >= n in expand/verify mode");
  if (c.mode != "expand" && c.mode != "obstruction" && c.mode != "verify" && c.mode != "roots") {
    violations.push_back("mode must be one of expand|obstruction|verify|roots");
  }
  if (c.mode == "obstruction" && (c.n % 2 != 0)) {
    violations.push_back("obstruction mode requires even n");
  }
  if (c.mode != "roots") {
    if (static_cast<int>(c.chart.resolution.size()) != c.n) {
      violations.push_back("chart.resolution must list exactly n entries");
    }
    for (int r : c.chart.resolution) {
      if (r < 1) violations.push_back("chart resolutions must be >= 1");
    }
    if (!c.chart.period.empty() && static_cast<int>(c.chart.period.size()) != c.n) {
      violations.push_back("chart.period must list exactly n entries when present");
    }
    for (double p : c.chart.period) {
      if (!(p > 0.0)) violations.push_back("chart periods must be positive");
    }
  }
  auto check_modes = [&](const std::vector<FourierMode>& modes, const std::string& which) {
    for (const FourierMode& m : modes) {
      if (m.ci < 0 || m.ci >= c.n || m.cj < 0 || m.cj >= c.n) {
        violations.push_back(which + ": component indices must lie in 1..n");
      }
      if (static_cast<int>(m.k.size()) > c.n) {
        violations.push_back(which + ": wavenumber tuple longer than n");
      }
    }
    if (!modes_are_symmetric(modes)) {
      violations.push_back(which + ": off-diagonal mode lacks its transposed partner (symmetry)");
    }
  };
  check_modes(c.g0_modes, "g0_modes");
  check_modes(c.gn_modes, "gn_modes");
  for (double s : c.s_samples) {
    if (!(s > 0.0) || !(s < 1.0)) violations.push_back("s_samples must lie in (0, 1)");
  }
  if (c.mode == "verify" && !c.s_samples.empty() && c.s_samples.size() < 4) {
    violations.push_back("verify mode needs at least 4 s_samples");
  }
  if (!(c.tol.compatibility > 0.0) || !(c.tol.parity > 0.0) || !(c.tol.zero_coeff > 0.0) ||
      !(c.tol.drop > 0.0) || !(c.tol.scale_factor > 0.0)) {
    violations.push_back("tolerances must be positive");
  }
}

}  // namespace

RunConfig config_from_json_text(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& ex) {
    throw ConfigError(std::string("config is not valid JSON: ") + ex.what());
  }

  std::vector<std::string> violations;
  RunConfig c;
  try {
    c.n = j.value("n", 3);
    c.N = j.value("N", std::max(c.n, 4));
    if (j.contains("chart")) {
      const auto& ch = j.at("chart");
      if (ch.contains("resolution")) c.chart.resolution = ch.at("resolution").get<std::vector<int>>();
      if (ch.contains("period")) c.chart.period = ch.at("period").get<std::vector<double>>();
    }
    if (c.chart.resolution.empty() && c.n >= 1) {
      c.chart.resolution.assign(static_cast<std::size_t>(c.n), 1);
    }
    if (j.contains("g0_modes")) c.g0_modes = modes_from_json(j.at("g0_modes"), "g0_modes", violations);
    if (j.contains("gn_modes")) c.gn_modes = modes_from_json(j.at("gn_modes"), "gn_modes", violations);
    c.mode = j.value("mode", std::string("expand"));
    if (j.contains("s_samples")) c.s_samples = j.at("s_samples").get<std::vector<double>>();
    if (j.contains("tolerances")) {
      const auto& t = j.at("tolerances");
      c.tol.compatibility = t.value("compatibility", c.tol.compatibility);
      c.tol.parity = t.value("parity", c.tol.parity);
      c.tol.zero_coeff = t.value("zero_coeff", c.tol.zero_coeff);
      c.tol.drop = t.value("drop", c.tol.drop);
      c.tol.scale_factor = t.value("scale_factor", c.tol.scale_factor);
    }
    c.out_dir = j.value("out", std::string());
    c.seed = j.value("seed", 0ULL);
  } catch (const std::exception& ex) {
    violations.push_back(std::string("malformed field: ") + ex.what());
  }

  validate_config(c, violations);
  if (!violations.empty()) {
    std::string msg = "invalid config:";
    for (const auto& v : violations) msg += "\n  - " + v;
    throw ConfigError(msg, violations);
  }
  return c;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return config_from_json_text(text);
}

std::string config_to_json_text(const RunConfig& c) {
  ordered_json j;
  j["n"] = c.n;
  j["N"] = c.N;
  j["chart"]["resolution"] = c.chart.resolution;
  if (!c.chart.period.empty()) j["chart"]["period"] = c.chart.period;
  j["g0_modes"] = modes_to_json(c.g0_modes);
  j["gn_modes"] = modes_to_json(c.gn_modes);
  j["mode"] = c.mode;
  if (!c.s_samples.empty()) j["s_samples"] = c.s_samples;
  j["tolerances"] = {{"compatibility", c.tol.compatibility},
                     {"parity", c.tol.parity},
                     {"zero_coeff", c.tol.zero_coeff},
                     {"drop", c.tol.drop},
                     {"scale_factor", c.tol.scale_factor}};
  if (!c.out_dir.empty()) j["out"] = c.out_dir;
  j["seed"] = c.seed;
  return j.dump(2);
}

std::string config_hash(const RunConfig& c) {
  const std::string text = config_to_json_text(c);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char byte : text) {
    h ^= byte;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

namespace {

/// Top Fourier magnitudes of a spatial field: |hat f| aggregated over
/// components, the `count` largest with their signed wavenumber tuples.
ordered_json top_fourier_modes(const SpatialField& f, int count) {
  const Chart& chart = *f.chart();
  const int n = chart.dim();
  const std::size_t nodes = chart.num_nodes();
  using cd = std::complex<double>;

  std::vector<double> magnitude(nodes, 0.0);
  std::vector<cd> buf(nodes);
  for (std::size_t c = 0; c < f.num_components(); ++c) {
    const double* src = f.comp(c);
    for (std::size_t p = 0; p < nodes; ++p) buf[p] = cd(src[p], 0.0);
    for (int a = 0; a < n; ++a) {
      const int R = chart.resolution()[static_cast<std::size_t>(a)];
      if (R == 1) continue;
      const std::size_t stride = chart.stride(a);
      const std::size_t block = stride * static_cast<std::size_t>(R);
      std::vector<cd> line(static_cast<std::size_t>(R));
      for (std::size_t chunk = 0; chunk < nodes; chunk += block) {
        for (std::size_t off = 0; off < stride; ++off) {
          const std::size_t base = chunk + off;
          for (int jj = 0; jj < R; ++jj) line[static_cast<std::size_t>(jj)] = buf[base + static_cast<std::size_t>(jj) * stride];
          for (int k = 0; k < R; ++k) {
            cd acc(0, 0);
            for (int jj = 0; jj < R; ++jj) {
              const double ang = -2.0 * std::numbers::pi * ((static_cast<long long>(k) * jj) % R) / R;
              acc += line[static_cast<std::size_t>(jj)] * cd(std::cos(ang), std::sin(ang));
            }
            buf[base + static_cast<std::size_t>(k) * stride] = acc / static_cast<double>(R);
          }
        }
      }
    }
    for (std::size_t p = 0; p < nodes; ++p) magnitude[p] = std::max(magnitude[p], std::abs(buf[p]));
  }

  std::vector<std::size_t> order(nodes);
  for (std::size_t p = 0; p < nodes; ++p) order[p] = p;
  std::sort(order.begin(), order.end(),
            [&magnitude](std::size_t a, std::size_t b) { return magnitude[a] > magnitude[b]; });

  ordered_json out = ordered_json::array();
  for (int rank = 0; rank < count && rank < static_cast<int>(nodes); ++rank) {
    const std::size_t p = order[static_cast<std::size_t>(rank)];
    if (magnitude[p] < 1e-300) break;
    std::vector<int> k(static_cast<std::size_t>(n), 0);
    for (int a = 0; a < n; ++a) {
      const int R = chart.resolution()[static_cast<std::size_t>(a)];
      int kk = static_cast<int>((p / chart.stride(a)) % static_cast<std::size_t>(R));
      if (kk > R / 2) kk -= R;
      k[static_cast<std::size_t>(a)] = kk;
    }
    out.push_back({{"k", k}, {"magnitude", magnitude[p]}});
  }
  return out;
}

void write_field_dump(const std::filesystem::path& dir, const std::string& basename,
                      const SpatialField& f) {
  const std::filesystem::path bin = dir / (basename + ".bin");
  std::ofstream out(bin, std::ios::binary);
  static_assert(std::endian::native == std::endian::little,
                "field dumps are written little-endian");
  out.write(reinterpret_cast<const char*>(f.raw().data()),
            static_cast<std::streamsize>(f.raw().size() * sizeof(double)));

  ordered_json header;
  header["dtype"] = "float64";
  header["byte_order"] = "little-endian";
  header["layout"] = "component-major; node index row-major with axis 0 slowest";
  header["n"] = f.chart()->dim();
  header["rank"] = f.rank();
  header["index_dim"] = f.index_dim();
  header["resolution"] = f.chart()->resolution();
  header["period"] = f.chart()->period();
  header["components"] = f.num_components();
  header["num_nodes"] = f.num_nodes();
  std::ofstream meta(dir / (basename + ".json"));
  meta << header.dump(2) << "\n";
}

ordered_json diagnostics_to_json(const std::vector<OrderDiagnostics>& diags) {
  ordered_json out = ordered_json::array();
  for (const auto& d : diags) {
    out.push_back({{"order", d.order},
                   {"log_level", d.log_level},
                   {"forcing_norm", d.forcing_norm},
                   {"f1", d.f1_norm},
                   {"f2", d.f2_norm},
                   {"f3", d.f3_norm},
                   {"f4", d.f4_norm},
                   {"kernel_defect", d.kernel_defect},
                   {"row_consistency_defect", d.row_consistency_defect},
                   {"solved", d.solved}});
  }
  return out;
}

ordered_json coefficients_to_json(const ExpansionResult& result, const SpatialMetric& g0) {
  ordered_json out = ordered_json::array();
  for (const auto& [key, coeff] : result.coeffs) {
    out.push_back({{"i", key.i},
                   {"m", key.m},
                   {"sup_norm", coeff.sup_norm()},
                   {"trace_defect", trace(g0, coeff).sup_norm()},
                   {"top_modes", top_fourier_modes(coeff, 3)}});
  }
  return out;
}

ordered_json decay_to_json(const DecayReport& report) {
  ordered_json out;
  out["s_samples"] = report.s_samples;
  out["norms"] = report.norms;
  out["exact_zero"] = report.exact_zero;
  if (report.exact_zero) {
    out["fitted_slope"] = "exact-zero";
  } else {
    out["fitted_slope"] = report.fitted_slope;
  }
  out["log_correction_used"] = report.log_correction_used;
  out["leading_order"] = report.leading_order;
  return out;
}

}  // namespace

RunOutcome run(const RunConfig& config) {
  RunOutcome outcome;
  ordered_json report;
  report["config_hash"] = config_hash(config);
  report["mode"] = config.mode;
  report["n"] = config.n;
  report["seed"] = config.seed;

  const std::filesystem::path dir = config.out_dir;
  const bool write_files = !config.out_dir.empty();
  if (write_files) std::filesystem::create_directories(dir);

  auto finish = [&](int code, const std::string& error) {
    report["exit_status"] = code;
    outcome.exit_code = code;
    outcome.error = error;
    outcome.report_json = report.dump(2);
    if (write_files) {
      std::ofstream out(dir / "report.json");
      out << outcome.report_json << "\n";
    }
    return outcome;
  };

  auto failure_json = [](int order, double defect, const std::string& check,
                         const std::string& message) {
    return ordered_json{
        {"order", order}, {"defect", defect}, {"check", check}, {"message", message}};
  };

  try {
    if (config.mode == "roots") {
      const auto gauged = indicial_roots(config.n);
      ordered_json roots = ordered_json::array();
      for (const auto& r : gauged) roots.push_back(r.str());
      report["gauged_roots"] = roots;

      const auto prop =
          rational_roots_with_multiplicity(gauge_propagation_indicial(config.n).determinant());
      ordered_json prop_roots = ordered_json::array();
      for (const auto& r : prop) prop_roots.push_back(r.str());
      report["gauge_propagation_roots"] = prop_roots;

      report["gauged_determinant"] = "L (L-2)^2 (L-3) (L-" + std::to_string(config.n) + ")^3 (L-" +
                                     std::to_string(config.n + 1) + ")";
      ordered_json family = ordered_json::array();
      for (const auto& r : gauged) {
        family.push_back({{"lambda", r.str()},
                          {"einstein_family_rank", rational_rank(ricci_indicial(config.n).eval(r))},
                          {"gauged_rank", rational_rank(gauged_indicial(config.n).eval(r))}});
      }
      report["einstein_family_at_roots"] = family;
      return finish(0, "");
    }

    const ChartPtr chart = Chart::make(config.n, config.chart.resolution, config.chart.period);
    SpatialMetric g0{sym2_from_modes(chart, config.g0_modes, true)};
    const SpatialField gn = sym2_from_modes(chart, config.gn_modes, false);
    const Tolerances tol = config.tol;

    if (config.mode == "obstruction") {
      const SpatialField obstruction = obstruction_tensor(g0, config.n, tol);
      report["obstruction"] = {{"sup_norm", obstruction.sup_norm()},
                               {"trace_defect", trace(g0, obstruction).sup_norm()},
                               {"top_modes", top_fourier_modes(obstruction, 3)}};
      if (write_files) write_field_dump(dir, "obstruction", obstruction);
      return finish(0, "");
    }

    const BoundaryData data{config.n, config.N, g0, gn, tol};
    const ExpansionResult result = expand(data);

    report["data_defects"] = {{"trace", result.data_defects.trace_defect},
                              {"divergence", result.data_defects.divergence_defect},
                              {"positive_definite", result.data_defects.positive_definite}};
    report["max_coeff_norm"] = result.max_coeff_norm;
    report["residual_coeff_norm"] = result.residual_coeff_norm;
    report["coefficients"] = coefficients_to_json(result, g0);
    report["diagnostics"] = diagnostics_to_json(result.diagnostics);
    if (result.obstruction) {
      report["obstruction"] = {{"sup_norm", result.obstruction->sup_norm()},
                               {"top_modes", top_fourier_modes(*result.obstruction, 3)}};
    }

    if (write_files && config.mode == "expand") {
      for (const auto& [key, coeff] : result.coeffs) {
        write_field_dump(dir, "coeff_i" + std::to_string(key.i) + "_m" + std::to_string(key.m),
                         coeff);
      }
      if (result.obstruction) write_field_dump(dir, "obstruction", *result.obstruction);
    }

    if (config.mode == "verify") {
      const std::vector<double> samples =
          config.s_samples.empty() ? default_s_samples() : config.s_samples;
      const DecayReport decay = residual_report(result, samples);
      report["decay"] = decay_to_json(decay);
      if (write_files) {
        std::ofstream csv(dir / "decay.csv");
        csv << decay_report_csv(decay);
      }

      const double s_check = 0.05;
      const auto cmp =
          compare_fields(frame_to_coordinates_at(frame_ricci(result.metric), s_check),
                         fd_oracle_ricci(result.metric, s_check), 1e-6 * tol.scale_factor);
      report["oracle_check"] = {
          {"s", s_check}, {"max_rel_diff", cmp.max_rel_diff}, {"pass", cmp.pass}};

      const double slope_threshold = static_cast<double>(config.N) + 0.5;
      const bool slope_ok = decay.exact_zero || decay.fitted_slope >= slope_threshold;
      report["slope_threshold"] = slope_threshold;
      if (!slope_ok) {
        report["failure"] = failure_json(config.N, decay.fitted_slope, "decay-slope",
                                         "fitted slope below threshold");
        return finish(4, "verification failure: fitted slope " +
                             std::to_string(decay.fitted_slope) + " below threshold " +
                             std::to_string(slope_threshold));
      }
      if (!cmp.pass) {
        report["failure"] =
            failure_json(config.N, cmp.max_rel_diff, "oracle", "coordinate oracle mismatch");
        return finish(4, "verification failure: oracle mismatch " +
                             std::to_string(cmp.max_rel_diff));
      }
    }
    return finish(0, "");
  } catch (const SolvabilityViolation& err) {
    report["failure"] = failure_json(err.order(), err.defect(), err.check(), err.what());
    return finish(3, err.what());
  } catch (const ParityViolation& err) {
    report["failure"] = failure_json(err.order(), err.defect(), "parity", err.what());
    return finish(3, err.what());
  } catch (const ConfigError& err) {
    report["failure"] = failure_json(-1, 0.0, "config", err.what());
    return finish(2, err.what());
  } catch (const std::invalid_argument& err) {
    report["failure"] = failure_json(-1, 0.0, "input", err.what());
    return finish(2, err.what());
  }
}

}  // namespace fgx
