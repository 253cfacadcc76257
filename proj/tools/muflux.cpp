// muflux command-line tool.
//
// Exit codes: 0 success, 1 internal error, 2 usage or configuration error,
// 3 bad input data, 4 quadrature did not converge.

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "muflux/attenuation.hpp"
#include "muflux/counting.hpp"
#include "muflux/errors.hpp"
#include "muflux/fitting.hpp"
#include "muflux/ingest.hpp"
#include "muflux/rate_model.hpp"
#include "muflux/units.hpp"
#include "run_config.hpp"

using json = nlohmann::ordered_json;
using namespace muflux;
using namespace muflux::cli;

namespace {

enum ExitCode { kOk = 0, kInternal = 1, kUsage = 2, kData = 3, kConvergence = 4 };

// Shortest round-trip text for a double, so output is byte-stable.
std::string num(double x) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

struct CommonOptions {
  std::string preset = "paper-telescope";
  std::string config_path;
  std::string format;
  std::optional<double> rel_tol;
  std::optional<int> max_subdivisions;
  std::optional<double> horizon_cut_deg;
  std::string weight;
  std::string scheme;
  std::optional<double> tau_us;
  std::optional<double> tau_sigma_us;
};

RunConfig resolve(const CommonOptions& opts, OutputFormat default_format) {
  RunConfig cfg = preset_config(opts.preset);
  if (!opts.config_path.empty()) load_config_file(opts.config_path, cfg);
  if (!opts.format.empty()) cfg.format = parse_format(opts.format);
  if (!cfg.format) cfg.format = default_format;
  if (opts.rel_tol) cfg.quadrature.target_rel_tol = *opts.rel_tol;
  if (opts.max_subdivisions) cfg.quadrature.max_subdivisions = *opts.max_subdivisions;
  if (opts.horizon_cut_deg) cfg.quadrature.horizon_cut_deg = *opts.horizon_cut_deg;
  if (!opts.weight.empty()) cfg.quadrature.angular_weight = parse_weight(opts.weight);
  if (!opts.scheme.empty()) cfg.quadrature.scheme = parse_scheme(opts.scheme);
  if (opts.tau_us) cfg.coincidence.tau_us = *opts.tau_us;
  if (opts.tau_sigma_us) cfg.coincidence.tau_sigma_us = *opts.tau_sigma_us;
  cfg.validate();
  return cfg;
}

json geometry_json(const RunConfig& cfg) {
  const auto& g = cfg.geometry;
  return {{"label", cfg.geometry_label},
          {"kind", g.kind() == DetectorKind::Telescope ? "telescope" : "solid-body"},
          {"length_cm", g.length()},
          {"width_cm", g.width()},
          {"gap_cm", g.gap()},
          {"alpha_deg", units::rad_to_deg(g.alpha())},
          {"beta_deg", units::rad_to_deg(g.beta())}};
}

json rate_json(double rate, double sigma) { return {{"rate_cpm", rate}, {"sigma_cpm", sigma}}; }

std::vector<double> angle_grid(double from, double to, double step) {
  if (!(step > 0.0)) throw ConfigError("--step-deg must be positive");
  if (!(from >= 0.0) || !(to <= 90.0) || !(to >= from)) {
    throw ConfigError("angles must satisfy 0 <= from <= to <= 90 degrees");
  }
  std::vector<double> out;
  for (long i = 0;; ++i) {
    const double deg = from + static_cast<double>(i) * step;
    if (deg > to + 1e-9 * step) break;
    out.push_back(std::min(deg, 90.0));
  }
  return out;
}

// --- sweep-angle -----------------------------------------------------------

struct SweepOptions {
  double from_deg = 0.0;
  double to_deg = 90.0;
  double step_deg = 10.0;
  std::vector<double> angles_deg;
};

int run_sweep(const CommonOptions& common, const SweepOptions& opts) {
  const RunConfig cfg = resolve(common, OutputFormat::Csv);
  const auto degrees =
      opts.angles_deg.empty() ? angle_grid(opts.from_deg, opts.to_deg, opts.step_deg) : opts.angles_deg;
  std::vector<double> radians;
  for (double d : degrees) radians.push_back(units::deg_to_rad(d));
  const auto sweep = angular_sweep(cfg.geometry, radians, cfg.atmosphere, cfg.quadrature);

  if (*cfg.format == OutputFormat::Csv) {
    std::cout << "angle_deg,rate_cpm,num_error_cpm\n";
    for (std::size_t i = 0; i < sweep.size(); ++i) {
      std::cout << num(degrees[i]) << ',' << num(sweep[i].prediction.rate) << ','
                << num(sweep[i].prediction.numerical_error) << '\n';
    }
    return kOk;
  }
  json points = json::array();
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    points.push_back({{"angle_deg", degrees[i]},
                      {"rate_cpm", sweep[i].prediction.rate},
                      {"num_error_cpm", sweep[i].prediction.numerical_error}});
  }
  json out{{"geometry", geometry_json(cfg)},
           {"vertical_intensity", cfg.atmosphere.vertical_intensity},
           {"angular_weight", weight_name(cfg.quadrature.angular_weight)},
           {"horizon_cut_deg", cfg.quadrature.horizon_cut_deg},
           {"points", points}};
  std::cout << out.dump(2) << '\n';
  return kOk;
}

// --- fit-intensity ---------------------------------------------------------

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_number(const std::string& text, std::size_t line_no) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw FormatError("line " + std::to_string(line_no) + ": bad number '" + text + "'");
  }
  return value;
}

// Columns angle_deg,rate_cpm,sigma_cpm with an optional fourth "flagged" (0/1).
AngularSweep read_sweep_csv(std::istream& in) {
  AngularSweep sweep;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_csv(line);
    if (!header_seen) {
      header_seen = true;
      if (fields.size() >= 3 && fields[0] == "angle_deg") {
        if (fields[1] != "rate_cpm" || fields[2] != "sigma_cpm" ||
            (fields.size() == 4 && fields[3] != "flagged") || fields.size() > 4) {
          throw FormatError("expected header angle_deg,rate_cpm,sigma_cpm[,flagged]");
        }
        continue;
      }
    }
    if (fields.size() != 3 && fields.size() != 4) {
      throw FormatError("line " + std::to_string(line_no) + ": expected 3 or 4 fields");
    }
    SweepPoint p{units::deg_to_rad(parse_number(fields[0], line_no)),
                 parse_number(fields[1], line_no), parse_number(fields[2], line_no)};
    if (fields.size() == 4) {
      if (fields[3] != "0" && fields[3] != "1") {
        throw FormatError("line " + std::to_string(line_no) + ": flagged must be 0 or 1");
      }
      p.flagged = fields[3] == "1";
    }
    sweep.points.push_back(p);
  }
  return sweep;
}

struct FitCliOptions {
  std::string input;
  bool include_flagged = false;
  bool unweighted = false;
};

int run_fit(const CommonOptions& common, const FitCliOptions& opts) {
  const RunConfig cfg = resolve(common, OutputFormat::Json);
  AngularSweep sweep;
  if (opts.input == "-") {
    sweep = read_sweep_csv(std::cin);
  } else {
    std::ifstream in(opts.input);
    if (!in) throw FormatError("cannot read '" + opts.input + "'");
    sweep = read_sweep_csv(in);
  }
  const FitOptions fit_opts{.weighted = !opts.unweighted, .include_flagged = opts.include_flagged};
  const auto fit = fit_intensity(sweep, cfg.geometry, cfg.atmosphere, cfg.quadrature, fit_opts);
  if (*cfg.format == OutputFormat::Csv) {
    std::cout << "i0,i0_sigma,chi2,ndf,n_points\n"
              << num(fit.i0) << ',' << num(fit.i0_sigma) << ',' << num(fit.chi2) << ',' << fit.ndf
              << ',' << fit.n_points << '\n';
    return kOk;
  }
  json out{{"i0", fit.i0},
           {"i0_sigma", fit.i0_sigma},
           {"chi2", fit.chi2},
           {"ndf", fit.ndf},
           {"n_points", fit.n_points},
           {"weighted", !opts.unweighted},
           {"include_flagged", opts.include_flagged},
           {"geometry", geometry_json(cfg)},
           {"angular_weight", weight_name(cfg.quadrature.angular_weight)}};
  std::cout << out.dump(2) << '\n';
  return kOk;
}

// --- accidentals -----------------------------------------------------------

struct AccidentalOptions {
  double n1 = 0.0;
  double n2 = 0.0;
  double n1_sigma = 0.0;
  double n2_sigma = 0.0;
};

std::string display(double value, double sigma) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f \xC2\xB1 %.2f", value, sigma);
  return buf;
}

int run_accidentals(const CommonOptions& common, const AccidentalOptions& opts) {
  const RunConfig cfg = resolve(common, OutputFormat::Json);
  const auto na = accidental_rate({opts.n1, opts.n1_sigma}, {opts.n2, opts.n2_sigma}, cfg.coincidence);
  if (*cfg.format == OutputFormat::Csv) {
    std::cout << "rate_cpm,sigma_cpm\n" << num(na.rate) << ',' << num(na.sigma) << '\n';
    return kOk;
  }
  json out{{"rate_cpm", na.rate},
           {"sigma_cpm", na.sigma},
           {"display", display(na.rate, na.sigma)},
           {"tau_us", cfg.coincidence.tau_us},
           {"tau_sigma_us", cfg.coincidence.tau_sigma_us}};
  std::cout << out.dump(2) << '\n';
  return kOk;
}

// --- analyze-log -----------------------------------------------------------

struct LogOptions {
  std::string input;
  double window_min = 60.0;
  double sample_period_s = 60.0;
  bool subtract_accidentals = false;
  std::size_t bad_line_budget = 100;
};

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json channel_json(const RateMeasurement& m) {
  return {{"counts", m.counts()}, {"rate_cpm", m.rate()}, {"sigma_cpm", m.sigma()}};
}

int run_analyze_log(const CommonOptions& common, const LogOptions& opts) {
  const RunConfig cfg = resolve(common, OutputFormat::Json);
  std::ifstream file;
  if (opts.input != "-") {
    file.open(opts.input);
    if (!file) throw FormatError("cannot read '" + opts.input + "'");
  }
  std::istream& in = opts.input == "-" ? std::cin : file;
  const auto parsed = parse_log(in, {.bad_line_budget = opts.bad_line_budget});
  for (const auto& d : parsed.diagnostics) {
    std::cerr << "warning: line " << d.line << ": " << d.message << '\n';
  }
  const auto windows = aggregate(parsed.records, opts.window_min, opts.sample_period_s);
  const bool csv = *cfg.format == OutputFormat::Csv;
  if (csv) {
    std::cout << "window_start,window_end,n_records,live_time_min,ch1_counts,ch2_counts,"
                 "coinc_counts,coinc_rate_cpm,coinc_sigma_cpm";
    if (opts.subtract_accidentals) std::cout << ",corrected_rate_cpm,corrected_sigma_cpm,accidental_dominated";
    std::cout << ",partial\n";
  }
  for (const auto& w : windows) {
    std::optional<CorrectedRate> corrected;
    std::optional<RateValue> accidental;
    if (opts.subtract_accidentals) {
      accidental = accidental_rate(w.ch1.value(), w.ch2.value(), cfg.coincidence);
      corrected = corrected_coincidence(w.coinc.value(), *accidental);
    }
    if (csv) {
      std::cout << format_timestamp(w.window_start) << ',' << format_timestamp(w.window_end) << ','
                << w.n_records << ',' << num(w.live_time_min) << ',' << w.ch1.counts() << ','
                << w.ch2.counts() << ',' << w.coinc.counts() << ',' << num(w.coinc.rate()) << ','
                << num(w.coinc.sigma());
      if (corrected) {
        std::cout << ',' << num(corrected->rate) << ',' << num(corrected->sigma) << ','
                  << (corrected->accidental_dominated ? 1 : 0);
      }
      std::cout << ',' << (w.partial ? 1 : 0) << '\n';
      continue;
    }
    json row{{"window_start", format_timestamp(w.window_start)},
             {"window_end", format_timestamp(w.window_end)},
             {"n_records", w.n_records},
             {"live_time_min", w.live_time_min},
             {"ch1", channel_json(w.ch1)},
             {"ch2", channel_json(w.ch2)},
             {"coinc", channel_json(w.coinc)},
             {"mean_temperature_c", optional_json(w.mean_temperature_c)},
             {"mean_humidity_pct", optional_json(w.mean_humidity_pct)},
             {"mean_pressure_hpa", optional_json(w.mean_pressure_hpa)},
             {"partial", w.partial}};
    if (corrected) {
      row["accidental"] = rate_json(accidental->rate, accidental->sigma);
      row["corrected"] = {{"rate_cpm", corrected->rate},
                          {"sigma_cpm", corrected->sigma},
                          {"accidental_dominated", corrected->accidental_dominated}};
    }
    std::cout << row.dump() << '\n';
  }
  return kOk;
}

// --- depth-report ----------------------------------------------------------

struct DepthOptions {
  double chip_area_cm2 = 1.0;
  double surface_rate_density = kChipSurfaceRateDensity;
};

int run_depth_report(const CommonOptions& common, const DepthOptions& opts) {
  const RunConfig cfg = resolve(common, OutputFormat::Json);
  if (cfg.sites.empty()) throw ConfigError("depth-report needs a 'sites' list in the config file");
  std::vector<SiteMeasurement> sites;
  for (const auto& s : cfg.sites) {
    sites.push_back(site_from_counts(s.name, s.depth_m, s.counts, s.live_time_min, s.singles,
                                     cfg.coincidence, s.rock_conversion));
  }
  const auto report = depth_report(sites);
  if (*cfg.format == OutputFormat::Csv) {
    std::cout << "name,depth_m,rate_cpm,sigma_cpm,screening,screening_sigma,mwe,mwe_low,mwe_high,"
                 "chip_rate_cpm,chip_rate_mhz\n";
  }
  json rows = json::array();
  for (const auto& s : report.sites) {
    std::optional<ChipExposure> chip;
    if (s.screening.factor > 0.0) {
      chip = chip_impact_rate(opts.chip_area_cm2, opts.surface_rate_density, s.screening.factor);
    }
    if (*cfg.format == OutputFormat::Csv) {
      std::cout << s.name << ',' << num(s.depth_m) << ',' << num(s.rate) << ',' << num(s.rate_sigma)
                << ',' << num(s.screening.factor) << ',' << num(s.screening.sigma) << ','
                << num(s.mwe) << ',' << num(s.mwe_low) << ',' << num(s.mwe_high) << ','
                << (chip ? num(chip->predicted_rate) : "") << ','
                << (chip ? num(chip->predicted_rate_hz * 1e3) : "") << '\n';
      continue;
    }
    rows.push_back({{"name", s.name},
                    {"depth_m", s.depth_m},
                    {"rate_cpm", s.rate},
                    {"sigma_cpm", s.rate_sigma},
                    {"screening", s.screening.factor},
                    {"screening_sigma", s.screening.sigma},
                    {"mwe", s.mwe},
                    {"mwe_low", s.mwe_low},
                    {"mwe_high", s.mwe_high},
                    {"chip_rate_cpm", chip ? json(chip->predicted_rate) : json(nullptr)},
                    {"chip_rate_mhz", chip ? json(chip->predicted_rate_hz * 1e3) : json(nullptr)}});
  }
  if (*cfg.format == OutputFormat::Json) {
    json out{{"reference", report.reference},
             {"chip_area_cm2", opts.chip_area_cm2},
             {"surface_rate_density", opts.surface_rate_density},
             {"sites", rows}};
    std::cout << out.dump(2) << '\n';
  }
  return kOk;
}

// --- mc-check --------------------------------------------------------------

struct McOptions {
  std::uint64_t samples = 1'000'000;
  std::optional<std::uint64_t> seed;
  std::vector<double> angles_deg{0.0, 45.0, 90.0};
};

int run_mc_check(const CommonOptions& common, const McOptions& opts) {
  const RunConfig cfg = resolve(common, OutputFormat::Json);
  if (opts.samples == 0) throw ConfigError("--samples must be positive");
  const std::uint64_t seed = opts.seed.value_or(cfg.seed);
  struct Row {
    double deg;
    RatePrediction quad;
    RatePrediction mc;
    double z;
  };
  std::vector<Row> rows;
  for (double deg : opts.angles_deg) {
    if (!(deg >= 0.0 && deg <= 90.0)) throw ConfigError("angles must lie in [0, 90] degrees");
    const double tz = units::deg_to_rad(deg);
    const auto quad = total_rate(cfg.geometry, tz, cfg.atmosphere, cfg.quadrature);
    const auto mc = mc_rate(cfg.geometry, tz, cfg.atmosphere, opts.samples, seed, cfg.quadrature);
    const double se = std::hypot(mc.numerical_error, quad.numerical_error);
    rows.push_back({deg, quad, mc, se > 0.0 ? (mc.rate - quad.rate) / se : 0.0});
  }
  if (*cfg.format == OutputFormat::Csv) {
    std::cout << "angle_deg,quadrature_cpm,quadrature_error_cpm,mc_cpm,mc_stderr_cpm,z\n";
    for (const auto& r : rows) {
      std::cout << num(r.deg) << ',' << num(r.quad.rate) << ',' << num(r.quad.numerical_error) << ','
                << num(r.mc.rate) << ',' << num(r.mc.numerical_error) << ',' << num(r.z) << '\n';
    }
    return kOk;
  }
  json points = json::array();
  for (const auto& r : rows) {
    points.push_back({{"angle_deg", r.deg},
                      {"quadrature_cpm", r.quad.rate},
                      {"quadrature_error_cpm", r.quad.numerical_error},
                      {"mc_cpm", r.mc.rate},
                      {"mc_stderr_cpm", r.mc.numerical_error},
                      {"z", r.z}});
  }
  json out{{"geometry", geometry_json(cfg)},
           {"samples", opts.samples},
           {"seed", seed},
           {"points", points}};
  std::cout << out.dump(2) << '\n';
  return kOk;
}

void add_common(CLI::App* cmd, CommonOptions& common, bool with_quadrature, bool with_tau) {
  cmd->add_option("--preset", common.preset, "Built-in setup: paper-telescope or paper-chip")
      ->capture_default_str();
  cmd->add_option("--config", common.config_path, "YAML run configuration")
      ->check(CLI::ExistingFile);
  cmd->add_option("--format", common.format, "Output format: json or csv");
  if (with_quadrature) {
    cmd->add_option("--rel-tol", common.rel_tol, "Quadrature relative tolerance");
    cmd->add_option("--max-subdivisions", common.max_subdivisions,
                    "Panel bisections allowed per one-dimensional integral");
    cmd->add_option("--horizon-cut-deg", common.horizon_cut_deg, "Horizon cut [deg]");
    cmd->add_option("--weight", common.weight, "Angular weight: abs-sin or cos");
    cmd->add_option("--scheme", common.scheme, "Quadrature scheme: gauss-legendre or simpson");
  }
  if (with_tau) {
    cmd->add_option("--tau-us", common.tau_us, "Coincidence resolving time [us]");
    cmd->add_option("--tau-sigma-us", common.tau_sigma_us, "Resolving time uncertainty [us]");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cosmic-ray muon rate modelling and counting analysis"};
  app.require_subcommand(1);
  CommonOptions common;

  SweepOptions sweep_opts;
  auto* sweep = app.add_subcommand("sweep-angle", "Predicted rate versus tilt angle");
  add_common(sweep, common, true, false);
  sweep->add_option("--from-deg", sweep_opts.from_deg, "First tilt angle")->capture_default_str();
  sweep->add_option("--to-deg", sweep_opts.to_deg, "Last tilt angle")->capture_default_str();
  sweep->add_option("--step-deg", sweep_opts.step_deg, "Angle step")->capture_default_str();
  sweep->add_option("--angles-deg", sweep_opts.angles_deg, "Explicit tilt angles")->delimiter(',');

  FitCliOptions fit_opts;
  auto* fit = app.add_subcommand("fit-intensity", "Fit the vertical intensity to a measured sweep");
  add_common(fit, common, true, false);
  fit->add_option("input", fit_opts.input, "Sweep CSV (angle_deg,rate_cpm,sigma_cpm[,flagged]); - for stdin")
      ->required();
  fit->add_flag("--include-flagged", fit_opts.include_flagged, "Use accidental-dominated points");
  fit->add_flag("--unweighted", fit_opts.unweighted, "Ordinary least squares");

  AccidentalOptions acc_opts;
  auto* acc = app.add_subcommand("accidentals", "Accidental coincidence rate 2 tau N1 N2");
  add_common(acc, common, false, true);
  acc->add_option("--n1-cpm", acc_opts.n1, "Channel 1 singles rate")->required();
  acc->add_option("--n2-cpm", acc_opts.n2, "Channel 2 singles rate")->required();
  acc->add_option("--n1-sigma-cpm", acc_opts.n1_sigma, "Channel 1 rate uncertainty");
  acc->add_option("--n2-sigma-cpm", acc_opts.n2_sigma, "Channel 2 rate uncertainty");

  LogOptions log_opts;
  auto* log = app.add_subcommand("analyze-log", "Windowed rates from a DAQ log");
  add_common(log, common, false, true);
  log->add_option("input", log_opts.input, "Log file; - for stdin")->required();
  log->add_option("--window-min", log_opts.window_min, "Window length [min]")->capture_default_str();
  log->add_option("--sample-period-s", log_opts.sample_period_s, "Period covered by one record [s]")
      ->capture_default_str();
  log->add_flag("--subtract-accidentals", log_opts.subtract_accidentals,
                "Subtract accidentals using each window's singles rates");
  log->add_option("--bad-line-budget", log_opts.bad_line_budget, "Malformed lines tolerated")
      ->capture_default_str();

  DepthOptions depth_opts;
  auto* depth = app.add_subcommand("depth-report", "Screening factors of the configured sites");
  add_common(depth, common, false, true);
  depth->add_option("--chip-area-cm2", depth_opts.chip_area_cm2, "Chip area for exposure predictions")
      ->capture_default_str();
  depth->add_option("--surface-rate-density", depth_opts.surface_rate_density,
                    "Surface rate on the chip [CPM/cm^2]")
      ->capture_default_str();

  McOptions mc_opts;
  auto* mc = app.add_subcommand("mc-check", "Compare quadrature with Monte Carlo ray tracing");
  add_common(mc, common, true, false);
  mc->add_option("--samples", mc_opts.samples, "Monte Carlo samples per angle")->capture_default_str();
  mc->add_option("--seed", mc_opts.seed, "Random seed (default from config, else 7)");
  mc->add_option("--angles-deg", mc_opts.angles_deg, "Tilt angles")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*sweep) return run_sweep(common, sweep_opts);
    if (*fit) return run_fit(common, fit_opts);
    if (*acc) return run_accidentals(common, acc_opts);
    if (*log) return run_analyze_log(common, log_opts);
    if (*depth) return run_depth_report(common, depth_opts);
    if (*mc) return run_mc_check(common, mc_opts);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what() << " (best estimate " << num(e.best_estimate())
              << " +- " << num(e.error_estimate()) << ")\n";
    return kConvergence;
  } catch (const FormatError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  } catch (const FitError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  } catch (const DomainError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kInternal;
}
