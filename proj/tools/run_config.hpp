#pragma once

// Run configuration for the command-line tool: a preset, then an optional
// YAML file, then command-line flags, each overriding the previous.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "muflux/atmosphere.hpp"
#include "muflux/counting.hpp"
#include "muflux/geometry.hpp"
#include "muflux/rate_model.hpp"

namespace muflux::cli {

enum class OutputFormat { Json, Csv };

struct SiteSpec {
  std::string name;
  double depth_m = 0.0;
  std::uint64_t counts = 0;
  double live_time_min = 0.0;
  double rock_conversion = 2.7;
  // Singles rates and errors [CPM]; when present accidentals are subtracted.
  std::optional<std::pair<RateValue, RateValue>> singles;
};

struct RunConfig {
  DetectorGeometry geometry = presets::scintillator_telescope();
  std::string geometry_label = "paper-telescope";
  AtmosphereModel atmosphere;
  QuadratureConfig quadrature;
  CoincidenceSetup coincidence;
  std::vector<SiteSpec> sites;
  std::optional<OutputFormat> format;
  std::uint64_t seed = 7;

  // Throws ConfigError.
  void validate() const;
};

// Throws ConfigError for unknown names.
RunConfig preset_config(const std::string& name);

// Merges the YAML file into cfg. Unknown keys and bad values are ConfigErrors.
void load_config_file(const std::string& path, RunConfig& cfg);

OutputFormat parse_format(const std::string& text);
QuadratureScheme parse_scheme(const std::string& text);
AngularWeight parse_weight(const std::string& text);
const char* weight_name(AngularWeight w);

}  // namespace muflux::cli
