#include "run_config.hpp"

#include <yaml-cpp/yaml.h>

#include <set>

#include "muflux/errors.hpp"

namespace muflux::cli {

namespace {

void reject_unknown(const YAML::Node& node, const std::string& section,
                    const std::set<std::string>& allowed) {
  if (!node.IsMap()) throw ConfigError("'" + section + "' must be a mapping");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.contains(key)) {
      throw ConfigError("unknown key '" + key + "' in '" + section + "'");
    }
  }
}

template <typename T>
T get(const YAML::Node& node, const std::string& key, const std::string& section) {
  try {
    return node[key].as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError("bad value for '" + section + "." + key + "'");
  }
}

template <typename T>
void maybe(const YAML::Node& node, const std::string& key, const std::string& section, T& out) {
  if (node[key]) out = get<T>(node, key, section);
}

std::pair<double, double> pair_of(const YAML::Node& node, const std::string& key,
                                  const std::string& section) {
  const auto values = get<std::vector<double>>(node, key, section);
  if (values.size() != 2) throw ConfigError("'" + section + "." + key + "' needs two values");
  return {values[0], values[1]};
}

void load_geometry(const YAML::Node& node, RunConfig& cfg) {
  if (node["chip"]) {
    reject_unknown(node, "geometry", {"chip"});
    const auto chip_node = node["chip"];
    reject_unknown(chip_node, "geometry.chip", {"side_a_mm", "side_b_mm", "thickness_mm"});
    ChipGeometry chip{get<double>(chip_node, "side_a_mm", "geometry.chip"),
                      get<double>(chip_node, "side_b_mm", "geometry.chip"),
                      get<double>(chip_node, "thickness_mm", "geometry.chip")};
    try {
      cfg.geometry = chip_as_detector(chip);
    } catch (const DomainError& e) {
      throw ConfigError(std::string("geometry.chip: ") + e.what());
    }
    cfg.geometry_label = "chip";
    return;
  }
  reject_unknown(node, "geometry", {"length_cm", "width_cm", "gap_cm"});
  try {
    cfg.geometry = DetectorGeometry::telescope(get<double>(node, "length_cm", "geometry"),
                                               get<double>(node, "width_cm", "geometry"),
                                               get<double>(node, "gap_cm", "geometry"));
  } catch (const DomainError& e) {
    throw ConfigError(std::string("geometry: ") + e.what());
  }
  cfg.geometry_label = "telescope";
}

void load_sites(const YAML::Node& node, RunConfig& cfg) {
  if (!node.IsSequence()) throw ConfigError("'sites' must be a list");
  cfg.sites.clear();
  for (const auto& item : node) {
    const std::string section = "sites[" + std::to_string(cfg.sites.size()) + "]";
    reject_unknown(item, section,
                   {"name", "depth_m", "counts", "live_time_min", "rock_conversion", "singles_cpm",
                    "singles_sigma_cpm"});
    SiteSpec site;
    site.name = get<std::string>(item, "name", section);
    site.depth_m = get<double>(item, "depth_m", section);
    site.counts = get<std::uint64_t>(item, "counts", section);
    site.live_time_min = get<double>(item, "live_time_min", section);
    maybe(item, "rock_conversion", section, site.rock_conversion);
    if (item["singles_cpm"]) {
      const auto [n1, n2] = pair_of(item, "singles_cpm", section);
      std::pair<double, double> sig{0.0, 0.0};
      if (item["singles_sigma_cpm"]) sig = pair_of(item, "singles_sigma_cpm", section);
      site.singles = std::pair{RateValue{n1, sig.first}, RateValue{n2, sig.second}};
    } else if (item["singles_sigma_cpm"]) {
      throw ConfigError(section + ": singles_sigma_cpm given without singles_cpm");
    }
    cfg.sites.push_back(std::move(site));
  }
}

}  // namespace

OutputFormat parse_format(const std::string& text) {
  if (text == "json") return OutputFormat::Json;
  if (text == "csv") return OutputFormat::Csv;
  throw ConfigError("unknown output format '" + text + "' (json or csv)");
}

QuadratureScheme parse_scheme(const std::string& text) {
  if (text == "gauss-legendre") return QuadratureScheme::GaussLegendreComposite;
  if (text == "simpson") return QuadratureScheme::AdaptiveSimpson;
  throw ConfigError("unknown quadrature scheme '" + text + "' (gauss-legendre or simpson)");
}

AngularWeight parse_weight(const std::string& text) {
  if (text == "abs-sin") return AngularWeight::AbsSin;
  if (text == "cos") return AngularWeight::Cos;
  throw ConfigError("unknown angular weight '" + text + "' (abs-sin or cos)");
}

const char* weight_name(AngularWeight w) {
  return w == AngularWeight::AbsSin ? "abs-sin" : "cos";
}

void RunConfig::validate() const {
  try {
    atmosphere.validate();
    coincidence.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  quadrature.validate();
  for (const auto& site : sites) {
    if (site.name.empty()) throw ConfigError("site without a name");
    if (!(site.live_time_min > 0.0)) {
      throw ConfigError("site '" + site.name + "': live_time_min must be positive");
    }
    if (!(site.depth_m >= 0.0)) {
      throw ConfigError("site '" + site.name + "': depth_m must be non-negative");
    }
    if (site.singles && (!(site.singles->first.rate >= 0.0) || !(site.singles->second.rate >= 0.0) ||
                         !(site.singles->first.sigma >= 0.0) || !(site.singles->second.sigma >= 0.0))) {
      throw ConfigError("site '" + site.name + "': singles rates must be non-negative");
    }
  }
}

RunConfig preset_config(const std::string& name) {
  RunConfig cfg;
  if (name == "paper-telescope") {
    cfg.geometry = presets::scintillator_telescope();
    cfg.geometry_label = name;
    cfg.coincidence = {20.0, 2.0};
    return cfg;
  }
  if (name == "paper-chip") {
    cfg.geometry = chip_as_detector(presets::silicon_chip());
    cfg.geometry_label = name;
    return cfg;
  }
  throw ConfigError("unknown preset '" + name + "' (paper-telescope or paper-chip)");
}

void load_config_file(const std::string& path, RunConfig& cfg) {
  YAML::Node root;
  try {
    root = YAML::LoadFile(path);
  } catch (const YAML::BadFile&) {
    throw ConfigError("cannot read config file '" + path + "'");
  } catch (const YAML::Exception& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
  if (root.IsNull()) return;
  reject_unknown(root, "config",
                 {"geometry", "atmosphere", "quadrature", "coincidence", "sites", "output", "seed"});

  if (root["geometry"]) load_geometry(root["geometry"], cfg);
  if (const auto node = root["atmosphere"]) {
    reject_unknown(node, "atmosphere", {"earth_radius_km", "atmosphere_km", "vertical_intensity"});
    maybe(node, "earth_radius_km", "atmosphere", cfg.atmosphere.earth_radius_km);
    maybe(node, "atmosphere_km", "atmosphere", cfg.atmosphere.atmosphere_km);
    maybe(node, "vertical_intensity", "atmosphere", cfg.atmosphere.vertical_intensity);
  }
  if (const auto node = root["quadrature"]) {
    reject_unknown(node, "quadrature",
                   {"scheme", "rel_tol", "max_subdivisions", "horizon_cut_deg", "angular_weight"});
    if (node["scheme"]) cfg.quadrature.scheme = parse_scheme(get<std::string>(node, "scheme", "quadrature"));
    maybe(node, "rel_tol", "quadrature", cfg.quadrature.target_rel_tol);
    maybe(node, "max_subdivisions", "quadrature", cfg.quadrature.max_subdivisions);
    maybe(node, "horizon_cut_deg", "quadrature", cfg.quadrature.horizon_cut_deg);
    if (node["angular_weight"]) {
      cfg.quadrature.angular_weight =
          parse_weight(get<std::string>(node, "angular_weight", "quadrature"));
    }
  }
  if (const auto node = root["coincidence"]) {
    reject_unknown(node, "coincidence", {"tau_us", "tau_sigma_us"});
    maybe(node, "tau_us", "coincidence", cfg.coincidence.tau_us);
    maybe(node, "tau_sigma_us", "coincidence", cfg.coincidence.tau_sigma_us);
  }
  if (root["sites"]) load_sites(root["sites"], cfg);
  if (root["output"]) cfg.format = parse_format(get<std::string>(root, "output", "config"));
  maybe(root, "seed", "config", cfg.seed);
}

}  // namespace muflux::cli
