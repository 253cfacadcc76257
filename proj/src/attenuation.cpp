#include "muflux/attenuation.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "muflux/errors.hpp"
#include "muflux/units.hpp"

namespace muflux {

void SiteMeasurement::validate() const {
  if (!(depth_m >= 0.0) || !std::isfinite(depth_m)) {
    throw ConfigError("site '" + name + "': depth must be non-negative");
  }
  if (!(rock_conversion >= 2.0 && rock_conversion <= 3.5)) {
    throw ConfigError("site '" + name + "': rock conversion outside [2.0, 3.5] m.w.e./m");
  }
  if (!(coincidence.rate >= 0.0) || !(coincidence.sigma >= 0.0)) {
    throw ConfigError("site '" + name + "': rate and sigma must be non-negative");
  }
}

ScreeningFactor screening_factor(const RateValue& surface, const RateValue& depth) {
  if (!(depth.rate > 0.0)) {
    throw DomainError("screening factor needs a positive depth rate");
  }
  const double factor = surface.rate / depth.rate;
  const double rel_depth = depth.sigma / depth.rate;
  // Written without dividing by surface.rate so a zero surface rate is fine.
  const double sigma = std::hypot(surface.sigma / depth.rate, factor * rel_depth);
  return {factor, sigma};
}

double mwe_depth(double depth_m, double conversion) {
  if (!(depth_m >= 0.0) || !(conversion > 0.0)) {
    throw DomainError("mwe_depth: depth must be >= 0 and conversion > 0");
  }
  return depth_m * conversion;
}

ChipExposure chip_impact_rate(double area_cm2, double surface_rate_density, double screening) {
  if (!(area_cm2 > 0.0) || !(surface_rate_density > 0.0) || !(screening > 0.0)) {
    throw DomainError("chip_impact_rate: area, rate density and screening must be positive");
  }
  ChipExposure out;
  out.area_cm2 = area_cm2;
  out.surface_rate_density = surface_rate_density;
  out.screening = screening;
  out.predicted_rate = area_cm2 * surface_rate_density / screening;
  out.predicted_rate_hz = out.predicted_rate / units::kSecondsPerMinute;
  return out;
}

DepthReport depth_report(const std::vector<SiteMeasurement>& sites) {
  const SiteMeasurement* reference = nullptr;
  for (const auto& site : sites) {
    site.validate();
    if (site.depth_m == 0.0) {
      if (reference != nullptr) {
        throw ConfigError("more than one surface (depth 0) site: '" + reference->name +
                          "' and '" + site.name + "'");
      }
      reference = &site;
    }
  }
  if (reference == nullptr) {
    throw ConfigError("depth report needs exactly one surface site at depth 0");
  }

  DepthReport report;
  report.reference = reference->name;
  for (const auto& site : sites) {
    SiteReport row{site.name,
                   site.depth_m,
                   site.coincidence.rate,
                   site.coincidence.sigma,
                   &site == reference ? ScreeningFactor{1.0, 0.0}
                                      : screening_factor(reference->coincidence, site.coincidence),
                   mwe_depth(site.depth_m, site.rock_conversion),
                   mwe_depth(site.depth_m, kMweLow),
                   mwe_depth(site.depth_m, kMweHigh)};
    report.sites.push_back(std::move(row));
  }
  std::sort(report.sites.begin(), report.sites.end(), [](const auto& a, const auto& b) {
    return std::tie(a.depth_m, a.name) < std::tie(b.depth_m, b.name);
  });
  return report;
}

SiteMeasurement site_from_counts(std::string name, double depth_m, std::uint64_t counts,
                                 double live_time_min,
                                 std::optional<std::pair<RateValue, RateValue>> singles,
                                 const CoincidenceSetup& setup, double rock_conversion) {
  const RateValue raw = rate_from_counts(counts, live_time_min).value();
  SiteMeasurement site{std::move(name), depth_m, rock_conversion, raw};
  if (singles) {
    const auto corrected =
        corrected_coincidence(raw, accidental_rate(singles->first, singles->second, setup));
    site.coincidence = {corrected.rate, corrected.sigma};
  }
  return site;
}

}  // namespace muflux
