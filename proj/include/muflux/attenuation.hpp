#pragma once

// Underground screening: surface-to-depth rate ratios, meter-water-equivalent
// depth bands and expected impact rates on a chip.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "muflux/counting.hpp"

namespace muflux {

// Rock-dependent conversion band [m.w.e. per m].
inline constexpr double kMweLow = 2.4;
inline constexpr double kMweHigh = 3.0;
inline constexpr double kMweDefault = 2.7;

// Surface muon rate on a horizontal chip [counts / min / cm^2]: the measured
// 0.54, and the commonly quoted round value of 1.
inline constexpr double kChipSurfaceRateDensity = 0.54;
inline constexpr double kRoundSurfaceRateDensity = 1.0;

struct ScreeningFactor {
  double factor = 0.0;
  double sigma = 0.0;
};

struct SiteMeasurement {
  std::string name;
  double depth_m = 0.0;
  double rock_conversion = kMweDefault;
  RateValue coincidence;  // accidental-corrected

  void validate() const;
};

struct ChipExposure {
  double area_cm2 = 0.0;
  double surface_rate_density = 0.0;
  double screening = 1.0;
  double predicted_rate = 0.0;     // counts / min
  double predicted_rate_hz = 0.0;  // counts / s
};

struct SiteReport {
  std::string name;
  double depth_m;
  double rate;
  double rate_sigma;
  ScreeningFactor screening;
  double mwe;       // at the site's own conversion
  double mwe_low;   // band endpoints
  double mwe_high;
};

struct DepthReport {
  std::string reference;
  std::vector<SiteReport> sites;  // sorted by depth, then name
};

// surface / depth with ratio error propagation; depth.rate must be > 0.
ScreeningFactor screening_factor(const RateValue& surface, const RateValue& depth);

double mwe_depth(double depth_m, double conversion);

ChipExposure chip_impact_rate(double area_cm2, double surface_rate_density, double screening);

// Exactly one site must sit at depth 0; it is the reference.
DepthReport depth_report(const std::vector<SiteMeasurement>& sites);

// Builds a site from raw coincidence counts, subtracting accidentals when
// the singles rates are known.
SiteMeasurement site_from_counts(std::string name, double depth_m, std::uint64_t counts,
                                 double live_time_min,
                                 std::optional<std::pair<RateValue, RateValue>> singles,
                                 const CoincidenceSetup& setup,
                                 double rock_conversion = kMweDefault);

}  // namespace muflux
