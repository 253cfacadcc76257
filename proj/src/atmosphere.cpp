#include "muflux/atmosphere.hpp"

#include <algorithm>
#include <cmath>

#include "muflux/errors.hpp"
#include "muflux/units.hpp"

namespace muflux {

namespace {

// Slant thickness as a function of |cos theta|. Written as
// (a^2 + 2ar) / (r c + sqrt(...)) to avoid cancelling two ~r terms near the
// vertical.
double slant_thickness(double abs_cos, const AtmosphereModel& model) {
  const double r = model.earth_radius_km;
  const double a = model.atmosphere_km;
  const double rc = r * abs_cos;
  const double q = a * a + 2.0 * a * r;
  return q / (rc + std::sqrt(q + rc * rc));
}

}  // namespace

void AtmosphereModel::validate() const {
  if (!(earth_radius_km > 0.0) || !std::isfinite(earth_radius_km)) {
    throw DomainError("earth_radius_km must be positive");
  }
  if (!(atmosphere_km > 0.0) || !std::isfinite(atmosphere_km)) {
    throw DomainError("atmosphere_km must be positive");
  }
  if (!(earth_radius_km > atmosphere_km)) {
    throw DomainError("earth radius must exceed the atmosphere thickness");
  }
  if (!(vertical_intensity >= 0.0) || !std::isfinite(vertical_intensity)) {
    throw DomainError("vertical intensity must be non-negative");
  }
}

double path_length(double theta, const AtmosphereModel& model) {
  if (!(theta >= 0.0 && theta <= 0.5 * units::kPi)) {
    throw DomainError("path_length: theta must lie in [0, pi/2]");
  }
  // cos(pi/2) is 6e-17, not 0; clamp so the horizontal limit is exact.
  const double c = theta == 0.5 * units::kPi ? 0.0 : std::cos(theta);
  return slant_thickness(c, model);
}

double corrected_intensity(double theta, const AtmosphereModel& model) {
  const double ratio = model.atmosphere_km / slant_thickness(std::fabs(std::cos(theta)), model);
  return model.vertical_intensity * ratio * ratio;
}

double naive_intensity(double theta, double vertical_intensity) {
  const double c = std::cos(theta);
  return vertical_intensity * c * c;
}

double transformed_zenith(double theta_zenith, double theta, double phi) {
  const double s = std::sin(theta_zenith + theta) * std::cos(0.5 * phi);
  return std::asin(std::clamp(s, -1.0, 1.0));
}

}  // namespace muflux
