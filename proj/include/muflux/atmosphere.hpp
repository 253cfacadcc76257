#pragma once

// Zenith dependence of the sea-level muon intensity. The corrected law scales
// the vertical intensity by the squared ratio of the vertical atmosphere
// thickness to the slant thickness crossed at zenith angle theta, on a
// spherical Earth.

namespace muflux {

struct AtmosphereModel {
  double earth_radius_km = 6400.0;
  double atmosphere_km = 10.0;
  double vertical_intensity = 0.420;  // cm^-2 sr^-1 min^-1

  void validate() const;

  AtmosphereModel with_intensity(double i0) const {
    AtmosphereModel copy = *this;
    copy.vertical_intensity = i0;
    return copy;
  }
};

// Slant thickness p(theta) = -r cos(theta) + sqrt(a^2 + 2ar + (r cos(theta))^2)
// for theta in [0, pi/2] [km].
double path_length(double theta, const AtmosphereModel& model);

// I0 (a / p)^2 evaluated with |cos theta|, so any finite theta is accepted.
double corrected_intensity(double theta, const AtmosphereModel& model);

// I0 cos^2(theta).
double naive_intensity(double theta, double vertical_intensity);

// Global zenith angle of a direction seen at local angles (theta, phi) by a
// detector tilted by theta_zenith: asin(sin(theta_zenith + theta) cos(phi/2)).
double transformed_zenith(double theta_zenith, double theta, double phi);

}  // namespace muflux
