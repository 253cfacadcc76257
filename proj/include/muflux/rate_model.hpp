#pragma once

// Total coincidence rate of a tilted rectangular detector:
//
//   Phi(theta_zenith) = int_{-alpha/2}^{alpha/2} int_{-beta/2}^{beta/2}
//                         I(theta_mod) A'(theta, phi) w(theta) dphi dtheta
//
// with theta_mod the global zenith of the local direction (theta, phi) and
// w the angular weight. Directions pointing below the horizon, or within the
// horizon cut of it, contribute nothing.

#include <cstdint>
#include <vector>

#include "muflux/atmosphere.hpp"
#include "muflux/geometry.hpp"

namespace muflux {

enum class QuadratureScheme { GaussLegendreComposite, AdaptiveSimpson };

enum class AngularWeight {
  AbsSin,  // |sin theta|
  Cos,     // cos theta
};

inline constexpr double kMinTargetRelTol = 1e-12;

struct QuadratureConfig {
  QuadratureScheme scheme = QuadratureScheme::GaussLegendreComposite;
  double target_rel_tol = 1e-6;
  int max_subdivisions = 2000;
  double horizon_cut_deg = 15.0;
  AngularWeight angular_weight = AngularWeight::AbsSin;

  void validate() const;
};

struct RatePrediction {
  double rate = 0.0;              // counts / min
  double numerical_error = 0.0;   // quadrature error estimate, or MC standard error
};

struct SweepResult {
  double theta_zenith;
  RatePrediction prediction;
};

// Intensity times angular weight for local direction (theta, phi) of a
// detector tilted by theta_zenith; zero for masked directions.
double sky_weight(double theta_zenith, double theta, double phi, const AtmosphereModel& model,
                  const QuadratureConfig& cfg);

// Throws ConvergenceError (with the best estimate) if the tolerance is not met.
RatePrediction total_rate(const DetectorGeometry& geom, double theta_zenith,
                          const AtmosphereModel& model, const QuadratureConfig& cfg = {});

// total_rate at each angle; points are evaluated concurrently.
std::vector<SweepResult> angular_sweep(const DetectorGeometry& geom,
                                       const std::vector<double>& angles,
                                       const AtmosphereModel& model,
                                       const QuadratureConfig& cfg = {});

// Monte Carlo estimate of the same integral. Entry points are uniform on the
// top face and local angles uniform over the aperture box; a ray counts only
// if its straight continuation leaves the detector box through the bottom
// face. numerical_error carries the standard error. Deterministic in seed
// and independent of the worker count.
RatePrediction mc_rate(const DetectorGeometry& geom, double theta_zenith,
                       const AtmosphereModel& model, std::uint64_t n_samples, std::uint64_t seed,
                       const QuadratureConfig& cfg = {});

// True when a ray entering the top face at (x, y) with local direction
// (theta, phi) exits through the bottom face rather than a side face.
bool exits_through_bottom(const DetectorGeometry& geom, double x, double y, double theta,
                          double phi);

// Overlap area at fixed (theta, phi) estimated by ray tracing n_samples
// uniform entry points [cm^2], with its binomial standard error.
RatePrediction ray_traced_area(const DetectorGeometry& geom, double theta, double phi,
                               std::uint64_t n_samples, std::uint64_t seed);

}  // namespace muflux
