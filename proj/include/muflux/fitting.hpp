#pragma once

// Vertical-intensity fit. The forward model is linear in I0, so the
// least-squares estimate is closed-form:
//   I0 = sum(y_i u_i / s_i^2) / sum(u_i^2 / s_i^2)
// with u_i the rate predicted at unit intensity for point i.

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "muflux/atmosphere.hpp"
#include "muflux/geometry.hpp"
#include "muflux/rate_model.hpp"

namespace muflux {

struct SweepPoint {
  double theta_zenith;  // rad
  double rate;          // counts / min
  double sigma;         // counts / min
  bool flagged = false; // accidental-dominated
};

struct AngularSweep {
  std::vector<SweepPoint> points;

  void validate() const;
};

struct FitResult {
  double i0 = 0.0;
  double i0_sigma = 0.0;
  double chi2 = 0.0;
  int ndf = 0;
  std::size_t n_points = 0;
};

struct FitOptions {
  bool weighted = true;
  bool include_flagged = false;
};

// Caches unit-intensity predictions per tilt angle for one geometry,
// atmosphere and quadrature configuration.
class ForwardModel {
 public:
  ForwardModel(DetectorGeometry geom, const AtmosphereModel& model_template, QuadratureConfig cfg);

  double unit_rate(double theta_zenith);
  // Evaluates any missing angles concurrently, then returns them in order.
  std::vector<double> unit_rates(std::span<const double> angles);

  const DetectorGeometry& geometry() const { return geom_; }
  const AtmosphereModel& unit_model() const { return unit_model_; }
  const QuadratureConfig& config() const { return cfg_; }

 private:
  DetectorGeometry geom_;
  AtmosphereModel unit_model_;
  QuadratureConfig cfg_;
  std::map<double, double> cache_;
};

// Closed-form solve given the unit-intensity prediction of every point.
FitResult fit_linear_intensity(std::span<const SweepPoint> points,
                               std::span<const double> unit_predictions,
                               const FitOptions& options = {});

FitResult fit_intensity(const AngularSweep& sweep, ForwardModel& forward,
                        const FitOptions& options = {});

FitResult fit_intensity(const AngularSweep& sweep, const DetectorGeometry& geom,
                        const AtmosphereModel& model_template, const QuadratureConfig& cfg,
                        const FitOptions& options = {});

}  // namespace muflux
