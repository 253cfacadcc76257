#include "muflux/fitting.hpp"

#include <cmath>
#include <string>

#include "muflux/errors.hpp"
#include "muflux/parallel.hpp"
#include "muflux/units.hpp"

namespace muflux {

void AngularSweep::validate() const {
  if (points.empty()) {
    throw DomainError("angular sweep needs at least one point");
  }
  for (const auto& p : points) {
    if (!(p.theta_zenith >= 0.0 && p.theta_zenith <= 0.5 * units::kPi)) {
      throw DomainError("sweep angle outside [0, pi/2]: " + std::to_string(p.theta_zenith));
    }
    if (!(p.sigma > 0.0) || !std::isfinite(p.sigma)) {
      throw DomainError("sweep sigmas must be positive");
    }
    if (!(p.rate >= 0.0) || !std::isfinite(p.rate)) {
      throw DomainError("sweep rates must be finite and non-negative");
    }
  }
}

ForwardModel::ForwardModel(DetectorGeometry geom, const AtmosphereModel& model_template,
                           QuadratureConfig cfg)
    : geom_(geom), unit_model_(model_template.with_intensity(1.0)), cfg_(cfg) {
  unit_model_.validate();
  cfg_.validate();
}

double ForwardModel::unit_rate(double theta_zenith) {
  const double angles[] = {theta_zenith};
  return unit_rates(angles).front();
}

std::vector<double> ForwardModel::unit_rates(std::span<const double> angles) {
  std::vector<double> missing;
  for (double a : angles) {
    if (!cache_.contains(a)) {
      missing.push_back(a);
    }
  }
  std::vector<double> computed(missing.size());
  parallel_for(missing.size(), [&](std::size_t i) {
    computed[i] = total_rate(geom_, missing[i], unit_model_, cfg_).rate;
  });
  for (std::size_t i = 0; i < missing.size(); ++i) {
    cache_.emplace(missing[i], computed[i]);
  }
  std::vector<double> out;
  out.reserve(angles.size());
  for (double a : angles) {
    out.push_back(cache_.at(a));
  }
  return out;
}

FitResult fit_linear_intensity(std::span<const SweepPoint> points,
                               std::span<const double> unit_predictions,
                               const FitOptions& options) {
  if (points.size() != unit_predictions.size()) {
    throw DomainError("one unit prediction per sweep point is required");
  }
  double syu = 0.0;   // sum y u w
  double suu = 0.0;   // sum u^2 w
  double suus = 0.0;  // sum u^2 s^2 (unweighted error propagation)
  std::size_t used = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    if (p.flagged && !options.include_flagged) continue;
    const double u = unit_predictions[i];
    const double w = options.weighted ? 1.0 / (p.sigma * p.sigma) : 1.0;
    syu += p.rate * u * w;
    suu += u * u * w;
    suus += u * u * p.sigma * p.sigma;
    ++used;
  }
  if (used == 0) {
    throw FitError("no usable sweep points (all flagged)");
  }
  if (!(suu > 0.0)) {
    throw FitError("all unit-intensity predictions are zero; geometry sees no flux");
  }

  FitResult result;
  result.i0 = syu / suu;
  result.i0_sigma = options.weighted ? 1.0 / std::sqrt(suu) : std::sqrt(suus) / suu;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    if (p.flagged && !options.include_flagged) continue;
    const double r = (p.rate - result.i0 * unit_predictions[i]) / p.sigma;
    result.chi2 += r * r;
  }
  result.n_points = used;
  result.ndf = static_cast<int>(used) - 1;
  return result;
}

FitResult fit_intensity(const AngularSweep& sweep, ForwardModel& forward,
                        const FitOptions& options) {
  sweep.validate();
  std::vector<double> angles;
  angles.reserve(sweep.points.size());
  for (const auto& p : sweep.points) {
    angles.push_back(p.theta_zenith);
  }
  const auto unit = forward.unit_rates(angles);
  return fit_linear_intensity(sweep.points, unit, options);
}

FitResult fit_intensity(const AngularSweep& sweep, const DetectorGeometry& geom,
                        const AtmosphereModel& model_template, const QuadratureConfig& cfg,
                        const FitOptions& options) {
  ForwardModel forward(geom, model_template, cfg);
  return fit_intensity(sweep, forward, options);
}

}  // namespace muflux
