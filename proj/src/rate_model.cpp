#include "muflux/rate_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "muflux/errors.hpp"
#include "muflux/parallel.hpp"
#include "muflux/quadrature.hpp"
#include "muflux/random.hpp"
#include "muflux/units.hpp"

namespace muflux {

namespace {

constexpr double kHalfPi = 0.5 * units::kPi;
constexpr std::uint64_t kMcChunk = std::uint64_t{1} << 16;

void check_tilt(double theta_zenith) {
  if (!(theta_zenith >= 0.0 && theta_zenith <= kHalfPi)) {
    throw DomainError("theta_zenith must lie in [0, pi/2], got " + std::to_string(theta_zenith));
  }
}

// Largest |angle| with non-zero overlap along one side.
double half_extent(double half_aperture, double side, double gap) {
  if (gap <= 0.0) {
    return half_aperture;
  }
  return std::min(half_aperture, std::atan(side / gap));
}

// Streaming mean/variance; chunks merge in a fixed order.
struct Moments {
  std::uint64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }

  void merge(const Moments& other) {
    if (other.n == 0) return;
    if (n == 0) {
      *this = other;
      return;
    }
    const auto na = static_cast<double>(n);
    const auto nb = static_cast<double>(other.n);
    const double delta = other.mean - mean;
    const double total = na + nb;
    mean += delta * nb / total;
    m2 += other.m2 + delta * delta * na * nb / total;
    n += other.n;
  }

  double standard_error() const {
    if (n < 2) return 0.0;
    const auto dn = static_cast<double>(n);
    return std::sqrt(std::max(0.0, m2) / (dn - 1.0) / dn);
  }
};

}  // namespace

void QuadratureConfig::validate() const {
  // The inner integrals run at 1e-2 of the target; tighter than this they
  // cannot converge in double precision and only burn the subdivision budget.
  if (!(target_rel_tol >= kMinTargetRelTol)) {
    throw ConfigError("target_rel_tol must be at least 1e-12");
  }
  if (max_subdivisions < 0) {
    throw ConfigError("max_subdivisions must be non-negative");
  }
  if (!(horizon_cut_deg >= 0.0 && horizon_cut_deg < 90.0)) {
    throw ConfigError("horizon_cut_deg must lie in [0, 90)");
  }
}

double sky_weight(double theta_zenith, double theta, double phi, const AtmosphereModel& model,
                  const QuadratureConfig& cfg) {
  // Below the horizon in the tilt plane: nothing arrives from there.
  if (theta_zenith + theta > kHalfPi) {
    return 0.0;
  }
  const double zenith = transformed_zenith(theta_zenith, theta, phi);
  if (std::fabs(zenith) > kHalfPi - units::deg_to_rad(cfg.horizon_cut_deg)) {
    return 0.0;
  }
  const double weight = cfg.angular_weight == AngularWeight::AbsSin ? std::fabs(std::sin(theta))
                                                                    : std::cos(theta);
  return corrected_intensity(zenith, model) * weight;
}

RatePrediction total_rate(const DetectorGeometry& geom, double theta_zenith,
                          const AtmosphereModel& model, const QuadratureConfig& cfg) {
  check_tilt(theta_zenith);
  model.validate();
  cfg.validate();
  if (model.vertical_intensity == 0.0) {
    return {0.0, 0.0};
  }

  const double theta_max = half_extent(0.5 * geom.alpha(), geom.length(), geom.gap());
  const double phi_max = half_extent(0.5 * geom.beta(), geom.width(), geom.gap());
  const double theta_lo = -theta_max;
  const double theta_hi = std::min(theta_max, kHalfPi - theta_zenith);
  if (!(theta_hi > theta_lo) || !(phi_max > 0.0)) {
    return {0.0, 0.0};
  }

  const double cut = units::deg_to_rad(cfg.horizon_cut_deg);
  const double cos_cut = std::cos(cut);

  // Split the outer range at the |theta| kink and where the horizon cut
  // starts to remove part of the phi range.
  std::vector<double> breaks{theta_lo, theta_hi};
  for (double b : {0.0, kHalfPi - cut - theta_zenith, -(kHalfPi - cut) - theta_zenith}) {
    if (b > theta_lo && b < theta_hi) {
      breaks.push_back(b);
    }
  }
  std::sort(breaks.begin(), breaks.end());

  const auto rule = cfg.scheme == QuadratureScheme::GaussLegendreComposite
                        ? quadrature::PanelRule::GaussLegendre
                        : quadrature::PanelRule::Simpson;
  const double inner_rel_tol = 1e-2 * cfg.target_rel_tol;
  const quadrature::Options inner_opts{rule, inner_rel_tol, 0.0,
                                       static_cast<std::size_t>(cfg.max_subdivisions)};
  const quadrature::Options outer_opts{rule, cfg.target_rel_tol - inner_rel_tol, 0.0,
                                       static_cast<std::size_t>(cfg.max_subdivisions)};

  bool inner_failed = false;
  auto over_phi = [&](double theta) {
    // The integrand is even in phi; integrate phi >= 0 and double.
    const double s = std::fabs(std::sin(theta_zenith + theta));
    const double phi_lo = s > cos_cut ? 2.0 * std::acos(cos_cut / s) : 0.0;
    if (!(phi_lo < phi_max)) {
      return 0.0;
    }
    auto integrand = [&](double phi) {
      return sky_weight(theta_zenith, theta, phi, model, cfg) * effective_area(geom, theta, phi);
    };
    const double limits[] = {phi_lo, phi_max};
    const auto inner = quadrature::integrate(integrand, limits, inner_opts);
    inner_failed = inner_failed || !inner.converged;
    return 2.0 * inner.value;
  };

  const auto outer = quadrature::integrate(over_phi, breaks, outer_opts);
  const double rate = std::max(0.0, outer.value);
  const double error = outer.error + inner_rel_tol * rate;
  if (!outer.converged || inner_failed) {
    throw ConvergenceError("rate quadrature did not reach target_rel_tol within max_subdivisions",
                           rate, error);
  }
  return {rate, error};
}

std::vector<SweepResult> angular_sweep(const DetectorGeometry& geom,
                                       const std::vector<double>& angles,
                                       const AtmosphereModel& model,
                                       const QuadratureConfig& cfg) {
  for (double angle : angles) {
    check_tilt(angle);
  }
  std::vector<SweepResult> results(angles.size());
  parallel_for(angles.size(), [&](std::size_t i) {
    results[i] = {angles[i], total_rate(geom, angles[i], model, cfg)};
  });
  return results;
}

bool exits_through_bottom(const DetectorGeometry& geom, double x, double y, double theta,
                          double phi) {
  // Parametrise by depth: after descending t the ray has moved
  // (t tan theta, t tan phi) across the face. Slab test against the box
  // [0, L] x [0, W] x [0, h]; the bottom plane is reached at t = h.
  constexpr double kInf = std::numeric_limits<double>::infinity();
  auto slab_exit = [](double pos, double extent, double slope) {
    if (slope > 0.0) return (extent - pos) / slope;
    if (slope < 0.0) return -pos / slope;
    return kInf;
  };
  const double tx = slab_exit(x, geom.length(), std::tan(theta));
  const double ty = slab_exit(y, geom.width(), std::tan(phi));
  return geom.gap() <= std::min(tx, ty);
}

RatePrediction mc_rate(const DetectorGeometry& geom, double theta_zenith,
                       const AtmosphereModel& model, std::uint64_t n_samples, std::uint64_t seed,
                       const QuadratureConfig& cfg) {
  if (n_samples == 0) {
    throw DomainError("mc_rate needs at least one sample");
  }
  check_tilt(theta_zenith);
  model.validate();
  cfg.validate();

  const double alpha = geom.alpha();
  const double beta = geom.beta();
  const double box_measure = alpha * beta * geom.face_area();
  const std::uint64_t n_chunks = (n_samples + kMcChunk - 1) / kMcChunk;
  std::vector<Moments> partial(n_chunks);

  parallel_for(n_chunks, [&](std::size_t chunk) {
    CounterRng rng(seed, chunk);
    const std::uint64_t begin = chunk * kMcChunk;
    const std::uint64_t count = std::min(kMcChunk, n_samples - begin);
    Moments& m = partial[chunk];
    for (std::uint64_t i = 0; i < count; ++i) {
      const double x = rng.uniform(0.0, geom.length());
      const double y = rng.uniform(0.0, geom.width());
      const double theta = rng.uniform(-0.5 * alpha, 0.5 * alpha);
      const double phi = rng.uniform(-0.5 * beta, 0.5 * beta);
      double value = 0.0;
      if (exits_through_bottom(geom, x, y, theta, phi)) {
        value = sky_weight(theta_zenith, theta, phi, model, cfg) * box_measure;
      }
      m.add(value);
    }
  });

  Moments total;
  for (const auto& m : partial) {
    total.merge(m);
  }
  return {total.mean, total.standard_error()};
}

RatePrediction ray_traced_area(const DetectorGeometry& geom, double theta, double phi,
                               std::uint64_t n_samples, std::uint64_t seed) {
  if (n_samples == 0) {
    throw DomainError("ray_traced_area needs at least one sample");
  }
  CounterRng rng(seed, 0);
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < n_samples; ++i) {
    const double x = rng.uniform(0.0, geom.length());
    const double y = rng.uniform(0.0, geom.width());
    hits += exits_through_bottom(geom, x, y, theta, phi) ? 1 : 0;
  }
  const double p = static_cast<double>(hits) / static_cast<double>(n_samples);
  const double area = geom.face_area();
  return {p * area, area * std::sqrt(p * (1.0 - p) / static_cast<double>(n_samples))};
}

}  // namespace muflux
