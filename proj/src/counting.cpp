#include "muflux/counting.hpp"

#include <algorithm>
#include <cmath>

#include "muflux/errors.hpp"
#include "muflux/units.hpp"

namespace muflux {

RateMeasurement::RateMeasurement(std::uint64_t counts, double live_time_min)
    : counts_(counts), live_time_min_(live_time_min) {
  if (!(live_time_min > 0.0) || !std::isfinite(live_time_min)) {
    throw DomainError("live time must be positive");
  }
}

double RateMeasurement::rate() const { return static_cast<double>(counts_) / live_time_min_; }

double RateMeasurement::sigma() const {
  return std::sqrt(static_cast<double>(counts_)) / live_time_min_;
}

void CoincidenceSetup::validate() const {
  if (!(tau_us > 0.0) || !std::isfinite(tau_us)) {
    throw DomainError("resolving time must be positive");
  }
  if (!(tau_sigma_us >= 0.0)) {
    throw DomainError("resolving time uncertainty must be non-negative");
  }
}

RateMeasurement rate_from_counts(std::uint64_t counts, double live_time_min) {
  return RateMeasurement(counts, live_time_min);
}

RateValue accidental_rate(const RateValue& n1, const RateValue& n2, const CoincidenceSetup& setup) {
  setup.validate();
  const double tau = setup.tau_us / units::kMicrosecondsPerMinute;
  const double tau_sigma = setup.tau_sigma_us / units::kMicrosecondsPerMinute;
  const double rate = 2.0 * tau * n1.rate * n2.rate;
  // Partial derivatives of 2 tau N1 N2; written out so a zero singles rate
  // still propagates the other channel's error.
  const double d_tau = 2.0 * n1.rate * n2.rate * tau_sigma;
  const double d_n1 = 2.0 * tau * n2.rate * n1.sigma;
  const double d_n2 = 2.0 * tau * n1.rate * n2.sigma;
  return {rate, std::sqrt(d_tau * d_tau + d_n1 * d_n1 + d_n2 * d_n2)};
}

CorrectedRate corrected_coincidence(const RateValue& raw, const RateValue& accidental) {
  if (!(raw.rate >= 0.0)) {
    throw DomainError("raw coincidence rate must be non-negative");
  }
  CorrectedRate out;
  out.rate = std::max(0.0, raw.rate - accidental.rate);
  out.sigma = std::hypot(raw.sigma, accidental.sigma);
  out.accidental_dominated = accidental.rate > 0.0 && 2.0 * accidental.rate >= raw.rate;
  return out;
}

}  // namespace muflux
