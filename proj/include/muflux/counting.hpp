#pragma once

// Counting statistics for singles and coincidence channels: Poisson rates,
// accidental coincidences from the resolving time, and their subtraction.

#include <cstdint>

namespace muflux {

// A rate with a symmetric one-sigma uncertainty [counts / min].
struct RateValue {
  double rate = 0.0;
  double sigma = 0.0;
};

class RateMeasurement {
 public:
  // Throws DomainError unless live_time_min > 0.
  RateMeasurement(std::uint64_t counts, double live_time_min);

  std::uint64_t counts() const { return counts_; }
  double live_time() const { return live_time_min_; }
  double rate() const;
  // sqrt(N) / T; zero for zero counts.
  double sigma() const;
  bool zero_counts() const { return counts_ == 0; }
  RateValue value() const { return {rate(), sigma()}; }

 private:
  std::uint64_t counts_;
  double live_time_min_;
};

struct CoincidenceSetup {
  double tau_us = 20.0;
  double tau_sigma_us = 2.0;

  void validate() const;
};

struct CorrectedRate {
  double rate = 0.0;
  double sigma = 0.0;
  // Accidentals comparable to or larger than the corrected signal
  // (accidental >= raw / 2).
  bool accidental_dominated = false;
};

RateMeasurement rate_from_counts(std::uint64_t counts, double live_time_min);

// N_a = 2 tau N1 N2 with first-order propagation of the tau, N1 and N2 errors.
RateValue accidental_rate(const RateValue& n1, const RateValue& n2, const CoincidenceSetup& setup);

// raw - accidental, clamped at zero; errors added in quadrature.
CorrectedRate corrected_coincidence(const RateValue& raw, const RateValue& accidental);

}  // namespace muflux
