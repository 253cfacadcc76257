#pragma once

// One-dimensional adaptive quadrature over a piecewise-smooth integrand.
// The caller supplies breakpoints at known kinks/discontinuities; each
// segment starts as one panel and the panel with the largest error estimate
// is bisected until the total error meets the tolerance.

#include <cstddef>
#include <functional>
#include <span>

namespace muflux::quadrature {

enum class PanelRule {
  GaussLegendre,  // 128-point estimate, error from comparison with 64 points
  Simpson,        // Richardson-extrapolated Simpson, error |S2 - S1| / 15
};

struct Result {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
  std::size_t subdivisions = 0;
  bool converged = true;
};

struct Options {
  PanelRule rule = PanelRule::GaussLegendre;
  double rel_tol = 1e-6;
  double abs_tol = 0.0;
  std::size_t max_subdivisions = 2000;
};

// Integrates f over [breakpoints.front(), breakpoints.back()]; breakpoints must
// be sorted. Never throws on non-convergence; check Result::converged.
Result integrate(const std::function<double(double)>& f, std::span<const double> breakpoints,
                 const Options& options);

// Gauss-Legendre nodes/weights on [-1, 1] for the two orders used above.
std::span<const double> gauss_legendre_nodes(std::size_t order);
std::span<const double> gauss_legendre_weights(std::size_t order);

}  // namespace muflux::quadrature
