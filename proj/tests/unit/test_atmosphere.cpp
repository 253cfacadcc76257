#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "muflux/atmosphere.hpp"
#include "muflux/errors.hpp"
#include "muflux/units.hpp"

using namespace muflux;
using units::deg_to_rad;

namespace {
const AtmosphereModel kDefault{};
}

TEST_CASE("path length closed forms") {
  CHECK(path_length(0.0, kDefault) == 10.0);
  const double horizontal = std::sqrt(10.0 * 10.0 + 2.0 * 10.0 * 6400.0);
  CHECK(path_length(0.5 * units::kPi, kDefault) == doctest::Approx(horizontal).epsilon(1e-12));
  CHECK(horizontal == doctest::Approx(357.9106033634656));
  // Direct evaluation at 60 degrees; flat-earth value would be 20 km.
  CHECK(path_length(deg_to_rad(60.0), kDefault) == doctest::Approx(19.95341581209823).epsilon(1e-10));
}

TEST_CASE("path length domain") {
  CHECK_THROWS_AS(path_length(-0.01, kDefault), DomainError);
  CHECK_THROWS_AS(path_length(1.6, kDefault), DomainError);
}

TEST_CASE("path length is strictly increasing") {
  double prev = path_length(0.0, kDefault);
  for (int i = 1; i <= 900; ++i) {
    const double p = path_length(deg_to_rad(0.1 * i), kDefault);
    CHECK(p > prev);
    prev = p;
  }
}

TEST_CASE("corrected intensity values") {
  const auto model = kDefault.with_intensity(1.0);
  CHECK(corrected_intensity(0.0, model) == 1.0);
  CHECK(corrected_intensity(deg_to_rad(60.0), model) ==
        doctest::Approx(0.25116868628320826).epsilon(1e-10));
  CHECK(corrected_intensity(deg_to_rad(90.0), model) ==
        doctest::Approx(0.00078064012490242).epsilon(1e-9));
  // |cos| folding: symmetric, and beyond 90 degrees mirrors back.
  CHECK(corrected_intensity(-0.7, model) == corrected_intensity(0.7, model));
  CHECK(corrected_intensity(units::kPi - 0.7, model) ==
        doctest::Approx(corrected_intensity(0.7, model)).epsilon(1e-14));
}

TEST_CASE("corrected law approaches cos^2 near the vertical") {
  for (double deg = 0.0; deg <= 30.0; deg += 0.5) {
    const double t = deg_to_rad(deg);
    const double ratio = corrected_intensity(t, kDefault) / naive_intensity(t, kDefault.vertical_intensity);
    CHECK(std::fabs(ratio - 1.0) < 2e-3);
  }
  CHECK(corrected_intensity(0.5 * units::kPi, kDefault) > 0.0);
  CHECK(naive_intensity(0.5 * units::kPi, 0.42) == doctest::Approx(0.0).epsilon(1e-30));
}

TEST_CASE("naive intensity") {
  CHECK(naive_intensity(0.0, 0.42) == 0.42);
  CHECK(naive_intensity(deg_to_rad(45.0), 1.0) == doctest::Approx(0.5));
}

TEST_CASE("corrected intensity decreases on [0, pi/2]") {
  double prev = corrected_intensity(0.0, kDefault);
  for (int i = 1; i <= 90; ++i) {
    const double v = corrected_intensity(deg_to_rad(i), kDefault);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("transformed zenith") {
  CHECK(transformed_zenith(0.0, 0.0, 0.0) == 0.0);
  CHECK(transformed_zenith(0.5 * units::kPi, 0.0, 0.0) == doctest::Approx(0.5 * units::kPi));
  CHECK(transformed_zenith(0.0, units::kPi / 6.0, 0.5 * units::kPi) ==
        doctest::Approx(0.36136712390670783).epsilon(1e-12));
  for (int deg = 0; deg <= 90; ++deg) {
    const double tz = deg_to_rad(deg);
    CHECK(transformed_zenith(tz, 0.0, 0.0) == doctest::Approx(tz).epsilon(1e-12));
  }
}

TEST_CASE("model validation") {
  CHECK_THROWS_AS((AtmosphereModel{0.0, 10.0, 1.0}.validate()), DomainError);
  CHECK_THROWS_AS((AtmosphereModel{6400.0, -1.0, 1.0}.validate()), DomainError);
  CHECK_THROWS_AS((AtmosphereModel{5.0, 10.0, 1.0}.validate()), DomainError);
  CHECK_THROWS_AS((AtmosphereModel{6400.0, 10.0, -0.1}.validate()), DomainError);
  CHECK_NOTHROW(kDefault.validate());
}
