#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "muflux/errors.hpp"
#include "muflux/geometry.hpp"
#include "muflux/random.hpp"
#include "muflux/units.hpp"

using namespace muflux;
using units::deg_to_rad;
using units::rad_to_deg;

TEST_CASE("aperture angles of the reference telescope") {
  // 2 atan(24.7 / 1.7) and 2 atan(2.7 / 1.7), evaluated independently.
  const auto a = aperture_angles(24.7, 2.7, 1.7);
  CHECK(rad_to_deg(a.alpha) == doctest::Approx(172.12554967035183).epsilon(1e-12));
  CHECK(rad_to_deg(a.beta) == doctest::Approx(115.60853213057351).epsilon(1e-12));
}

TEST_CASE("aperture angles: unit cube and thin-gap limit") {
  const auto a = aperture_angles(1.0, 1.0, 1.0);
  CHECK(rad_to_deg(a.alpha) == doctest::Approx(90.0));
  CHECK(rad_to_deg(a.beta) == doctest::Approx(90.0));

  const auto thin = aperture_angles(1.0, 1.0, 1e-12);
  CHECK(thin.alpha == doctest::Approx(units::kPi).epsilon(1e-10));
  CHECK(thin.alpha < units::kPi);
}

TEST_CASE("aperture angles reject non-positive dimensions") {
  CHECK_THROWS_AS(aperture_angles(0.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(aperture_angles(1.0, -1.0, 1.0), DomainError);
  CHECK_THROWS_AS(aperture_angles(1.0, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(DetectorGeometry::telescope(1.0, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(DetectorGeometry::solid_body(1.0, 1.0, -0.1), DomainError);
}

TEST_CASE("effective area of the reference telescope") {
  const auto tel = presets::scintillator_telescope();
  CHECK(effective_area(tel, 0.0, 0.0) == 24.7 * 2.7);
  CHECK(effective_area(tel, deg_to_rad(45.0), 0.0) == doctest::Approx(23.0 * 2.7).epsilon(1e-12));
  CHECK(effective_area(tel, 0.0, 0.5 * tel.beta()) == 0.0);
  CHECK(effective_area(tel, 0.5 * tel.alpha(), 0.0) == 0.0);
  CHECK(effective_area(tel, -0.5 * tel.alpha(), 0.0) == 0.0);
  CHECK(effective_area(tel, 0.0, -0.5 * tel.beta()) == 0.0);
  // Outside the aperture: zero, not an error.
  CHECK(effective_area(tel, 1.6, 0.0) == 0.0);
}

TEST_CASE("chip maps to a solid body with pi apertures") {
  const auto chip = chip_as_detector(presets::silicon_chip());
  CHECK(chip.kind() == DetectorKind::SolidBody);
  CHECK(chip.length() == doctest::Approx(0.5));
  CHECK(chip.width() == doctest::Approx(0.5));
  CHECK(chip.gap() == doctest::Approx(0.05));
  CHECK(chip.alpha() == units::kPi);
  CHECK(chip.beta() == units::kPi);

  const auto cube = chip_as_detector({10.0, 10.0, 10.0});
  CHECK(cube.alpha() == units::kPi);
  CHECK(cube.beta() == units::kPi);

  CHECK_THROWS_AS(chip_as_detector({5.0, 5.0, 0.0}), DomainError);
}

TEST_CASE("zero-thickness solid body has constant area") {
  const auto sheet = DetectorGeometry::solid_body(0.5, 0.5, 0.0);
  for (double t : {0.0, 0.3, -1.2, 1.5}) {
    for (double p : {0.0, 0.7, -1.4}) {
      CHECK(effective_area(sheet, t, p) == 0.25);
    }
  }
}

TEST_CASE("solid body area stays finite and non-negative near +-90 degrees") {
  const auto chip = chip_as_detector(presets::silicon_chip());
  for (double deg = 80.0; deg < 90.0; deg += 0.5) {
    const double a = effective_area(chip, deg_to_rad(deg), 0.0);
    CHECK(std::isfinite(a));
    CHECK(a >= 0.0);
  }
  CHECK(effective_area(chip, deg_to_rad(89.9), 0.0) == 0.0);
}

TEST_CASE("effective area properties over random geometries") {
  CounterRng rng(11, 0);
  for (int trial = 0; trial < 500; ++trial) {
    const double L = rng.uniform(0.1, 50.0);
    const double W = rng.uniform(0.1, 50.0);
    const double h = rng.uniform(0.01, 10.0);
    const auto geom = trial % 2 == 0 ? DetectorGeometry::telescope(L, W, h)
                                     : DetectorGeometry::solid_body(L, W, h);
    const double t = rng.uniform(-0.5, 0.5) * geom.alpha();
    const double p = rng.uniform(-0.5, 0.5) * geom.beta();
    const double a = effective_area(geom, t, p);

    // Even in each angle.
    CHECK(effective_area(geom, -t, p) == a);
    CHECK(effective_area(geom, t, -p) == a);
    // Non-increasing in |theta| and |phi|.
    const double t2 = std::copysign(std::fabs(t) + rng.uniform(0.0, 0.2), t);
    const double p2 = std::copysign(std::fabs(p) + rng.uniform(0.0, 0.2), p);
    CHECK(effective_area(geom, t2, p) <= a);
    CHECK(effective_area(geom, t, p2) <= a);
    CHECK(a >= 0.0);
    CHECK(a <= L * W);
    CHECK(effective_area(geom, 0.0, 0.0) == L * W);
  }
}
