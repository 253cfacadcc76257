#include "muflux/geometry.hpp"

#include <cmath>
#include <string>

#include "muflux/errors.hpp"
#include "muflux/units.hpp"

namespace muflux {

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(name) + " must be positive and finite, got " +
                      std::to_string(value));
  }
}

}  // namespace

ApertureAngles aperture_angles(double length_cm, double width_cm, double gap_cm) {
  require_positive(length_cm, "length");
  require_positive(width_cm, "width");
  require_positive(gap_cm, "gap");
  return {2.0 * std::atan(length_cm / gap_cm), 2.0 * std::atan(width_cm / gap_cm)};
}

DetectorGeometry::DetectorGeometry(double length, double width, double gap, DetectorKind kind)
    : length_(length), width_(width), gap_(gap), alpha_(units::kPi), beta_(units::kPi), kind_(kind) {
  if (kind == DetectorKind::Telescope) {
    const auto apertures = aperture_angles(length, width, gap);
    alpha_ = apertures.alpha;
    beta_ = apertures.beta;
  }
}

DetectorGeometry DetectorGeometry::telescope(double length_cm, double width_cm, double gap_cm) {
  return DetectorGeometry(length_cm, width_cm, gap_cm, DetectorKind::Telescope);
}

DetectorGeometry DetectorGeometry::solid_body(double length_cm, double width_cm,
                                              double thickness_cm) {
  require_positive(length_cm, "length");
  require_positive(width_cm, "width");
  if (!(thickness_cm >= 0.0) || !std::isfinite(thickness_cm)) {
    throw DomainError("thickness must be non-negative and finite");
  }
  return DetectorGeometry(length_cm, width_cm, thickness_cm, DetectorKind::SolidBody);
}

void ChipGeometry::validate() const {
  require_positive(side_a_mm, "side_a_mm");
  require_positive(side_b_mm, "side_b_mm");
  require_positive(thickness_mm, "thickness_mm");
}

DetectorGeometry chip_as_detector(const ChipGeometry& chip) {
  chip.validate();
  return DetectorGeometry::solid_body(chip.side_a_mm / units::kMmPerCm,
                                      chip.side_b_mm / units::kMmPerCm,
                                      chip.thickness_mm / units::kMmPerCm);
}

double effective_area(const DetectorGeometry& geom, double theta, double phi) {
  const double abs_theta = std::fabs(theta);
  const double abs_phi = std::fabs(phi);
  // At the aperture edge the overlap is exactly zero; tan(atan(x)) would
  // leave a rounding residue.
  if (!(abs_theta < 0.5 * geom.alpha()) || !(abs_phi < 0.5 * geom.beta())) {
    return 0.0;
  }
  const double h = geom.gap();
  const double l_eff = geom.length() - h * std::tan(abs_theta);
  const double w_eff = geom.width() - h * std::tan(abs_phi);
  if (l_eff <= 0.0 || w_eff <= 0.0) {
    return 0.0;
  }
  return l_eff * w_eff;
}

namespace presets {

DetectorGeometry scintillator_telescope() { return DetectorGeometry::telescope(24.7, 2.7, 1.7); }

ChipGeometry silicon_chip() { return {5.0, 5.0, 0.5}; }

}  // namespace presets

}  // namespace muflux
