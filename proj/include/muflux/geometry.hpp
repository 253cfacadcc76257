#pragma once

// Rectangular detector geometries: a two-plane coincidence telescope, or a
// solid body (chip) whose top and bottom faces play the role of the planes.

namespace muflux {

enum class DetectorKind { Telescope, SolidBody };

struct ApertureAngles {
  double alpha;  // full aperture along the length side [rad]
  double beta;   // full aperture along the width side [rad]
};

// alpha = 2 atan(L/h), beta = 2 atan(W/h). All dimensions must be > 0.
ApertureAngles aperture_angles(double length_cm, double width_cm, double gap_cm);

class DetectorGeometry {
 public:
  // Two sensitive planes of L x W separated by a gap h > 0.
  static DetectorGeometry telescope(double length_cm, double width_cm, double gap_cm);

  // Solid cuboid; h >= 0 is the thickness. Apertures are pi by convention.
  static DetectorGeometry solid_body(double length_cm, double width_cm, double thickness_cm);

  double length() const { return length_; }
  double width() const { return width_; }
  double gap() const { return gap_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  DetectorKind kind() const { return kind_; }
  double face_area() const { return length_ * width_; }

 private:
  DetectorGeometry(double length, double width, double gap, DetectorKind kind);

  double length_;
  double width_;
  double gap_;
  double alpha_;
  double beta_;
  DetectorKind kind_;
};

struct ChipGeometry {
  double side_a_mm;
  double side_b_mm;
  double thickness_mm;

  void validate() const;
};

DetectorGeometry chip_as_detector(const ChipGeometry& chip);

// Overlap area of the two faces seen along the direction (theta, phi):
// max(0, L - h|tan theta|) * max(0, W - h|tan phi|), zero outside the aperture.
double effective_area(const DetectorGeometry& geom, double theta, double phi);

namespace presets {

// Scintillator telescope used for the angular measurements.
DetectorGeometry scintillator_telescope();
// 5 x 5 mm^2 silicon chip, 0.5 mm thick.
ChipGeometry silicon_chip();

}  // namespace presets

}  // namespace muflux
