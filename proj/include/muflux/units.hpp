#pragma once

#include <numbers>

namespace muflux::units {

inline constexpr double kPi = std::numbers::pi;

constexpr double deg_to_rad(double deg) { return deg * (kPi / 180.0); }
constexpr double rad_to_deg(double rad) { return rad * (180.0 / kPi); }

inline constexpr double kMmPerCm = 10.0;
inline constexpr double kSecondsPerMinute = 60.0;
// 1 min = 6e7 us, exact in binary64.
inline constexpr double kMicrosecondsPerMinute = 6.0e7;

}  // namespace muflux::units
