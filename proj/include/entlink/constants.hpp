// Physical and geodetic constants shared across the simulator.
#pragma once

namespace entlink::constants {

// WGS84 ellipsoid
inline constexpr double kWgs84SemiMajorM = 6378137.0;
inline constexpr double kWgs84Flattening = 1.0 / 298.257223563;

// Earth gravity field
inline constexpr double kMuEarthKm3PerS2 = 398600.4418;
inline constexpr double kJ2 = 1.08263e-3;
inline constexpr double kEarthRadiusKm = 6378.137;

// Linear coefficient of the IAU 1982 GMST polynomial, i.e. the mean Earth
// rotation rate with respect to the fixed stars.
inline constexpr double kEarthRotationRateRadPerS = 7.2921158553e-5;

inline constexpr double kSecondsPerDay = 86400.0;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kDegPerRad = 180.0 / kPi;
inline constexpr double kRadPerDeg = kPi / 180.0;

}  // namespace entlink::constants
