/**
 * Time scales, Earth rotation, geodesy and a low-precision solar ephemeris.
 *
 * Conventions:
 *  - Epoch is a continuous UTC day count since J2000.0 (2000-01-01T12:00:00Z).
 *    UTC is treated as uniform (no leap-second table); only elevation angles
 *    and day/night flags are derived from it.
 *  - Single inertial frame (mean-equator ECI); Earth rotation is GMST-only.
 *    Polar motion, nutation and precession are ignored.
 *  - ECEF -> ECI is a +GMST rotation about the polar axis, so the ECEF x-axis
 *    at rotation angle pi/2 maps onto the ECI y-axis.
 */
#pragma once

#include <compare>
#include <string>
#include <string_view>

#include "entlink/constants.hpp"

namespace entlink {

enum class Frame { eci, ecef };

/// Frame-tagged 3-vector. Units are set by the producing API (meters for
/// geodesy, kilometers for orbits, dimensionless for directions).
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    Frame frame = Frame::eci;

    double norm() const;
    Vec3 normalized() const;
};

Vec3 operator+(const Vec3& a, const Vec3& b);
Vec3 operator-(const Vec3& a, const Vec3& b);
Vec3 operator*(double s, const Vec3& v);

// Throw std::invalid_argument if the frame tags differ.
double dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);

struct CalendarTime {
    int year = 2000;
    int month = 1;
    int day = 1;
    int hour = 0;
    int minute = 0;
    double second = 0.0;
};

/// Instant on a continuous UTC timeline, stored as days since J2000.0.
/// Calendar round trips are exact to well under a millisecond.
class Epoch {
  public:
    Epoch() = default;

    static Epoch from_days_since_j2000(double days);
    static Epoch from_utc(const CalendarTime& utc);
    /// Accepts "YYYY-MM-DDThh:mm:ss[.fff]Z".
    static Epoch parse_iso(std::string_view text);

    double days_since_j2000() const { return days_; }
    Epoch plus_seconds(double seconds) const;
    double seconds_since(const Epoch& other) const;

    CalendarTime to_utc() const;
    /// ISO-8601 UTC, millisecond precision (fraction omitted when zero).
    std::string to_iso() const;

    auto operator<=>(const Epoch&) const = default;

  private:
    explicit Epoch(double days) : days_(days) {}
    double days_ = 0.0;
};

/// Geodetic site on the WGS84 ellipsoid. Longitude is normalized to
/// (-180, 180] on construction via validated().
struct GroundStation {
    std::string name;
    double latitude_deg = 0.0;
    double longitude_deg = 0.0;
    double altitude_m = 0.0;

    /// Returns a copy with longitude normalized; throws std::invalid_argument
    /// when |latitude| > 90.
    GroundStation validated() const;
};

/// Greenwich mean sidereal angle in [0, 2pi), IAU 1982 polynomial.
/// Throws std::out_of_range outside calendar years 1990-2060.
double earth_rotation_angle(const Epoch& epoch);

/// WGS84 geodetic coordinates to ECEF position in meters.
Vec3 geodetic_to_ecef(const GroundStation& station);

// Rotation about the polar axis by earth_rotation_angle; norm-preserving.
// The input frame tag must match the source frame.
Vec3 ecef_to_eci(const Vec3& v, const Epoch& epoch);
Vec3 eci_to_ecef(const Vec3& v, const Epoch& epoch);

/// Apparent solar direction from the Earth's center (unit vector, ECI).
/// Low-precision mean-element model, good to better than 0.02 degrees;
/// same supported range as earth_rotation_angle.
Vec3 sun_direction_eci(const Epoch& epoch);

/// Geometric elevation of the Sun above the station's local horizon plane
/// (ellipsoid normal up, no refraction), in degrees.
double sun_elevation_deg(const GroundStation& station, const Epoch& epoch);

}  // namespace entlink
