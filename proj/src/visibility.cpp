#include "entlink/visibility.hpp"

#include <cmath>
#include <stdexcept>

namespace entlink {

using constants::kDegPerRad;
using constants::kEarthRadiusKm;
using constants::kRadPerDeg;

double twilight_threshold_deg(Twilight rule) {
    switch (rule) {
        case Twilight::civil: return -6.0;
        case Twilight::nautical: return -12.0;
        case Twilight::astronomical: return -18.0;
    }
    throw std::invalid_argument("unknown twilight rule");
}

PassGeometry topocentric(const GroundStation& station, const SatState& sat) {
    const GroundStation s = station.validated();
    const Vec3 station_ecef = geodetic_to_ecef(s);  // meters
    const Vec3 sat_ecef = eci_to_ecef(sat.position_km, sat.epoch);

    const Vec3 d{sat_ecef.x - station_ecef.x / 1000.0, sat_ecef.y - station_ecef.y / 1000.0,
                 sat_ecef.z - station_ecef.z / 1000.0, Frame::ecef};
    const double range = d.norm();

    const double lat = s.latitude_deg * kRadPerDeg;
    const double lon = s.longitude_deg * kRadPerDeg;
    const Vec3 up{std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat),
                  Frame::ecef};

    PassGeometry g;
    g.range_km = range;
    g.elevation_deg = std::asin(dot(d, up) / range) * kDegPerRad;
    return g;
}

bool satellite_sunlit(const SatState& sat, const Vec3& sun_unit_eci) {
    const Vec3& r = sat.position_km;
    const double along = dot(r, sun_unit_eci);
    if (along >= 0.0) return true;  // day side
    const Vec3 transverse = r - along * sun_unit_eci;
    return transverse.norm() >= kEarthRadiusKm;
}

bool night_condition(const IlluminationState& illumination) {
    return !illumination.satellite_sunlit && illumination.station1_dark &&
           illumination.station2_dark;
}

bool dual_visibility(const PassGeometry& g1, const PassGeometry& g2, double beta_min_deg) {
    if (!(beta_min_deg >= 0.0 && beta_min_deg < 90.0)) {
        throw std::invalid_argument("dual_visibility: beta_min must be in [0, 90)");
    }
    return g1.elevation_deg >= beta_min_deg && g2.elevation_deg >= beta_min_deg;
}

bool communication_allowed(bool dual_vis, bool night, OperationMode mode) {
    return dual_vis && (night || mode == OperationMode::day_and_night);
}

}  // namespace entlink
