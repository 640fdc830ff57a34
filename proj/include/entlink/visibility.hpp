/**
 * Station-to-satellite geometry and the gating predicates that decide when
 * the quantum channel may operate: dual visibility above a minimum
 * elevation, satellite eclipse state, station darkness and the per-
 * wavelength day/night rule.
 *
 * Eclipse model is a cylindrical umbra; station darkness compares the
 * geometric sun elevation against a twilight threshold.
 */
#pragma once

#include "entlink/astro.hpp"
#include "entlink/orbit.hpp"

namespace entlink {

/// Elevation/range of the satellite as seen from one station.
struct PassGeometry {
    double elevation_deg = 0.0;
    double range_km = 0.0;
};

enum class Twilight { civil, nautical, astronomical };

/// Sun-elevation threshold in degrees: -6 (civil), -12 (nautical),
/// -18 (astronomical).
double twilight_threshold_deg(Twilight rule);

struct IlluminationState {
    bool satellite_sunlit = true;
    bool station1_dark = false;
    bool station2_dark = false;
};

enum class OperationMode { night_only, day_and_night };

/// Elevation and slant range in the station's local horizon (ENU) frame.
PassGeometry topocentric(const GroundStation& station, const SatState& sat);

/// False iff the satellite is inside the Earth's cylindrical shadow:
/// on the anti-solar side with transverse offset below R_E.
bool satellite_sunlit(const SatState& sat, const Vec3& sun_unit_eci);

/// True iff the satellite is eclipsed and both stations are dark.
bool night_condition(const IlluminationState& illumination);

/// Both elevations at or above beta_min (inclusive gate).
bool dual_visibility(const PassGeometry& g1, const PassGeometry& g2, double beta_min_deg);

bool communication_allowed(bool dual_vis, bool night, OperationMode mode);

}  // namespace entlink
