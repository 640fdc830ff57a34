/**
 * Two-body orbit propagation with J2 secular perturbations.
 *
 * The osculating elements keep a, e, i fixed while the node, argument of
 * perigee and mean anomaly advance linearly at the standard J2 secular
 * rates. Drag, higher zonal harmonics and luni-solar terms are omitted.
 */
#pragma once

#include "entlink/astro.hpp"

namespace entlink {

struct OrbitElements {
    double semi_major_axis_km = 0.0;
    double eccentricity = 0.0;
    double inclination_deg = 0.0;
    double raan_deg = 0.0;
    double arg_perigee_deg = 0.0;
    double mean_anomaly_deg = 0.0;
    Epoch epoch;

    /// Throws std::invalid_argument when a <= R_E + 100 km, e outside [0, 1)
    /// or i outside [0, 180].
    void validate() const;
};

struct SatState {
    Vec3 position_km{0.0, 0.0, 0.0, Frame::eci};
    Epoch epoch;
};

/// Secular element rates in degrees per day.
struct SecularRates {
    double raan = 0.0;
    double arg_perigee = 0.0;
    double mean_anomaly_drift = 0.0;
};

/// Solve Kepler's equation M = E - e*sin(E) for the eccentric anomaly.
/// Newton iteration with bisection fallback; |E - e sinE - M| < 1e-12 rad
/// and E stays on the same 2*pi branch as M. Throws std::runtime_error if
/// the iteration cap is exhausted.
double solve_kepler(double mean_anomaly_rad, double eccentricity);

SecularRates j2_secular_rates(double semi_major_axis_km, double eccentricity,
                              double inclination_deg);

/// Keplerian mean motion, rad/s.
double mean_motion_rad_s(double semi_major_axis_km);

/// Orbital period 2*pi*sqrt(a^3/mu), seconds.
double orbital_period_s(double semi_major_axis_km);

/// Elements advanced to t: node, perigee and mean anomaly moved linearly at
/// the J2 secular rates plus mean motion; a, e, i unchanged.
OrbitElements elements_at(const OrbitElements& elements, const Epoch& t);

/// ECI position at t. Deterministic: identical inputs give bit-identical
/// output. Requires t >= elements.epoch - 1 day.
SatState propagate(const OrbitElements& elements, const Epoch& t);

}  // namespace entlink
