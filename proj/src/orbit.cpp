#include "entlink/orbit.hpp"

#include <cmath>
#include <stdexcept>

namespace entlink {

namespace {

using constants::kDegPerRad;
using constants::kEarthRadiusKm;
using constants::kJ2;
using constants::kMuEarthKm3PerS2;
using constants::kPi;
using constants::kRadPerDeg;

constexpr int kMaxNewtonIterations = 50;
constexpr double kKeplerToleranceRad = 1e-12;

}  // namespace

void OrbitElements::validate() const {
    if (!(semi_major_axis_km > kEarthRadiusKm + 100.0)) {
        throw std::invalid_argument("orbit: semi-major axis must exceed R_E + 100 km");
    }
    if (!(eccentricity >= 0.0 && eccentricity < 1.0)) {
        throw std::invalid_argument("orbit: eccentricity must be in [0, 1)");
    }
    if (!(inclination_deg >= 0.0 && inclination_deg <= 180.0)) {
        throw std::invalid_argument("orbit: inclination must be in [0, 180] degrees");
    }
}

double solve_kepler(double mean_anomaly_rad, double eccentricity) {
    if (!(eccentricity >= 0.0 && eccentricity < 1.0) || !std::isfinite(mean_anomaly_rad)) {
        throw std::invalid_argument("solve_kepler: need finite M and 0 <= e < 1");
    }
    // Reduce to [-pi, pi) and restore the branch afterwards.
    const double turns = std::floor((mean_anomaly_rad + kPi) / (2.0 * kPi));
    const double m = mean_anomaly_rad - turns * 2.0 * kPi;

    double e_anom = (eccentricity < 0.8) ? m : kPi * (m >= 0.0 ? 1.0 : -1.0);
    double lo = m - eccentricity;
    double hi = m + eccentricity;
    for (int i = 0; i < kMaxNewtonIterations; ++i) {
        const double f = e_anom - eccentricity * std::sin(e_anom) - m;
        if (std::abs(f) < kKeplerToleranceRad) {
            return e_anom + turns * 2.0 * kPi;
        }
        if (f > 0.0) hi = e_anom; else lo = e_anom;
        const double fp = 1.0 - eccentricity * std::cos(e_anom);
        double next = e_anom - f / fp;
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);  // bisection fallback
        }
        e_anom = next;
    }
    // f' >= 1 - e > 0: the bracketed iteration converges well before the cap.
    if (std::abs(e_anom - eccentricity * std::sin(e_anom) - m) < kKeplerToleranceRad) {
        return e_anom + turns * 2.0 * kPi;
    }
    throw std::runtime_error("solve_kepler: no convergence after iteration cap");
}

double mean_motion_rad_s(double semi_major_axis_km) {
    return std::sqrt(kMuEarthKm3PerS2 /
                     (semi_major_axis_km * semi_major_axis_km * semi_major_axis_km));
}

double orbital_period_s(double semi_major_axis_km) {
    return 2.0 * kPi / mean_motion_rad_s(semi_major_axis_km);
}

SecularRates j2_secular_rates(double semi_major_axis_km, double eccentricity,
                              double inclination_deg) {
    const double n = mean_motion_rad_s(semi_major_axis_km);
    const double p = semi_major_axis_km * (1.0 - eccentricity * eccentricity);
    const double k = kJ2 * (kEarthRadiusKm / p) * (kEarthRadiusKm / p) * n;
    const double cos_i = std::cos(inclination_deg * kRadPerDeg);
    const double cos2 = cos_i * cos_i;

    const double to_deg_per_day = kDegPerRad * constants::kSecondsPerDay;
    SecularRates rates;
    rates.raan = -1.5 * k * cos_i * to_deg_per_day;
    rates.arg_perigee = 0.75 * k * (5.0 * cos2 - 1.0) * to_deg_per_day;
    rates.mean_anomaly_drift =
        0.75 * k * std::sqrt(1.0 - eccentricity * eccentricity) * (3.0 * cos2 - 1.0) *
        to_deg_per_day;
    return rates;
}

OrbitElements elements_at(const OrbitElements& elements, const Epoch& t) {
    elements.validate();
    const SecularRates rates = j2_secular_rates(
        elements.semi_major_axis_km, elements.eccentricity, elements.inclination_deg);
    const double dt_days = (t.days_since_j2000() - elements.epoch.days_since_j2000());
    const double n_deg_per_day =
        mean_motion_rad_s(elements.semi_major_axis_km) * kDegPerRad * constants::kSecondsPerDay;

    OrbitElements out = elements;
    out.raan_deg = elements.raan_deg + rates.raan * dt_days;
    out.arg_perigee_deg = elements.arg_perigee_deg + rates.arg_perigee * dt_days;
    out.mean_anomaly_deg =
        elements.mean_anomaly_deg + (n_deg_per_day + rates.mean_anomaly_drift) * dt_days;
    out.epoch = t;
    return out;
}

SatState propagate(const OrbitElements& elements, const Epoch& t) {
    if (t.days_since_j2000() < elements.epoch.days_since_j2000() - 1.0) {
        throw std::invalid_argument("propagate: t precedes the element epoch by more than 1 day");
    }
    const OrbitElements el = elements_at(elements, t);

    const double e = el.eccentricity;
    const double e_anom = solve_kepler(el.mean_anomaly_deg * kRadPerDeg, e);
    const double a = el.semi_major_axis_km;
    // Perifocal coordinates.
    const double xp = a * (std::cos(e_anom) - e);
    const double yp = a * std::sqrt(1.0 - e * e) * std::sin(e_anom);

    const double cos_o = std::cos(el.arg_perigee_deg * kRadPerDeg);
    const double sin_o = std::sin(el.arg_perigee_deg * kRadPerDeg);
    const double cos_i = std::cos(el.inclination_deg * kRadPerDeg);
    const double sin_i = std::sin(el.inclination_deg * kRadPerDeg);
    const double cos_r = std::cos(el.raan_deg * kRadPerDeg);
    const double sin_r = std::sin(el.raan_deg * kRadPerDeg);

    // R_z(Omega) * R_x(i) * R_z(omega) applied to (xp, yp, 0).
    const double x1 = cos_o * xp - sin_o * yp;
    const double y1 = sin_o * xp + cos_o * yp;
    const double x2 = x1;
    const double y2 = cos_i * y1;
    const double z2 = sin_i * y1;

    SatState state;
    state.position_km = {cos_r * x2 - sin_r * y2, sin_r * x2 + cos_r * y2, z2, Frame::eci};
    state.epoch = t;
    return state;
}

}  // namespace entlink
