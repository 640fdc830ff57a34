#include "entlink/link_budget.hpp"

#include <cmath>
#include <stdexcept>

#include "entlink/constants.hpp"

namespace entlink {

namespace {

void require_unit_interval(double v, const char* what) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument(std::string("link: ") + what + " must be in [0, 1]");
    }
}

}  // namespace

void LinkParams::validate() const {
    if (!(wavelength_m > 0.0)) throw std::invalid_argument("link: wavelength must be > 0");
    if (!(tx_diameter_m > 0.0)) throw std::invalid_argument("link: tx diameter must be > 0");
    if (!(rx_diameter_m > 0.0)) throw std::invalid_argument("link: rx diameter must be > 0");
    if (!(zenith_attenuation_db >= 0.0)) {
        throw std::invalid_argument("link: zenith attenuation must be >= 0 dB");
    }
    if (!(fried_parameter_m > 0.0)) {
        throw std::invalid_argument("link: Fried parameter must be > 0");
    }
    require_unit_interval(tx_transmission, "tx transmission");
    require_unit_interval(rx_transmission, "rx transmission");
    require_unit_interval(optics_transmission, "optics transmission");
    require_unit_interval(pointing_loss, "pointing loss");
    require_unit_interval(detector_efficiency, "detector efficiency");
}

DetectorPreset detector_preset(DetectorKind kind) {
    switch (kind) {
        case DetectorKind::snspd: return {kind, 0.9, 100.0};
        case DetectorKind::si_apd: return {kind, 0.68, 100.0};
        case DetectorKind::ingaas_apd: return {kind, 0.25, 100.0};
    }
    throw std::invalid_argument("unknown detector kind");
}

DivergenceAngles divergence_angles(double wavelength_m, double tx_diameter_m,
                                   double fried_parameter_m) {
    if (!(tx_diameter_m > 0.0) || !(fried_parameter_m > 0.0)) {
        throw std::invalid_argument("divergence_angles: diameters must be > 0");
    }
    return {2.44 * wavelength_m / tx_diameter_m, 2.1 * wavelength_m / fried_parameter_m};
}

double atmospheric_attenuation_db(double elevation_deg, double zenith_attenuation_db) {
    if (!(elevation_deg > 0.0)) {
        throw std::domain_error("atmospheric_attenuation_db: link below horizon (beta <= 0)");
    }
    return zenith_attenuation_db / std::sin(elevation_deg * constants::kRadPerDeg);
}

LinkAttenuation link_attenuation(double range_km, const LinkParams& params,
                                 double elevation_deg) {
    if (!(range_km > 0.0)) throw std::invalid_argument("link_attenuation: range must be > 0");
    const DivergenceAngles theta =
        divergence_angles(params.wavelength_m, params.tx_diameter_m, params.fried_parameter_m);
    const double range_m = range_km * 1000.0;
    const double theta_sq = theta.diffraction_rad * theta.diffraction_rad +
                            theta.turbulence_rad * theta.turbulence_rad;
    double spreading = range_m * range_m * theta_sq /
                       (params.rx_diameter_m * params.rx_diameter_m);

    LinkAttenuation result;
    if (spreading < 1.0) {
        // Receiver larger than the beam: outside the far-field model.
        spreading = 1.0;
        result.clamped = true;
    }
    const double atm_db = atmospheric_attenuation_db(elevation_deg, params.zenith_attenuation_db);
    result.linear = spreading * std::pow(10.0, atm_db / 10.0);
    result.db = db_from_linear(spreading) + atm_db;
    return result;
}

double channel_efficiency(double attenuation_linear, const LinkParams& params) {
    if (!(attenuation_linear >= 1.0)) {
        throw std::invalid_argument("channel_efficiency: attenuation must be >= 1");
    }
    return params.tx_transmission * params.rx_transmission * (1.0 - params.pointing_loss) *
           params.optics_transmission * params.detector_efficiency / attenuation_linear;
}

double system_loss_db(const LinkParams& params) {
    const double eta_one_link = params.tx_transmission * params.rx_transmission *
                                (1.0 - params.pointing_loss) * params.optics_transmission *
                                params.detector_efficiency;
    return -10.0 * std::log10(eta_one_link * eta_one_link);
}

double db_from_linear(double linear) { return 10.0 * std::log10(linear); }

double linear_from_db(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace entlink
