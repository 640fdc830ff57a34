/**
 * Free-space optical downlink budget.
 *
 * Per-link attenuation combines diffraction plus turbulence beam spreading
 * with an elevation-scaled atmospheric absorption term:
 *
 *   A = L^2 (theta_diff^2 + theta_atm^2) / D_R^2 * 10^(A_atm0 / (10 sin beta))
 *   theta_diff = 2.44 lambda / D_T,  theta_atm = 2.1 lambda / r0
 *
 * and the end-to-end single-photon channel efficiency is
 *
 *   eta = T_T * T_R * (1 - L_P) * T_optics * PDE / A.
 *
 * dB convention: dB = 10*log10(linear attenuation >= 1); efficiencies are
 * reported as negative-signed dB losses in outputs.
 */
#pragma once

namespace entlink {

struct LinkParams {
    double wavelength_m = 0.0;
    double tx_diameter_m = 0.0;         // D_T
    double rx_diameter_m = 0.0;         // D_R
    double zenith_attenuation_db = 0.0; // A_atm0
    double tx_transmission = 1.0;       // T_T
    double rx_transmission = 1.0;       // T_R
    double optics_transmission = 1.0;   // T_optics
    double pointing_loss = 0.0;         // L_P
    double detector_efficiency = 1.0;   // PDE
    double fried_parameter_m = 1e6;     // r0; default effectively infinite

    void validate() const;
};

enum class DetectorKind { snspd, si_apd, ingaas_apd };

struct DetectorPreset {
    DetectorKind kind = DetectorKind::snspd;
    double pde = 0.9;
    double dark_count_rate_cps = 100.0;
};

DetectorPreset detector_preset(DetectorKind kind);

struct DivergenceAngles {
    double diffraction_rad = 0.0;  // theta_diff
    double turbulence_rad = 0.0;   // theta_atm
};

DivergenceAngles divergence_angles(double wavelength_m, double tx_diameter_m,
                                   double fried_parameter_m);

/// A_atm0 / sin(beta); throws std::domain_error for beta <= 0 (below horizon).
double atmospheric_attenuation_db(double elevation_deg, double zenith_attenuation_db);

struct LinkAttenuation {
    double linear = 1.0;   // >= 1
    double db = 0.0;
    bool clamped = false;  // geometric spreading factor fell below 1 (near field)
};

LinkAttenuation link_attenuation(double range_km, const LinkParams& params,
                                 double elevation_deg);

/// Product of the constant transmission factors divided by the attenuation.
double channel_efficiency(double attenuation_linear, const LinkParams& params);

/// Constant dual-link system loss -10*log10((T_T T_R (1-L_P) T_optics PDE)^2).
double system_loss_db(const LinkParams& params);

double db_from_linear(double linear);
double linear_from_db(double db);

}  // namespace entlink
