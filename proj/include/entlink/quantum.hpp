/**
 * Coincidence statistics for a pulsed SPDC pair source observed through two
 * lossy channels, after Ma et al. (2007): per-window coincidence
 * probability, raw coincidence rate, QBER estimate and the distillation
 * lower bound.
 *
 *   Q(mu) = 1 - (1-Y01)/(1+eta1 mu/2)^2 - (1-Y02)/(1+eta2 mu/2)^2
 *             + (1-Y01)(1-Y02)/(1+(eta1+eta2-eta1 eta2) mu/2)^2
 *   Y0x   = (n_det*D + B) * tau
 *   QBER  = e0 - C/Q,  C = (e0-ep) eta1 eta2 mu (1+mu/2) / (...)
 *   yield = q (1 - f*H2(QBER) - H2(QBER)),  clamped below at 0
 *
 * Reported raw coincidences include the basis-reconciliation factor q
 * (R_raw = q*Q/tau); the unsifted Q/tau is exported alongside.
 */
#pragma once

#include <optional>

namespace entlink {

struct QuantumParams {
    double mean_pairs_per_window = 0.02;        // mu
    double coincidence_window_s = 200e-12;      // tau
    double sifting_factor = 0.5;                // q
    double error_correction_efficiency = 1.22;  // f, constant
    double noise_error_rate = 0.5;              // e0
    double polarization_error_rate = 0.01;      // ep
    double dark_count_rate_cps = 100.0;         // D, per detector
    double background_rate_cps = 100.0;         // B
    int detectors_per_station = 4;

    void validate() const;
};

/// Per-window noise-click probability Y0 = (n_det*D + B)*tau.
double detector_noise_term(double dark_count_rate_cps, double background_rate_cps,
                           double coincidence_window_s, int detectors_per_station);

/// Per-window coincidence probability Q(mu). Evaluated in extended
/// precision; clamped to [0, 1] only against floating-point underflow.
double coincidence_probability(double mu, double eta1, double eta2, double y01, double y02);

/// Unsifted coincidence rate Q/tau, counts per second.
double raw_coincidence_rate(double window_probability, double coincidence_window_s);

/// Binary entropy with H2(0) = H2(1) = 0.
double binary_entropy(double x);

/// QBER estimate, clamped to [0, 0.5]. Returns nullopt when Q == 0
/// (no signal; the sample carries no distillable coincidences).
std::optional<double> qber(double mu, double eta1, double eta2, double window_probability,
                           double e0, double ep);

/// Distillation lower bound q*(1 - f*H2(QBER) - H2(QBER)), clamped at 0.
double distillation_yield(double qber_value, double sifting_factor,
                          double error_correction_efficiency);

struct CoincidenceResult {
    double window_probability = 0.0;  // Q
    double unsifted_rate_cps = 0.0;   // Q/tau
    double raw_rate_cps = 0.0;        // q*Q/tau (sifted)
    double qber = 0.0;
    double yield = 0.0;               // in [0, q]
    double distilled_rate_cps = 0.0;  // (yield/q) * raw
    bool no_signal = false;           // Q == 0; QBER undefined
};

/// Full chain for one sample given the two channel efficiencies.
CoincidenceResult evaluate_sample(double eta1, double eta2, const QuantumParams& params);

}  // namespace entlink
