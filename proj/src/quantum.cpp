#include "entlink/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace entlink {

void QuantumParams::validate() const {
    if (!(mean_pairs_per_window >= 0.0)) {
        throw std::invalid_argument("quantum: mu must be >= 0");
    }
    if (!(coincidence_window_s > 0.0)) {
        throw std::invalid_argument("quantum: coincidence window must be > 0");
    }
    if (!(sifting_factor > 0.0 && sifting_factor <= 1.0)) {
        throw std::invalid_argument("quantum: sifting factor must be in (0, 1]");
    }
    if (!(error_correction_efficiency >= 1.0)) {
        throw std::invalid_argument("quantum: error correction efficiency must be >= 1");
    }
    if (!(polarization_error_rate >= 0.0 && polarization_error_rate <= noise_error_rate &&
          noise_error_rate <= 0.5)) {
        throw std::invalid_argument("quantum: need 0 <= ep <= e0 <= 0.5");
    }
    if (!(dark_count_rate_cps >= 0.0) || !(background_rate_cps >= 0.0)) {
        throw std::invalid_argument("quantum: count rates must be >= 0");
    }
    if (detectors_per_station < 1) {
        throw std::invalid_argument("quantum: detectors per station must be >= 1");
    }
}

double detector_noise_term(double dark_count_rate_cps, double background_rate_cps,
                           double coincidence_window_s, int detectors_per_station) {
    if (dark_count_rate_cps < 0.0 || background_rate_cps < 0.0 ||
        coincidence_window_s <= 0.0 || detectors_per_station < 1) {
        throw std::invalid_argument("detector_noise_term: invalid inputs");
    }
    return (detectors_per_station * dark_count_rate_cps + background_rate_cps) *
           coincidence_window_s;
}

double coincidence_probability(double mu, double eta1, double eta2, double y01, double y02) {
    if (!(mu >= 0.0) || !(eta1 >= 0.0 && eta1 <= 1.0) || !(eta2 >= 0.0 && eta2 <= 1.0) ||
        !(y01 >= 0.0 && y01 < 1.0) || !(y02 >= 0.0 && y02 < 1.0)) {
        throw std::invalid_argument("coincidence_probability: parameter out of range");
    }
    // The three terms cancel to ~mu*eta1*eta2: evaluate in extended precision.
    const long double u1 = 1.0L + static_cast<long double>(eta1) * mu / 2.0L;
    const long double u2 = 1.0L + static_cast<long double>(eta2) * mu / 2.0L;
    const long double both = static_cast<long double>(eta1) + static_cast<long double>(eta2) -
                             static_cast<long double>(eta1) * eta2;
    const long double uc = 1.0L + both * mu / 2.0L;
    const long double q = 1.0L - (1.0L - y01) / (u1 * u1) - (1.0L - y02) / (u2 * u2) +
                          (1.0L - y01) * (1.0L - y02) / (uc * uc);
    return std::clamp(static_cast<double>(q), 0.0, 1.0);
}

double raw_coincidence_rate(double window_probability, double coincidence_window_s) {
    if (!(coincidence_window_s > 0.0)) {
        throw std::invalid_argument("raw_coincidence_rate: window must be > 0");
    }
    return window_probability / coincidence_window_s;
}

double binary_entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::invalid_argument("binary_entropy: x must be in [0, 1]");
    }
    if (x == 0.0 || x == 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

std::optional<double> qber(double mu, double eta1, double eta2, double window_probability,
                           double e0, double ep) {
    if (window_probability <= 0.0) return std::nullopt;
    const double u1 = 1.0 + eta1 * mu / 2.0;
    const double u2 = 1.0 + eta2 * mu / 2.0;
    const double uc = 1.0 + (eta1 + eta2 - eta1 * eta2) * mu / 2.0;
    const double c = (e0 - ep) * eta1 * eta2 * mu * (1.0 + mu / 2.0) / (u1 * u2 * uc);
    return std::clamp(e0 - c / window_probability, 0.0, 0.5);
}

double distillation_yield(double qber_value, double sifting_factor,
                          double error_correction_efficiency) {
    if (!(qber_value >= 0.0 && qber_value <= 0.5)) {
        throw std::invalid_argument("distillation_yield: QBER must be in [0, 0.5]");
    }
    const double h2 = binary_entropy(qber_value);
    const double bound =
        sifting_factor * (1.0 - error_correction_efficiency * h2 - h2);
    return std::max(bound, 0.0);
}

CoincidenceResult evaluate_sample(double eta1, double eta2, const QuantumParams& params) {
    params.validate();
    const double y0 = detector_noise_term(params.dark_count_rate_cps, params.background_rate_cps,
                                          params.coincidence_window_s,
                                          params.detectors_per_station);

    CoincidenceResult r;
    r.window_probability =
        coincidence_probability(params.mean_pairs_per_window, eta1, eta2, y0, y0);
    r.unsifted_rate_cps = raw_coincidence_rate(r.window_probability, params.coincidence_window_s);
    r.raw_rate_cps = params.sifting_factor * r.unsifted_rate_cps;

    const std::optional<double> qber_value =
        qber(params.mean_pairs_per_window, eta1, eta2, r.window_probability,
             params.noise_error_rate, params.polarization_error_rate);
    if (!qber_value) {
        r.no_signal = true;
        return r;  // zero rates, excluded from distillation
    }
    r.qber = *qber_value;
    r.yield = distillation_yield(r.qber, params.sifting_factor,
                                 params.error_correction_efficiency);
    r.distilled_rate_cps = (r.yield / params.sifting_factor) * r.raw_rate_cps;
    return r;
}

}  // namespace entlink
