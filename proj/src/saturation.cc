#include "psa/saturation.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "psa/amplification.h"
#include "psa/errors.h"

namespace psa {

namespace {

double nonnegative_count(double n) {
    if (n >= 0.0) {
        return n;
    }
    if (n > -1e-15) {
        return 0.0;
    }
    throw NegativeCount("detector photon count " + std::to_string(n) + " is negative");
}

}  // namespace

void DetectorParams::validate() const {
    if (!(k_max > 0.0) || !(n_sat > 0.0) || !std::isfinite(k_max) || !std::isfinite(n_sat)) {
        throw DomainError("detector needs k_max > 0 and n_sat > 0");
    }
}

double detector_current(double n_photons, const DetectorParams &det) {
    if (!(n_photons >= 0.0)) {
        throw DomainError("photon number must be non-negative");
    }
    return -det.k_max * std::expm1(-n_photons / det.n_sat);
}

DetectorCounts detector_counts(double beta_mag, double xi, ComplexAmplitude alpha_f) {
    if (!(beta_mag > 0.0)) {
        throw DomainError("LO amplitude must be positive");
    }
    double total = beta_mag * beta_mag + std::norm(alpha_f);
    double imbalance = 2 * beta_mag * quadrature_mean(alpha_f, xi);
    return {nonnegative_count(0.5 * (total + imbalance)), nonnegative_count(0.5 * (total - imbalance))};
}

double linear_quadrature(double beta_mag, double xi, ComplexAmplitude alpha_f, const DetectorParams &det) {
    DetectorCounts n = detector_counts(beta_mag, xi, alpha_f);
    return det.linear_gain() * (n.n1 - n.n2) / (2 * beta_mag);
}

double saturated_quadrature(double beta_mag, double xi, ComplexAmplitude alpha_f, const DetectorParams &det) {
    DetectorCounts n = detector_counts(beta_mag, xi, alpha_f);
    // e^{-a} - e^{-b} = -e^{-a} expm1(a - b), which keeps full precision when n1 ~ n2.
    double a = n.n2 / det.n_sat;
    double b = n.n1 / det.n_sat;
    return det.k_max / (2 * beta_mag) * (-std::exp(-a) * std::expm1(a - b));
}

LinearInversion invert_phase_linear_model(double x_measured, double alpha_f_mag, const DetectorParams &det) {
    if (!(alpha_f_mag > kZeroAmplitudeThreshold)) {
        throw ZeroAmplitude("cannot invert the quadrature of a vanishing field");
    }
    LinearInversion out;
    double ratio = x_measured / (alpha_f_mag * det.linear_gain());
    if (ratio > 1.0 || ratio < -1.0) {
        out.clamped = true;
        ratio = std::clamp(ratio, -1.0, 1.0);
    }
    out.chi_tilde = std::asin(ratio);
    return out;
}

SaturationReport error_ratio(const MziParams &params, const LoConfig &lo, const DetectorParams &det) {
    det.validate();
    lo.validate();
    AmplifiedPhase phase = chi_tilde_exact(params);
    if (phase.chi_tilde == 0.0) {
        throw ZeroSignal("amplified phase is zero; error ratio undefined");
    }
    ComplexAmplitude alpha_f = propagate_mzi(params).alpha_f;
    double xi = lo.effective_phase();

    SaturationReport r;
    DetectorCounts n = detector_counts(lo.beta_mag, xi, alpha_f);
    r.n1 = n.n1;
    r.n2 = n.n2;
    r.x_linear = linear_quadrature(lo.beta_mag, xi, alpha_f, det);
    r.x_saturated = saturated_quadrature(lo.beta_mag, xi, alpha_f, det);
    r.chi_tilde = phase.chi_tilde;
    LinearInversion biased = invert_phase_linear_model(r.x_saturated, phase.alpha_f_mag, det);
    r.chi_tilde_biased = biased.chi_tilde;
    r.clamped = biased.clamped;
    r.eta_e = std::abs(r.chi_tilde_biased - r.chi_tilde) / std::abs(r.chi_tilde);
    return r;
}

}  // namespace psa
