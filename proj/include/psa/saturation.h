#ifndef PSA_SATURATION_H
#define PSA_SATURATION_H

#include "psa/homodyne.h"
#include "psa/optics.h"

namespace psa {

/// Photodetector with exponential saturation, I = k_max (1 - e^{-N / n_sat}).
struct DetectorParams {
    double k_max = 1.0;
    double n_sat = 1.0;

    /// Small-signal gain k_max / n_sat, assumed calibrated beforehand on a weak beam.
    double linear_gain() const {
        return k_max / n_sat;
    }
    void validate() const;
};

double detector_current(double n_photons, const DetectorParams &det);

struct DetectorCounts {
    double n1 = 0.0;
    double n2 = 0.0;
};

/// Mean photon numbers at the two homodyne detectors. Built from the identities
/// n1 + n2 = |beta|^2 + |alpha_f|^2 and (n1 - n2) / (2|beta|) = Re(alpha_f e^{-i xi}).
/// Throws NegativeCount if a count is negative beyond 1e-15.
DetectorCounts detector_counts(double beta_mag, double xi, ComplexAmplitude alpha_f);

/// Rescaled current difference of unsaturated detectors, (k_max / n_sat) * X_xi.
double linear_quadrature(double beta_mag, double xi, ComplexAmplitude alpha_f, const DetectorParams &det);

/// Rescaled current difference of saturating detectors,
/// k_max / (2|beta|) * (e^{-n2/n_sat} - e^{-n1/n_sat}).
double saturated_quadrature(double beta_mag, double xi, ComplexAmplitude alpha_f, const DetectorParams &det);

struct LinearInversion {
    double chi_tilde = 0.0;
    bool clamped = false;
};

/// Amplified phase an experimenter assuming a linear detector would infer:
/// arcsin(x / (|alpha_f| k_max / n_sat)). Throws ZeroAmplitude when alpha_f_mag <= 1e-15.
LinearInversion invert_phase_linear_model(double x_measured, double alpha_f_mag, const DetectorParams &det);

struct SaturationReport {
    double n1 = 0.0;
    double n2 = 0.0;
    double x_linear = 0.0;
    double x_saturated = 0.0;
    double chi_tilde = 0.0;         ///< exact amplified phase
    double chi_tilde_biased = 0.0;  ///< linear inversion of the saturated readout
    double eta_e = 0.0;             ///< |chi_tilde_biased - chi_tilde| / |chi_tilde|
    bool clamped = false;
};

/// Relative error of the amplified phase caused by detector saturation.
/// Throws ZeroSignal when the exact amplified phase is zero.
SaturationReport error_ratio(const MziParams &params, const LoConfig &lo, const DetectorParams &det);

}  // namespace psa

#endif
