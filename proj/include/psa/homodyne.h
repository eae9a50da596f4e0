#ifndef PSA_HOMODYNE_H
#define PSA_HOMODYNE_H

#include "psa/optics.h"

namespace psa {

/// Local-oscillator settings. The phase actually applied is xi + delta, where
/// delta models an unintended modulation error.
struct LoConfig {
    double beta_mag = 1.0;
    double xi = 0.0;
    double delta = 0.0;

    double effective_phase() const {
        return xi + delta;
    }
    /// Throws DomainError unless beta_mag > 0 and all fields are finite.
    void validate() const;
};

/// Most phase-sensitive LO phase, pi/2 + lambda, for input phase lambda.
double optimal_lo_phase(double lambda);

/// Single-shot homodyne statistics of a coherent state.
struct QuadratureStats {
    double mean = 0.0;
    double std_dev = 0.5;
    double snr = 0.0;
    double sensitivity = 0.0;
};

/// Quadrature fluctuation of any coherent state for X = (a^dag e^{i xi} + a e^{-i xi})/2.
inline constexpr double kCoherentQuadratureStd = 0.5;

/// <alpha_f| X_xi |alpha_f> = Re(alpha_f e^{-i xi}).
double quadrature_mean(ComplexAmplitude alpha_f, double xi);

/// Small-coupling statistics at the optimal LO phase. Only defined for the
/// beam-splitter modulation scheme (gamma = 0); throws DomainError otherwise.
QuadratureStats quadrature_stats_aav(const MziParams &params);

/// Statistics at the optimal LO phase from the exact port-3 field.
QuadratureStats quadrature_stats_exact(const MziParams &params);

/// Relative biases of the inferred signal phase when the LO phase is off by delta.
struct ModulationBias {
    double conventional_bias = 0.0;  ///< |chi_c - chi| / |chi| without postselection
    double psa_bias = 0.0;           ///< |chi_hat - chi| / |chi| from the postselected port
    double conventional_estimate = 0.0;
    double psa_estimate = 0.0;
};

/// Compares how a LO modulation error propagates into the inferred chi for a
/// direct measurement of alpha e^{i chi} and for the postselected port.
/// Throws DomainError when chi + delta or chi_tilde + delta leaves (-pi/2, pi/2),
/// ZeroSignal when chi == 0.
ModulationBias modulation_error_compare(double chi, const MziParams &params, double delta);

struct RescaledIntensity {
    double value = 0.0;
    bool clamped = false;  ///< I1 + I2 - I_lo was negative and has been set to 0
};

/// Signal intensity recovered from the two detector intensities: I1 + I2 - I_lo.
RescaledIntensity rescaled_intensity(double i1, double i2, double i_lo);

}  // namespace psa

#endif
