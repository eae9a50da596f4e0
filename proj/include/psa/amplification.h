#ifndef PSA_AMPLIFICATION_H
#define PSA_AMPLIFICATION_H

#include <complex>

#include "psa/optics.h"

namespace psa {

/// Pre/postselection coefficients of the port-3 field, alpha_f = (c1 e^{i chi} + c2) alpha,
/// and the weak value they define.
struct WeakValue {
    std::complex<double> c1;       ///< cos(theta2)/sqrt(2)
    std::complex<double> c2;       ///< -e^{i gamma} sin(theta2)/sqrt(2)
    std::complex<double> overlap;  ///< c1 + c2
    std::complex<double> a_w;      ///< c1 / (c1 + c2)
};

/// |c1 + c2| below which the postselection counts as exactly dark.
inline constexpr double kDarkPointThreshold = 1e-15;

/// |alpha_f| below which the postselected phase counts as undefined.
inline constexpr double kZeroAmplitudeThreshold = 1e-15;

/// Throws DarkPointSingularity when |c1 + c2| < kDarkPointThreshold.
WeakValue weak_value(double theta2, double gamma);

enum class PhaseMode { AAV, EXACT };

struct AmplifiedPhase {
    double chi_tilde = 0.0;    ///< radians, in (-pi, pi]
    double alpha_f_mag = 0.0;  ///< |alpha_f|
    PhaseMode mode = PhaseMode::EXACT;
    /// Set when the weak value carries an imaginary part large enough that
    /// e^{i A_w chi} is not a pure phase (|Im(A_w) chi| > 1% of |Re(A_w) chi|).
    /// Such a factor cannot be read out by a quadrature measurement.
    bool imaginary_weak_value = false;
};

/// Small-coupling amplified phase Re(A_w) * chi, with |alpha_f| = |c1 + c2| sqrt(N).
AmplifiedPhase chi_tilde_aav(double chi, double theta2, double gamma, double photon_number = 1.0);

/// Amplified phase from the exact port-3 field: arg(alpha_f) - lambda, taken
/// with a two-argument arctangent so every quadrant is handled.
/// Throws ZeroAmplitude when |alpha_f| < kZeroAmplitudeThreshold.
AmplifiedPhase chi_tilde_exact(const MziParams &params);

/// Exact amplified phase as a function of (chi, theta2, gamma) alone; independent of alpha.
double chi_tilde_exact_phase(double chi, double theta2, double gamma);

/// Solves chi_tilde_exact_phase(chi, theta2, gamma) = chi_tilde_measured for
/// chi in (-pi/2, pi/2) by bracketing and bisection. When several angles map to the
/// measured value the one closest to zero is returned. Throws NoRoot if none does.
double invert_chi(double chi_tilde_measured, double theta2, double gamma);

}  // namespace psa

#endif
