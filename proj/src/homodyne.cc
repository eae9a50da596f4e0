#include "psa/homodyne.h"

#include <cmath>
#include <string>

#include "psa/amplification.h"
#include "psa/errors.h"

namespace psa {

namespace {
constexpr double kPi = std::numbers::pi;

void require_small_angle(double phi, const char *what) {
    if (!(std::abs(phi) < kPi / 2)) {
        throw DomainError(std::string(what) + " = " + std::to_string(phi) + " is outside (-pi/2, pi/2)");
    }
}

double checked_arcsin(double x) {
    if (!(std::abs(x) <= 1.0)) {
        throw DomainError("arcsin argument " + std::to_string(x) + " exceeds 1");
    }
    return std::asin(x);
}
}  // namespace

void LoConfig::validate() const {
    if (!(beta_mag > 0.0) || !std::isfinite(beta_mag)) {
        throw DomainError("LO amplitude must be positive, got " + std::to_string(beta_mag));
    }
    if (!std::isfinite(xi) || !std::isfinite(delta)) {
        throw DomainError("LO phases must be finite");
    }
}

double optimal_lo_phase(double lambda) {
    return kPi / 2 + lambda;
}

double quadrature_mean(ComplexAmplitude alpha_f, double xi) {
    return (alpha_f * std::polar(1.0, -xi)).real();
}

QuadratureStats quadrature_stats_aav(const MziParams &params) {
    if (params.gamma != 0.0) {
        throw DomainError("small-coupling quadrature statistics require gamma = 0");
    }
    double n = params.photon_number();
    double chi_a = chi_tilde_aav(params.chi, params.theta2, params.gamma, n).chi_tilde;
    double contrast = std::cos(params.theta2) - std::sin(params.theta2);
    QuadratureStats s;
    s.mean = std::sqrt(n / 2) * contrast * std::sin(chi_a);
    s.std_dev = kCoherentQuadratureStd;
    s.snr = s.mean / s.std_dev;
    s.sensitivity = std::sqrt(2 * n) * std::abs(contrast * std::cos(chi_a)) * chi_a;
    return s;
}

QuadratureStats quadrature_stats_exact(const MziParams &params) {
    AmplifiedPhase phase = chi_tilde_exact(params);
    QuadratureStats s;
    s.mean = phase.alpha_f_mag * std::sin(phase.chi_tilde);
    s.std_dev = kCoherentQuadratureStd;
    s.snr = s.mean / s.std_dev;
    // sqrt(2N[1 - sin(2 theta2) cos(chi - gamma)]) == 2 |alpha_f|
    s.sensitivity = 2 * phase.alpha_f_mag * std::abs(std::cos(phase.chi_tilde)) * phase.chi_tilde;
    return s;
}

ModulationBias modulation_error_compare(double chi, const MziParams &params, double delta) {
    if (chi == 0.0) {
        throw ZeroSignal("relative bias is undefined for chi = 0");
    }
    MziParams p = params;
    p.chi = chi;
    AmplifiedPhase amplified = chi_tilde_exact(p);

    require_small_angle(chi + delta, "chi + delta");
    require_small_angle(amplified.chi_tilde + delta, "chi_tilde + delta");

    ModulationBias out;

    double sqrt_ic = std::sqrt(p.photon_number());
    double x_c = sqrt_ic * std::sin(chi + delta);
    out.conventional_estimate = checked_arcsin(x_c / sqrt_ic);
    out.conventional_bias = std::abs(out.conventional_estimate - chi) / std::abs(chi);

    double sqrt_if = amplified.alpha_f_mag;
    double x_f = sqrt_if * std::sin(amplified.chi_tilde + delta);
    double chi_tilde_inferred = checked_arcsin(x_f / sqrt_if);
    out.psa_estimate = invert_chi(chi_tilde_inferred, p.theta2, p.gamma);
    out.psa_bias = std::abs(out.psa_estimate - chi) / std::abs(chi);
    return out;
}

RescaledIntensity rescaled_intensity(double i1, double i2, double i_lo) {
    if (!(i1 >= 0.0) || !(i2 >= 0.0) || !(i_lo >= 0.0)) {
        throw DomainError("intensities must be non-negative");
    }
    double value = i1 + i2 - i_lo;
    if (value < 0.0) {
        return {0.0, true};
    }
    return {value, false};
}

}  // namespace psa
