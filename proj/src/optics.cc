#include "psa/optics.h"

#include <cmath>
#include <string>

#include "psa/errors.h"

namespace psa {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr ComplexAmplitude kI{0.0, 1.0};
}  // namespace

double wrap_phase(double phi) {
    double w = std::remainder(phi, 2 * kPi);
    if (w <= -kPi) {
        w += 2 * kPi;
    }
    return w;
}

double phase_of(ComplexAmplitude a) {
    double p = std::arg(a);
    return p == -kPi ? kPi : p;
}

ComplexAmplitude coherent_amplitude(double photon_number, double lambda) {
    if (!(photon_number >= 0.0) || !std::isfinite(photon_number)) {
        throw DomainError("photon number must be finite and non-negative, got " + std::to_string(photon_number));
    }
    return std::polar(std::sqrt(photon_number), lambda);
}

void MziParams::validate() const {
    auto check_angle = [](double theta, const char *name) {
        if (!std::isfinite(theta) || theta < 0.0 || theta > kPi / 2) {
            throw DomainError(std::string(name) + " must lie in [0, pi/2], got " + std::to_string(theta));
        }
    };
    check_angle(theta1, "theta1");
    check_angle(theta2, "theta2");
    if (!std::isfinite(gamma) || !std::isfinite(chi)) {
        throw DomainError("phases gamma and chi must be finite");
    }
    if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
        throw DomainError("input amplitude must be finite");
    }
}

Matrix2 bs_matrix(double theta) {
    double c = std::cos(theta);
    double s = std::sin(theta);
    return {{{c, -kI * s}, {-kI * s, c}}};
}

std::pair<ComplexAmplitude, ComplexAmplitude> bs_transform(
    ComplexAmplitude a_in, ComplexAmplitude b_in, double theta) {
    double c = std::cos(theta);
    double s = std::sin(theta);
    return {a_in * c - kI * b_in * s, -kI * a_in * s + b_in * c};
}

ComplexAmplitude phase_shift(ComplexAmplitude a, double phi) {
    return a * std::polar(1.0, phi);
}

PortFields propagate_mzi_balanced(const MziParams &params) {
    if (params.theta1 != kPi / 4) {
        throw DomainError("closed-form propagation requires theta1 = pi/4");
    }
    ComplexAmplitude arm1 = std::polar(1.0, params.chi);
    ComplexAmplitude arm2 = std::polar(1.0, params.gamma);
    double c2 = std::cos(params.theta2);
    double s2 = std::sin(params.theta2);
    ComplexAmplitude scaled = params.alpha / std::sqrt(2.0);
    return {
        scaled * (arm1 * c2 - arm2 * s2),
        -kI * scaled * (arm1 * s2 + arm2 * c2),
    };
}

PortFields propagate_mzi_composed(const MziParams &params) {
    auto [arm1, arm2] = bs_transform(params.alpha, 0.0, params.theta1);
    arm1 = phase_shift(arm1, params.chi);
    arm2 = phase_shift(arm2, params.gamma);
    auto [port3, port4] = bs_transform(arm1, arm2, params.theta2);
    return {port3, port4};
}

PortFields propagate_mzi(const MziParams &params) {
    if (params.theta1 == kPi / 4) {
        return propagate_mzi_balanced(params);
    }
    return propagate_mzi_composed(params);
}

double intensity_difference(const MziParams &params) {
    PortFields out = propagate_mzi(params);
    return std::norm(out.alpha_f) - std::norm(out.alpha_fbar);
}

}  // namespace psa
