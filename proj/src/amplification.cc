#include "psa/amplification.h"

#include <cmath>
#include <optional>
#include <string>

#include "psa/errors.h"

namespace psa {

namespace {

constexpr double kPi = std::numbers::pi;

// Grid used to bracket roots of the inversion before bisection.
constexpr int kInversionGrid = 4096;
constexpr double kBisectionTolerance = 1e-14;

double wrapped_residual(double chi, double target, double theta2, double gamma) {
    return wrap_phase(chi_tilde_exact_phase(chi, theta2, gamma) - target);
}

double bisect(double lo, double hi, double g_lo, double target, double theta2, double gamma) {
    for (int iter = 0; iter < 200 && hi - lo > kBisectionTolerance; ++iter) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) {
            break;
        }
        double g_mid = wrapped_residual(mid, target, theta2, gamma);
        if (g_mid == 0.0) {
            return mid;
        }
        if ((g_mid < 0.0) == (g_lo < 0.0)) {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

WeakValue weak_value(double theta2, double gamma) {
    WeakValue w;
    w.c1 = std::cos(theta2) / std::sqrt(2.0);
    w.c2 = -std::polar(1.0, gamma) * std::sin(theta2) / std::sqrt(2.0);
    w.overlap = w.c1 + w.c2;
    if (std::abs(w.overlap) < kDarkPointThreshold) {
        throw DarkPointSingularity(
            "postselection is orthogonal to preselection at theta2=" + std::to_string(theta2) +
            ", gamma=" + std::to_string(gamma));
    }
    w.a_w = w.c1 / w.overlap;
    return w;
}

AmplifiedPhase chi_tilde_aav(double chi, double theta2, double gamma, double photon_number) {
    WeakValue w = weak_value(theta2, gamma);
    AmplifiedPhase out;
    out.mode = PhaseMode::AAV;
    out.chi_tilde = wrap_phase(w.a_w.real() * chi);
    out.alpha_f_mag = std::abs(w.overlap) * std::sqrt(photon_number);
    out.imaginary_weak_value = std::abs(w.a_w.imag() * chi) > 0.01 * std::abs(w.a_w.real() * chi);
    return out;
}

double chi_tilde_exact_phase(double chi, double theta2, double gamma) {
    double c2 = std::cos(theta2);
    double s2 = std::sin(theta2);
    double y = std::sin(chi) * c2 - std::sin(gamma) * s2;
    double x = std::cos(chi) * c2 - std::cos(gamma) * s2;
    double phi = std::atan2(y, x);
    return phi == -kPi ? kPi : phi;
}

AmplifiedPhase chi_tilde_exact(const MziParams &params) {
    AmplifiedPhase out;
    out.mode = PhaseMode::EXACT;
    if (params.theta1 == kPi / 4) {
        double n = params.photon_number();
        double visibility = 1.0 - std::sin(2 * params.theta2) * std::cos(params.chi - params.gamma);
        out.alpha_f_mag = std::sqrt(n / 2) * std::sqrt(std::max(visibility, 0.0));
        out.chi_tilde = chi_tilde_exact_phase(params.chi, params.theta2, params.gamma);
    } else {
        ComplexAmplitude alpha_f = propagate_mzi_composed(params).alpha_f;
        out.alpha_f_mag = std::abs(alpha_f);
        out.chi_tilde = wrap_phase(phase_of(alpha_f) - params.input_phase());
    }
    if (out.alpha_f_mag < kZeroAmplitudeThreshold) {
        throw ZeroAmplitude("postselected port is exactly dark; amplified phase undefined");
    }
    return out;
}

double invert_chi(double chi_tilde_measured, double theta2, double gamma) {
    const double lo_edge = -kPi / 2;
    const double hi_edge = kPi / 2;
    const double step = (hi_edge - lo_edge) / kInversionGrid;
    const double target = wrap_phase(chi_tilde_measured);

    std::optional<double> best;
    auto consider = [&](double root) {
        if (!best || std::abs(root) < std::abs(*best)) {
            best = root;
        }
    };

    double prev_x = lo_edge;
    double prev_g = wrapped_residual(prev_x, target, theta2, gamma);
    if (prev_g == 0.0) {
        consider(prev_x);
    }
    for (int k = 1; k <= kInversionGrid; ++k) {
        double x = k == kInversionGrid ? hi_edge : lo_edge + k * step;
        double g = wrapped_residual(x, target, theta2, gamma);
        if (g == 0.0) {
            consider(x);
        } else if (prev_g != 0.0 && (g < 0.0) != (prev_g < 0.0) && std::abs(g - prev_g) < kPi) {
            // A jump of ~2pi is the branch cut of the wrapped residual, not a root.
            consider(bisect(prev_x, x, prev_g, target, theta2, gamma));
        }
        prev_x = x;
        prev_g = g;
    }
    if (!best) {
        throw NoRoot("no chi in (-pi/2, pi/2) reproduces amplified phase " + std::to_string(chi_tilde_measured));
    }
    return *best;
}

}  // namespace psa
