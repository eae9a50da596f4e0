#ifndef PSA_OPTICS_H
#define PSA_OPTICS_H

#include <array>
#include <complex>
#include <numbers>
#include <utility>

namespace psa {

/// Complex amplitude of a coherent state or field mode (dimensionless).
using ComplexAmplitude = std::complex<double>;

/// Wraps an angle into (-pi, pi].
double wrap_phase(double phi);

/// Phase of an amplitude in (-pi, pi].
double phase_of(ComplexAmplitude a);

/// Squared magnitude, i.e. mean photon number of the coherent state.
inline double intensity(ComplexAmplitude a) {
    return std::norm(a);
}

/// Input coherent amplitude sqrt(n) * e^{i lambda}.
ComplexAmplitude coherent_amplitude(double photon_number, double lambda = 0.0);

/// Interferometer knobs. Arm 1 is the transmitted path at the first splitter and
/// carries the signal phase `chi`; arm 2 is the reflected path and carries the
/// modulation phase `gamma`.
struct MziParams {
    double theta1 = std::numbers::pi / 4;
    double theta2 = 0.0;
    double gamma = 0.0;
    double chi = 0.0;
    ComplexAmplitude alpha{0.0, 0.0};

    double photon_number() const {
        return std::norm(alpha);
    }
    double input_phase() const {
        return phase_of(alpha);
    }
    /// Throws DomainError when a mixing angle is outside [0, pi/2] or any field is not finite.
    void validate() const;
};

/// Output amplitudes of the interferometer: port 3 (postselected) and port 4.
struct PortFields {
    ComplexAmplitude alpha_f;
    ComplexAmplitude alpha_fbar;
};

using Matrix2 = std::array<std::array<ComplexAmplitude, 2>, 2>;

/// Scattering matrix of a lossless splitter with mixing angle theta:
/// [[cos, -i sin], [-i sin, cos]].
Matrix2 bs_matrix(double theta);

/// Mixes two input modes on a beam splitter. Returns (c, d) with
/// c = a cos(theta) - i b sin(theta), d = -i a sin(theta) + b cos(theta).
std::pair<ComplexAmplitude, ComplexAmplitude> bs_transform(
    ComplexAmplitude a_in, ComplexAmplitude b_in, double theta);

/// a * e^{i phi}.
ComplexAmplitude phase_shift(ComplexAmplitude a, double phi);

/// Closed-form output fields for a balanced first splitter. Throws DomainError
/// unless params.theta1 == pi/4.
PortFields propagate_mzi_balanced(const MziParams &params);

/// Output fields obtained by applying splitter 1, the two arm phases, and splitter 2 in turn.
PortFields propagate_mzi_composed(const MziParams &params);

/// Output fields for arbitrary params. Dispatches to the closed form when
/// theta1 == pi/4 and to step-by-step composition otherwise.
PortFields propagate_mzi(const MziParams &params);

/// Conventional readout |alpha_f|^2 - |alpha_fbar|^2.
double intensity_difference(const MziParams &params);

}  // namespace psa

#endif
