#ifndef PSA_SHOT_SIM_H
#define PSA_SHOT_SIM_H

#include <cstdint>
#include <vector>

#include "psa/homodyne.h"
#include "psa/optics.h"

namespace psa {

// Homodyne detection of a coherent state |alpha_f> with LO phase xi yields,
// shot by shot, a Gaussian outcome with mean Re(alpha_f e^{-i xi}) and standard
// deviation 1/2. Sampling that Gaussian is therefore exact, not a
// large-photon-number approximation.
//
// Every shot draws from its own counter-based substream keyed by (seed, shot
// index), so a run is bit-identical no matter how many threads produce it.

/// M repeated quadrature measurements and their statistics.
struct ShotRun {
    std::uint64_t m = 0;
    std::uint64_t seed = 0;
    std::vector<double> samples;
    double sample_mean = 0.0;
    double sample_std = 0.0;
    /// Duration of one pulse. Carried as metadata; integration time is m * pulse_duration.
    double pulse_duration = 0.0;
};

/// Derives an independent 64-bit seed for substream `index` of `base`.
std::uint64_t substream_seed(std::uint64_t base, std::uint64_t index);

/// Standard normal deviate for shot `index` of the stream keyed by `seed`.
double standard_normal(std::uint64_t seed, std::uint64_t index);

/// Draws m single-shot quadrature outcomes. `threads` (0 = hardware concurrency)
/// only affects speed. Throws DomainError when m == 0.
ShotRun sample_shots(ComplexAmplitude alpha_f, double xi, std::uint64_t m, std::uint64_t seed, unsigned threads = 1);

/// Statistics of the M-shot average: same mean, fluctuation reduced by sqrt(m),
/// SNR and sensitivity raised by sqrt(m).
QuadratureStats averaged_stats(std::uint64_t m, const QuadratureStats &base);

struct ChiEstimate {
    double chi_tilde_hat = 0.0;
    double chi_hat = 0.0;
    bool clamped = false;  ///< sample_mean / |alpha_f| fell outside [-1, 1]
};

/// Recovers the amplified phase from the averaged quadrature, arcsin(mean / |alpha_f|),
/// then inverts the amplification. Throws ZeroAmplitude when alpha_f_mag <= 1e-15.
ChiEstimate estimate_chi_from_run(const ShotRun &run, double alpha_f_mag, double theta2, double gamma);

struct UncertaintyRow {
    std::uint64_t m = 0;
    double chi_tilde = 0.0;
    double uncertainty = 0.0;  ///< delta chi_tilde / sqrt(m)
    double lower = 0.0;
    double upper = 0.0;
};

/// Error-propagated uncertainty band of the exact amplified phase versus shot count.
std::vector<UncertaintyRow> uncertainty_vs_m(const MziParams &params, const std::vector<std::uint64_t> &m_grid);

/// Outcome of repeating an M-shot run many times with derived seeds.
struct MonteCarloSummary {
    std::uint64_t m = 0;
    std::uint64_t runs = 0;
    double mean_of_means = 0.0;
    double variance_of_means = 0.0;  ///< unbiased sample variance of the M-shot averages
    /// chi_tilde / delta chi_tilde, with delta chi_tilde propagated from the
    /// observed spread of the M-shot averages.
    double sensitivity = 0.0;
};

/// Runs `runs` independent M-shot measurements of the exact postselected field
/// at the optimal LO phase. Run r uses substream_seed(seed, r).
MonteCarloSummary monte_carlo_sensitivity(
    const MziParams &params, std::uint64_t m, std::uint64_t runs, std::uint64_t seed, unsigned threads = 1);

}  // namespace psa

#endif
