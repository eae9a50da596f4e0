#include "psa/shot_sim.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "psa/amplification.h"
#include "psa/errors.h"
#include "psa/parallel.h"

namespace psa {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix64(std::uint64_t x) {
    x += kGolden;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Uniform in (0, 1].
double open_unit(std::uint64_t bits) {
    return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

}  // namespace

std::uint64_t substream_seed(std::uint64_t base, std::uint64_t index) {
    return splitmix64(splitmix64(base) ^ splitmix64(index * kGolden + 1));
}

double standard_normal(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t key = splitmix64(seed);
    double u1 = open_unit(splitmix64(key + 2 * index * kGolden));
    double u2 = open_unit(splitmix64(key + (2 * index + 1) * kGolden));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

ShotRun sample_shots(ComplexAmplitude alpha_f, double xi, std::uint64_t m, std::uint64_t seed, unsigned threads) {
    if (m == 0) {
        throw DomainError("shot count must be at least 1");
    }
    ShotRun run;
    run.m = m;
    run.seed = seed;
    run.samples.resize(m);
    const double mean = quadrature_mean(alpha_f, xi);
    parallel_for(m, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t j = begin; j < end; ++j) {
            run.samples[j] = mean + kCoherentQuadratureStd * standard_normal(seed, j);
        }
    });

    // Index-order reductions keep the statistics independent of the thread count.
    double sum = 0.0;
    for (double x : run.samples) {
        sum += x;
    }
    run.sample_mean = sum / static_cast<double>(m);
    if (m > 1) {
        double ss = 0.0;
        for (double x : run.samples) {
            double d = x - run.sample_mean;
            ss += d * d;
        }
        run.sample_std = std::sqrt(ss / static_cast<double>(m - 1));
    }
    return run;
}

QuadratureStats averaged_stats(std::uint64_t m, const QuadratureStats &base) {
    if (m == 0) {
        throw DomainError("shot count must be at least 1");
    }
    double root_m = std::sqrt(static_cast<double>(m));
    QuadratureStats out = base;
    out.std_dev = base.std_dev / root_m;
    out.snr = base.snr * root_m;
    out.sensitivity = base.sensitivity * root_m;
    return out;
}

ChiEstimate estimate_chi_from_run(const ShotRun &run, double alpha_f_mag, double theta2, double gamma) {
    if (!(alpha_f_mag > kZeroAmplitudeThreshold)) {
        throw ZeroAmplitude("cannot rescale the quadrature by a vanishing amplitude");
    }
    ChiEstimate out;
    double ratio = run.sample_mean / alpha_f_mag;
    if (ratio > 1.0 || ratio < -1.0) {
        out.clamped = true;
        ratio = std::clamp(ratio, -1.0, 1.0);
    }
    out.chi_tilde_hat = std::asin(ratio);
    out.chi_hat = invert_chi(out.chi_tilde_hat, theta2, gamma);
    return out;
}

std::vector<UncertaintyRow> uncertainty_vs_m(const MziParams &params, const std::vector<std::uint64_t> &m_grid) {
    if (m_grid.empty()) {
        throw DomainError("shot-count grid is empty");
    }
    AmplifiedPhase phase = chi_tilde_exact(params);
    // delta X = 1/2, dX/d chi_tilde = |alpha_f| cos(chi_tilde)
    double single_shot = kCoherentQuadratureStd / (phase.alpha_f_mag * std::abs(std::cos(phase.chi_tilde)));
    std::vector<UncertaintyRow> rows;
    rows.reserve(m_grid.size());
    for (std::uint64_t m : m_grid) {
        if (m == 0) {
            throw DomainError("shot count must be at least 1");
        }
        UncertaintyRow row;
        row.m = m;
        row.chi_tilde = phase.chi_tilde;
        row.uncertainty = single_shot / std::sqrt(static_cast<double>(m));
        row.lower = row.chi_tilde - row.uncertainty;
        row.upper = row.chi_tilde + row.uncertainty;
        rows.push_back(row);
    }
    return rows;
}

MonteCarloSummary monte_carlo_sensitivity(
    const MziParams &params, std::uint64_t m, std::uint64_t runs, std::uint64_t seed, unsigned threads) {
    if (runs < 2) {
        throw DomainError("Monte-Carlo sensitivity needs at least two runs");
    }
    ComplexAmplitude alpha_f = propagate_mzi(params).alpha_f;
    AmplifiedPhase phase = chi_tilde_exact(params);
    double xi = optimal_lo_phase(params.input_phase());

    std::vector<double> means(runs);
    for (std::uint64_t r = 0; r < runs; ++r) {
        means[r] = sample_shots(alpha_f, xi, m, substream_seed(seed, r), threads).sample_mean;
    }

    MonteCarloSummary out;
    out.m = m;
    out.runs = runs;
    double sum = 0.0;
    for (double x : means) {
        sum += x;
    }
    out.mean_of_means = sum / static_cast<double>(runs);
    double ss = 0.0;
    for (double x : means) {
        ss += (x - out.mean_of_means) * (x - out.mean_of_means);
    }
    out.variance_of_means = ss / static_cast<double>(runs - 1);
    double slope = phase.alpha_f_mag * std::abs(std::cos(phase.chi_tilde));
    out.sensitivity = phase.chi_tilde * slope / std::sqrt(out.variance_of_means);
    return out;
}

}  // namespace psa
