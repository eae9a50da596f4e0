#include "psa/shot_sim.h"

#include <cstring>

#include "gtest/gtest.h"
#include "oracles.h"
#include "psa/amplification.h"
#include "psa/errors.h"

using namespace psa;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kStrong = kPi / 4 - 0.003;

MziParams params(double theta2, double gamma, double chi, double n = 100.0, double lambda = 0.0) {
    MziParams p;
    p.theta2 = theta2;
    p.gamma = gamma;
    p.chi = chi;
    p.alpha = coherent_amplitude(n, lambda);
    return p;
}

double exact_mean_fig3() {
    double i_f = 50.0 * (1 - std::sin(2 * kStrong) * std::cos(1e-2));
    return std::sqrt(i_f) * std::sin(oracle::amplified_phase(kStrong, 0.0, 1e-2));
}
}  // namespace

TEST(shot_sim, vacuum_has_zero_mean) {
    ShotRun run = sample_shots(0.0, 0.3, 1'000'000, 17);
    EXPECT_EQ(run.samples.size(), 1'000'000u);
    EXPECT_NEAR(run.sample_mean, 0.0, 5 * 0.5 / 1000.0);
    EXPECT_NEAR(run.sample_std, 0.5, 0.005);
}

TEST(shot_sim, single_shot_mean_is_the_sample) {
    ShotRun run = sample_shots({1.0, 2.0}, 0.0, 1, 3);
    ASSERT_EQ(run.samples.size(), 1u);
    EXPECT_EQ(run.sample_mean, run.samples[0]);
    EXPECT_EQ(run.sample_std, 0.0);
    EXPECT_THROW(sample_shots(0.0, 0.0, 0, 1), DomainError);
}

TEST(shot_sim, fig3_run_matches_exact_mean) {
    MziParams p = params(kStrong, 0.0, 1e-2);
    ShotRun run = sample_shots(propagate_mzi(p).alpha_f, optimal_lo_phase(0.0), 10'000, 2024);
    EXPECT_NEAR(run.sample_mean, exact_mean_fig3(), 5 * 0.5 / 100.0);
}

TEST(shot_sim, reproducible_across_thread_counts) {
    ComplexAmplitude af{0.03, -0.02};
    ShotRun a = sample_shots(af, 1.1, 100'003, 99, 1);
    ShotRun b = sample_shots(af, 1.1, 100'003, 99, 4);
    ShotRun c = sample_shots(af, 1.1, 100'003, 99, 7);
    ASSERT_EQ(a.samples.size(), b.samples.size());
    EXPECT_EQ(std::memcmp(a.samples.data(), b.samples.data(), a.samples.size() * sizeof(double)), 0);
    EXPECT_EQ(std::memcmp(a.samples.data(), c.samples.data(), a.samples.size() * sizeof(double)), 0);
    EXPECT_EQ(a.sample_mean, c.sample_mean);
    EXPECT_EQ(a.sample_std, c.sample_std);

    ShotRun other = sample_shots(af, 1.1, 1000, 100, 1);
    EXPECT_NE(other.samples[0], a.samples[0]);
}

TEST(shot_sim, substream_seeds_differ) {
    EXPECT_NE(substream_seed(1, 0), substream_seed(1, 1));
    EXPECT_NE(substream_seed(1, 0), substream_seed(2, 0));
    EXPECT_EQ(substream_seed(5, 9), substream_seed(5, 9));
}

TEST(shot_sim, central_limit_band_and_unbiasedness) {
    MziParams p = params(kStrong, 0.0, 1e-2);
    for (std::uint64_t m : {100u, 1000u}) {
        MonteCarloSummary mc = monte_carlo_sensitivity(p, m, 500, 7);
        double expected_var = 0.25 / static_cast<double>(m);
        EXPECT_GT(mc.variance_of_means, 0.8 * expected_var);
        EXPECT_LT(mc.variance_of_means, 1.2 * expected_var);
        double standard_error = std::sqrt(expected_var / 500.0);
        EXPECT_NEAR(mc.mean_of_means, exact_mean_fig3(), 5 * standard_error);
    }
}

TEST(shot_sim, averaged_stats_examples) {
    QuadratureStats base{0.3, 0.5, 0.6, 0.06160342158521887};
    QuadratureStats one = averaged_stats(1, base);
    EXPECT_EQ(one.mean, base.mean);
    EXPECT_EQ(one.std_dev, base.std_dev);
    EXPECT_EQ(one.snr, base.snr);
    EXPECT_EQ(one.sensitivity, base.sensitivity);

    QuadratureStats four = averaged_stats(4, base);
    EXPECT_EQ(four.std_dev, 0.25);
    EXPECT_EQ(four.mean, base.mean);

    QuadratureStats many = averaged_stats(10'000, base);
    EXPECT_NEAR(many.sensitivity, 6.160342158521887, 1e-12);
    EXPECT_NEAR(many.sensitivity, 6.15, 0.02);
}

TEST(shot_sim, estimate_noiseless_round_trip) {
    MziParams p = params(kStrong, 0.0, 1e-2);
    AmplifiedPhase phase = chi_tilde_exact(p);
    ShotRun run;
    run.m = 1;
    run.sample_mean = phase.alpha_f_mag * std::sin(phase.chi_tilde);
    ChiEstimate est = estimate_chi_from_run(run, phase.alpha_f_mag, kStrong, 0.0);
    EXPECT_FALSE(est.clamped);
    EXPECT_NEAR(est.chi_tilde_hat, phase.chi_tilde, 1e-12);
    EXPECT_NEAR(est.chi_hat, 1e-2, 1e-10);
}

TEST(shot_sim, estimate_clamps_noise_excursions) {
    ShotRun run;
    run.m = 1;
    run.sample_mean = 1.02 * 0.5;
    ChiEstimate est = estimate_chi_from_run(run, 0.5, kStrong, 0.0);
    EXPECT_TRUE(est.clamped);
    EXPECT_EQ(est.chi_tilde_hat, kPi / 2);
    EXPECT_THROW(estimate_chi_from_run(run, 0.0, kStrong, 0.0), ZeroAmplitude);
}

// Spread of chi_hat over seeds against linear error propagation,
// delta chi = (delta chi_tilde / sqrt(m)) / (d chi_tilde / d chi).
// The linearisation only holds once the per-run noise on sin(chi_tilde) is
// small compared with its distance to the arcsin clamp, so the check uses a
// shot count where clamping never occurs (see fig3_estimator_spread below).
static double chi_hat_spread(const MziParams &p, std::uint64_t m, int seeds, std::uint64_t base_seed, bool *any_clamp) {
    AmplifiedPhase phase = chi_tilde_exact(p);
    ComplexAmplitude af = propagate_mzi(p).alpha_f;
    double sum = 0, ss = 0;
    std::vector<double> hats;
    for (int s = 0; s < seeds; ++s) {
        ShotRun run = sample_shots(af, optimal_lo_phase(p.input_phase()), m, substream_seed(base_seed, s));
        ChiEstimate est = estimate_chi_from_run(run, phase.alpha_f_mag, p.theta2, p.gamma);
        *any_clamp = *any_clamp || est.clamped;
        hats.push_back(est.chi_hat);
        sum += est.chi_hat;
    }
    double mean = sum / seeds;
    for (double h : hats) {
        ss += (h - mean) * (h - mean);
    }
    return std::sqrt(ss / (seeds - 1));
}

static double propagated_chi_spread(const MziParams &p, std::uint64_t m) {
    AmplifiedPhase phase = chi_tilde_exact(p);
    double dct = 0.5 / (phase.alpha_f_mag * std::abs(std::cos(phase.chi_tilde))) / std::sqrt(static_cast<double>(m));
    auto fwd = [&](double c) { return oracle::amplified_phase(p.theta2, p.gamma, c); };
    double gain = oracle::central_difference(fwd, p.chi, 1e-7);
    return dct / gain;
}

TEST(shot_sim, estimator_spread_matches_error_propagation) {
    MziParams p = params(kStrong, 0.0, 1e-2);
    bool clamp = false;
    double observed = chi_hat_spread(p, 1'000'000, 200, 41, &clamp);
    EXPECT_FALSE(clamp);
    EXPECT_NEAR(observed / propagated_chi_spread(p, 1'000'000), 1.0, 0.2);
}

TEST(shot_sim, estimator_rms_halves_when_m_quadruples) {
    MziParams p = params(0.7, 0.0, 1e-2, 10'000.0);
    auto rms = [&](std::uint64_t m) {
        ComplexAmplitude af = propagate_mzi(p).alpha_f;
        double mag = std::abs(af);
        double ss = 0;
        for (int s = 0; s < 200; ++s) {
            ShotRun run = sample_shots(af, kPi / 2, m, substream_seed(77, s));
            double err = estimate_chi_from_run(run, mag, p.theta2, 0.0).chi_hat - p.chi;
            ss += err * err;
        }
        return std::sqrt(ss / 200);
    };
    double ratio = rms(1000) / rms(4000);
    EXPECT_NEAR(ratio, 2.0, 0.4);
}

TEST(shot_sim, uncertainty_vs_m_examples) {
    MziParams p = params(kStrong, 0.0, 1e-2);
    std::vector<UncertaintyRow> rows = uncertainty_vs_m(p, {1, 10, 100, 1000, 10000});
    ASSERT_EQ(rows.size(), 5u);
    EXPECT_NEAR(rows[2].uncertainty / rows[0].uncertainty, 0.1, 1e-15);
    for (size_t k = 0; k < rows.size(); ++k) {
        EXPECT_NEAR(rows[k].chi_tilde, 1.0353791794812008, 1e-12);
        EXPECT_NEAR(rows[k].upper - rows[k].chi_tilde, rows[k].uncertainty, 1e-15);
        if (k > 0) {
            EXPECT_LT(rows[k].uncertainty, rows[k - 1].uncertainty);
        }
    }
    // (1/2) / (|alpha_f| |cos chi_tilde|) at M = 1.
    double mag = std::abs(oracle::alpha_f(kStrong, 0.0, 1e-2, 10.0));
    EXPECT_NEAR(rows[0].uncertainty, 0.5 / (mag * std::cos(1.0353791794812008)), 1e-9);

    EXPECT_THROW(uncertainty_vs_m(p, {}), DomainError);
    EXPECT_THROW(uncertainty_vs_m(p, {1, 0}), DomainError);
}
