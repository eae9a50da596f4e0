#include "psa/amplification.h"

#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"
#include "psa/errors.h"

using namespace psa;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kStrong = kPi / 4 - 0.003;

// Frozen from the independent oracle cos(t)/(cos(t) - sin(t)) at t = pi/4 - 0.003.
constexpr double kWeakValueStrong = 167.16616666636395;
// Frozen from arg(alpha_f) evaluated by direct complex arithmetic at t = pi/4 - 0.003, gamma = 0.
constexpr double kChiTildeBAt1em2 = 1.0353791794812008;
constexpr double kChiTildeBAt1em4 = 0.016715073741680176;

MziParams params(double theta2, double gamma, double chi, double n = 100.0, double lambda = 0.0) {
    MziParams p;
    p.theta2 = theta2;
    p.gamma = gamma;
    p.chi = chi;
    p.alpha = coherent_amplitude(n, lambda);
    return p;
}
}  // namespace

TEST(amplification, weak_value_examples) {
    WeakValue unit = weak_value(0.0, 0.0);
    EXPECT_DOUBLE_EQ(unit.a_w.real(), 1.0);
    EXPECT_DOUBLE_EQ(unit.a_w.imag(), 0.0);

    double t = kStrong;
    double brute = std::cos(t) / (std::cos(t) - std::sin(t));
    EXPECT_NEAR(brute, kWeakValueStrong, 1e-9);
    WeakValue strong = weak_value(t, 0.0);
    EXPECT_NEAR(strong.a_w.real(), kWeakValueStrong, 1e-9);
    EXPECT_NEAR(strong.a_w.real(), 1 / (2 * 0.003) + 0.5, 0.01);

    EXPECT_THROW(weak_value(kPi / 4, 0.0), DarkPointSingularity);
}

TEST(amplification, weak_value_matches_two_level_oracle) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> theta(0.0, kPi / 2);
    std::uniform_real_distribution<double> phase(-kPi, kPi);
    for (int k = 0; k < 1000; ++k) {
        double t = theta(rng);
        double g = phase(rng);
        WeakValue w = weak_value(t, g);
        std::complex<double> ref = oracle::weak_value(t, g);
        double scale = std::max(1.0, std::abs(ref));
        EXPECT_NEAR(w.a_w.real(), ref.real(), 1e-12 * scale);
        EXPECT_NEAR(w.a_w.imag(), ref.imag(), 1e-12 * scale);
        std::complex<double> back = w.a_w * w.overlap;
        EXPECT_NEAR(back.real(), w.c1.real(), 1e-12);
        EXPECT_NEAR(back.imag(), w.c1.imag(), 1e-12);
    }
    for (double t : {0.1, 0.5, 0.78, 0.9, 1.4}) {
        EXPECT_EQ(weak_value(t, 0.0).a_w.imag(), 0.0);
    }
}

TEST(amplification, chi_tilde_aav_examples) {
    AmplifiedPhase a = chi_tilde_aav(1e-4, kStrong, 0.0);
    EXPECT_EQ(a.mode, PhaseMode::AAV);
    EXPECT_NEAR(a.chi_tilde, kWeakValueStrong * 1e-4, 1e-12);
    EXPECT_NEAR(a.chi_tilde, 1.6717e-2, 1e-6);
    EXPECT_FALSE(a.imaginary_weak_value);

    for (double chi : {-0.3, 1e-5, 0.2}) {
        EXPECT_DOUBLE_EQ(chi_tilde_aav(chi, 0.0, 0.0).chi_tilde, chi);
    }

    // Phase-shifter modulation at a balanced second splitter: c1 + c2 ~ -i gamma / 2.
    double gamma = 0.01;
    WeakValue w = weak_value(kPi / 4, gamma);
    EXPECT_NEAR(w.overlap.imag(), -gamma / 2, 1e-5);
    EXPECT_NEAR(w.overlap.real(), 0.0, 1e-4);
    EXPECT_TRUE(chi_tilde_aav(1e-2, kPi / 4, gamma).imaginary_weak_value);

    EXPECT_NEAR(chi_tilde_aav(1e-3, 0.5, 0.0, 400.0).alpha_f_mag,
                std::abs(oracle::alpha_f(0.5, 0.0, 0.0, 20.0)), 1e-12);
    EXPECT_THROW(chi_tilde_aav(1e-3, kPi / 4, 0.0), DarkPointSingularity);
}

TEST(amplification, chi_tilde_exact_examples) {
    double oracle_phase = oracle::amplified_phase(kStrong, 0.0, 1e-2);
    EXPECT_NEAR(oracle_phase, kChiTildeBAt1em2, 1e-12);

    AmplifiedPhase b = chi_tilde_exact(params(kStrong, 0.0, 1e-2));
    EXPECT_EQ(b.mode, PhaseMode::EXACT);
    EXPECT_NEAR(b.chi_tilde, oracle_phase, 1e-10);
    EXPECT_NEAR(b.chi_tilde, 1.0355, 1e-3);
    EXPECT_GT(b.chi_tilde / 1e-2, 95.0);
    EXPECT_LT(b.chi_tilde / 1e-2, 110.0);

    for (double t : {0.0, 0.3, 0.7, 1.2}) {
        EXPECT_EQ(chi_tilde_exact(params(t, 0.0, 0.0)).chi_tilde, t < kPi / 4 ? 0.0 : kPi);
    }

    AmplifiedPhase small_b = chi_tilde_exact(params(kStrong, 0.0, 1e-4));
    AmplifiedPhase small_a = chi_tilde_aav(1e-4, kStrong, 0.0);
    EXPECT_NEAR(small_b.chi_tilde, kChiTildeBAt1em4, 1e-14);
    EXPECT_LT(std::abs(small_b.chi_tilde - small_a.chi_tilde) / small_a.chi_tilde, 2e-4);

    EXPECT_THROW(chi_tilde_exact(params(kPi / 4, 0.0, 0.0)), ZeroAmplitude);
}

TEST(amplification, phase_and_magnitude_identities) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> theta(0.0, kPi / 2);
    std::uniform_real_distribution<double> phase(-kPi, kPi);
    std::uniform_real_distribution<double> photons(1.0, 1e4);
    for (int k = 0; k < 1000; ++k) {
        MziParams p = params(theta(rng), phase(rng), phase(rng), photons(rng), phase(rng));
        AmplifiedPhase b = chi_tilde_exact(p);
        std::complex<double> af = oracle::alpha_f(p.theta2, p.gamma, p.chi, p.alpha);
        double diff = std::remainder(b.chi_tilde - (std::arg(af) - std::arg(p.alpha)), 2 * kPi);
        EXPECT_NEAR(diff, 0.0, 1e-12);
        EXPECT_NEAR(b.alpha_f_mag, std::abs(af), 1e-12 * std::max(1.0, std::abs(af)));
        EXPECT_GT(b.chi_tilde, -kPi);
        EXPECT_LE(b.chi_tilde, kPi);
    }
}

TEST(amplification, unbalanced_first_splitter_uses_propagation) {
    MziParams p = params(0.6, 0.05, 0.02, 50.0, 0.4);
    p.theta1 = 0.5;
    auto ref = oracle::mzi_outputs(p.theta1, p.theta2, p.gamma, p.chi, p.alpha);
    AmplifiedPhase b = chi_tilde_exact(p);
    EXPECT_NEAR(b.alpha_f_mag, std::abs(ref[0]), 1e-12);
    EXPECT_NEAR(std::remainder(b.chi_tilde - (std::arg(ref[0]) - 0.4), 2 * kPi), 0.0, 1e-12);
}

// For a real weak value the second-order terms of arg(1 + A_w (e^{i chi} - 1))
// cancel, so the relative gap between the two phases falls off as chi^2.
TEST(amplification, aav_gap_vanishes_as_chi_squared) {
    double t = 0.6;
    std::vector<double> xs;
    std::vector<double> ys;
    for (double chi : {1e-6, 1e-5, 1e-4, 1e-3, 1e-2}) {
        double a = chi_tilde_aav(chi, t, 0.0).chi_tilde;
        double b = chi_tilde_exact_phase(chi, t, 0.0);
        xs.push_back(std::log10(chi));
        ys.push_back(std::log10(std::abs(b - a) / a));
    }
    double mx = 0, my = 0;
    for (size_t k = 0; k < xs.size(); ++k) {
        mx += xs[k];
        my += ys[k];
    }
    mx /= xs.size();
    my /= ys.size();
    double sxy = 0, sxx = 0;
    for (size_t k = 0; k < xs.size(); ++k) {
        sxy += (xs[k] - mx) * (ys[k] - my);
        sxx += (xs[k] - mx) * (xs[k] - mx);
    }
    EXPECT_NEAR(sxy / sxx, 2.0, 0.1);
}

TEST(amplification, exact_phase_continuous_on_each_side_of_dark_point) {
    double chi = 1e-2;
    double dark = std::atan(std::cos(chi));  // cos(chi) cos(t) = sin(t)
    const double step = 1e-5;
    auto check = [&](double lo, double hi) {
        double prev = chi_tilde_exact_phase(chi, lo, 0.0);
        for (double t = lo + step; t <= hi; t += step) {
            double cur = chi_tilde_exact_phase(chi, t, 0.0);
            EXPECT_LT(std::abs(cur - prev), 1e-2) << "t=" << t;
            prev = cur;
        }
    };
    check(0.0, dark - 1e-4);
    check(dark + 1e-4, kPi / 2 - 1e-3);
}

TEST(amplification, invert_chi_examples) {
    double fwd = chi_tilde_exact_phase(1e-2, kStrong, 0.0);
    EXPECT_NEAR(invert_chi(fwd, kStrong, 0.0), 1e-2, 1e-10);

    EXPECT_EQ(invert_chi(0.0, kStrong, 0.0), 0.0);
    EXPECT_EQ(invert_chi(0.0, 0.3, 0.0), 0.0);

    double fwd2 = chi_tilde_exact_phase(1e-4, 0.7, 0.05);
    EXPECT_NEAR(fwd2, oracle::amplified_phase(0.7, 0.05, 1e-4), 1e-14);
    EXPECT_NEAR(invert_chi(fwd2, 0.7, 0.05), 1e-4, 1e-10);

    // Past the balanced point the port-3 phase stays near pi and never reaches 0.
    EXPECT_THROW(invert_chi(0.0, 1.0, 0.0), NoRoot);
}

TEST(amplification, invert_chi_round_trip_random) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> chi_dist(-0.3, 0.3);
    std::uniform_real_distribution<double> theta(0.05, kPi / 4 - 1e-3);
    std::uniform_real_distribution<double> gamma(-0.05, 0.05);
    for (int k = 0; k < 300; ++k) {
        double chi = chi_dist(rng);
        double t = theta(rng);
        double g = gamma(rng);
        double fwd = chi_tilde_exact(params(t, g, chi)).chi_tilde;
        EXPECT_NEAR(invert_chi(fwd, t, g), chi, 1e-10);
    }
}
