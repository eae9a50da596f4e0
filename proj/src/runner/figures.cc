#include "psa/runner/figures.h"

#include <cmath>
#include <numbers>

#include "psa/amplification.h"
#include "psa/errors.h"
#include "psa/homodyne.h"
#include "psa/parallel.h"
#include "psa/saturation.h"
#include "psa/shot_sim.h"

namespace psa::runner {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;
const NotAvailable kNA{};

Cell integral_or_real(double x) {
    if (x == std::floor(x) && std::abs(x) < 9e15) {
        return static_cast<std::int64_t>(x);
    }
    return x;
}

std::vector<double> theta2_grid(const RunConfig &cfg, const char *command) {
    if (!cfg.scan) {
        return default_theta2_grid();
    }
    if (cfg.scan->variable != ScanVariable::Theta2) {
        throw ConfigError(std::string(command) + " scans theta2, not " + scan_variable_name(cfg.scan->variable));
    }
    for (double t : cfg.scan->grid) {
        if (t < 0.0 || t > kPi / 2) {
            throw ConfigError("theta2 grid values must lie in [0, pi/2]");
        }
    }
    return cfg.scan->grid;
}

MziParams with_photon_number(MziParams p, double n, double lambda) {
    p.alpha = coherent_amplitude(n, lambda);
    return p;
}

}  // namespace

Table run_fig2(const RunConfig &cfg) {
    std::vector<double> grid = theta2_grid(cfg, "fig2");
    Table t;
    t.command = "fig2";
    t.columns = {"chi", "theta2", "chi_tilde_aav", "chi_tilde_exact", "a_w_re", "a_w_im", "alpha_f_intensity"};
    t.key_columns = 2;
    const std::size_t per_chi = grid.size();
    t.rows.resize(cfg.chi_values.size() * per_chi);

    parallel_for(t.rows.size(), cfg.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            MziParams p = cfg.mzi;
            p.chi = cfg.chi_values[k / per_chi];
            p.theta2 = grid[k % per_chi];
            std::vector<Cell> row{p.chi, p.theta2, kNA, kNA, kNA, kNA, kNA};
            try {
                AmplifiedPhase a = chi_tilde_aav(p.chi, p.theta2, p.gamma, p.photon_number());
                WeakValue w = weak_value(p.theta2, p.gamma);
                row[2] = a.chi_tilde;
                row[4] = w.a_w.real();
                row[5] = w.a_w.imag();
            } catch (const DarkPointSingularity &) {
            }
            try {
                row[3] = chi_tilde_exact(p).chi_tilde;
            } catch (const ZeroAmplitude &) {
            }
            row[6] = intensity(propagate_mzi(p).alpha_f);
            t.rows[k] = std::move(row);
        }
    });
    return t;
}

Table run_fig3(const RunConfig &cfg) {
    std::vector<std::uint64_t> m_grid;
    if (!cfg.scan) {
        m_grid = {1, 10, 100, 1000, 10000};
    } else if (cfg.scan->variable != ScanVariable::M) {
        throw ConfigError(std::string("fig3 scans M, not ") + scan_variable_name(cfg.scan->variable));
    } else {
        for (double m : cfg.scan->grid) {
            m_grid.push_back(static_cast<std::uint64_t>(m));
        }
    }
    bool monte_carlo = cfg.shots.has_value();
    if (monte_carlo && !cfg.shots->seed) {
        throw ConfigError("fig3 Monte-Carlo columns need shots.seed (or --seed)");
    }

    Table t;
    t.command = "fig3";
    t.columns = {"M", "sensitivity_analytic", "sensitivity_mc", "variance_mc", "chi_tilde", "chi_tilde_lower",
                 "chi_tilde_upper"};
    t.key_columns = 1;
    t.rows.resize(m_grid.size());

    std::optional<QuadratureStats> base;
    std::vector<UncertaintyRow> bands;
    try {
        base = quadrature_stats_exact(cfg.mzi);
        bands = uncertainty_vs_m(cfg.mzi, m_grid);
    } catch (const ZeroAmplitude &) {
        base.reset();
    }

    parallel_for(t.rows.size(), cfg.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            std::uint64_t m = m_grid[k];
            std::vector<Cell> row{static_cast<std::int64_t>(m), kNA, kNA, kNA, kNA, kNA, kNA};
            if (base) {
                row[1] = averaged_stats(m, *base).sensitivity;
                if (monte_carlo) {
                    MonteCarloSummary mc =
                        monte_carlo_sensitivity(cfg.mzi, m, cfg.shots->runs, substream_seed(*cfg.shots->seed, m));
                    row[2] = mc.sensitivity;
                    row[3] = mc.variance_of_means;
                }
                row[4] = bands[k].chi_tilde;
                row[5] = bands[k].lower;
                row[6] = bands[k].upper;
            }
            t.rows[k] = std::move(row);
        }
    });
    return t;
}

Table run_fig4(const RunConfig &cfg) {
    if (!cfg.detector) {
        throw ConfigError("fig4 needs a detector block (k_max, n_sat)");
    }
    if (!cfg.has_lo) {
        throw ConfigError("fig4 needs an lo block (beta_mag or beta_mag2)");
    }
    std::vector<double> grid = theta2_grid(cfg, "fig4");
    Table t;
    t.command = "fig4";
    t.columns = {"N", "theta2", "n1", "n2", "x_linear", "x_saturated", "chi_tilde", "chi_tilde_biased", "eta_e"};
    t.key_columns = 2;
    const std::size_t per_n = grid.size();
    t.rows.resize(cfg.n_values.size() * per_n);

    parallel_for(t.rows.size(), cfg.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            double n = cfg.n_values[k / per_n];
            MziParams p = with_photon_number(cfg.mzi, n, cfg.lambda);
            p.theta2 = grid[k % per_n];
            std::vector<Cell> row{integral_or_real(n), p.theta2, kNA, kNA, kNA, kNA, kNA, kNA, kNA};
            try {
                // A postselection orthogonal to the preselection has no amplification to assess.
                weak_value(p.theta2, p.gamma);
                SaturationReport r = error_ratio(p, cfg.lo, *cfg.detector);
                row[2] = r.n1;
                row[3] = r.n2;
                row[4] = r.x_linear;
                row[5] = r.x_saturated;
                row[6] = r.chi_tilde;
                row[7] = r.chi_tilde_biased;
                row[8] = r.eta_e;
            } catch (const DarkPointSingularity &) {
            } catch (const ZeroSignal &) {
            } catch (const ZeroAmplitude &) {
            }
            t.rows[k] = std::move(row);
        }
    });
    return t;
}

json run_single(const RunConfig &cfg) {
    if (cfg.scan) {
        throw ConfigError("single does not take a scan block");
    }
    const int prec = cfg.output.precision;
    auto num = [prec](double x) -> json { return std::isfinite(x) ? json(rounded(x, prec)) : json(kSentinel); };
    auto complex_json = [&](std::complex<double> z) { return json{{"re", num(z.real())}, {"im", num(z.imag())}}; };
    const MziParams &p = cfg.mzi;

    json rec;
    rec["command"] = "single";
    rec["config_hash"] = cfg.hash;
    rec["inputs"] = {{"theta1", num(p.theta1)}, {"theta2", num(p.theta2)}, {"gamma", num(p.gamma)},
                     {"chi", num(p.chi)},       {"n", num(cfg.photon_number)}, {"lambda", num(cfg.lambda)}};

    PortFields out = propagate_mzi(p);
    rec["alpha_f"] = complex_json(out.alpha_f);
    rec["alpha_fbar"] = complex_json(out.alpha_fbar);
    rec["alpha_f_intensity"] = num(intensity(out.alpha_f));
    rec["intensity_difference"] = num(intensity_difference(p));
    rec["quadrature_mean"] = num(quadrature_mean(out.alpha_f, cfg.lo.effective_phase()));

    rec["weak_value"] = kSentinel;
    rec["chi_tilde_aav"] = kSentinel;
    rec["imaginary_weak_value"] = kSentinel;
    rec["sensitivity_aav"] = kSentinel;
    try {
        WeakValue w = weak_value(p.theta2, p.gamma);
        AmplifiedPhase a = chi_tilde_aav(p.chi, p.theta2, p.gamma, p.photon_number());
        rec["weak_value"] = complex_json(w.a_w);
        rec["chi_tilde_aav"] = num(a.chi_tilde);
        rec["imaginary_weak_value"] = a.imaginary_weak_value;
        if (p.gamma == 0.0) {
            rec["sensitivity_aav"] = num(quadrature_stats_aav(p).sensitivity);
        }
    } catch (const DarkPointSingularity &) {
    }

    rec["chi_tilde_exact"] = kSentinel;
    rec["alpha_f_mag"] = num(std::abs(out.alpha_f));
    rec["snr"] = kSentinel;
    rec["sensitivity_exact"] = kSentinel;
    std::optional<QuadratureStats> exact;
    try {
        AmplifiedPhase b = chi_tilde_exact(p);
        exact = quadrature_stats_exact(p);
        rec["chi_tilde_exact"] = num(b.chi_tilde);
        rec["alpha_f_mag"] = num(b.alpha_f_mag);
        rec["snr"] = num(exact->snr);
        rec["sensitivity_exact"] = num(exact->sensitivity);
    } catch (const ZeroAmplitude &) {
    }

    if (cfg.shots) {
        json avg;
        avg["m"] = cfg.shots->m;
        avg["integration_time"] = num(static_cast<double>(cfg.shots->m) * cfg.shots->pulse_duration);
        if (exact) {
            QuadratureStats s = averaged_stats(cfg.shots->m, *exact);
            avg["std_dev"] = num(s.std_dev);
            avg["snr"] = num(s.snr);
            avg["sensitivity"] = num(s.sensitivity);
        } else {
            avg["std_dev"] = num(kCoherentQuadratureStd / std::sqrt(static_cast<double>(cfg.shots->m)));
            avg["snr"] = kSentinel;
            avg["sensitivity"] = kSentinel;
        }
        rec["averaged"] = avg;
    }

    if (cfg.detector) {
        json sat = kSentinel;
        try {
            SaturationReport r = error_ratio(p, cfg.lo, *cfg.detector);
            sat = {{"n1", num(r.n1)},
                   {"n2", num(r.n2)},
                   {"x_linear", num(r.x_linear)},
                   {"x_saturated", num(r.x_saturated)},
                   {"chi_tilde", num(r.chi_tilde)},
                   {"chi_tilde_biased", num(r.chi_tilde_biased)},
                   {"eta_e", num(r.eta_e)},
                   {"clamped", r.clamped}};
        } catch (const ZeroSignal &) {
        } catch (const ZeroAmplitude &) {
        }
        rec["saturation"] = sat;
    }
    return rec;
}

bool record_is_sentinel_only(const json &record) {
    return record.value("chi_tilde_aav", json()) == kSentinel && record.value("chi_tilde_exact", json()) == kSentinel;
}

namespace {

void compare(const json &actual, const json &expected, const std::string &path, std::vector<std::string> &diffs) {
    if (expected.is_number() && actual.is_number()) {
        double a = actual.get<double>();
        double e = expected.get<double>();
        if (std::abs(a - e) > std::max(1e-12, 1e-9 * std::abs(e))) {
            diffs.push_back(path + ": expected " + expected.dump() + ", got " + actual.dump());
        }
        return;
    }
    if (expected.is_object() && actual.is_object()) {
        for (const auto &item : expected.items()) {
            std::string sub = path.empty() ? item.key() : path + "." + item.key();
            if (!actual.contains(item.key())) {
                diffs.push_back(sub + ": missing");
            } else {
                compare(actual.at(item.key()), item.value(), sub, diffs);
            }
        }
        for (const auto &item : actual.items()) {
            if (!expected.contains(item.key())) {
                diffs.push_back((path.empty() ? item.key() : path + "." + item.key()) + ": unexpected");
            }
        }
        return;
    }
    if (expected.is_array() && actual.is_array() && expected.size() == actual.size()) {
        for (std::size_t k = 0; k < expected.size(); ++k) {
            compare(actual[k], expected[k], path + "[" + std::to_string(k) + "]", diffs);
        }
        return;
    }
    if (actual != expected) {
        diffs.push_back(path + ": expected " + expected.dump() + ", got " + actual.dump());
    }
}

}  // namespace

std::vector<std::string> self_check(const json &actual, const json &expected) {
    std::vector<std::string> diffs;
    compare(actual, expected, "", diffs);
    return diffs;
}

}  // namespace psa::runner
