#include "psa/runner/config.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <numbers>
#include <sstream>

#include "psa/errors.h"

namespace psa::runner {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

void reject_unknown_keys(const json &obj, const char *where, std::initializer_list<const char *> allowed) {
    if (!obj.is_object()) {
        throw ConfigError(std::string(where) + " must be a JSON object");
    }
    for (const auto &item : obj.items()) {
        bool ok = false;
        for (const char *a : allowed) {
            ok = ok || item.key() == a;
        }
        if (!ok) {
            throw ConfigError("unknown key '" + item.key() + "' in " + where);
        }
    }
}

double number_or(const json &obj, const char *key, double fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const json &v = obj.at(key);
    if (!v.is_number()) {
        throw ConfigError(std::string("'") + key + "' must be a number");
    }
    double x = v.get<double>();
    if (!std::isfinite(x)) {
        throw ConfigError(std::string("'") + key + "' must be finite");
    }
    return x;
}

std::uint64_t unsigned_or(const json &obj, const char *key, std::uint64_t fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const json &v = obj.at(key);
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
        throw ConfigError(std::string("'") + key + "' must be a non-negative integer");
    }
    return v.get<std::uint64_t>();
}

std::vector<double> number_list(const json &v, const char *what) {
    if (!v.is_array() || v.empty()) {
        throw ConfigError(std::string(what) + " must be a non-empty array of numbers");
    }
    std::vector<double> out;
    for (const json &x : v) {
        if (!x.is_number() || !std::isfinite(x.get<double>())) {
            throw ConfigError(std::string(what) + " must contain finite numbers only");
        }
        out.push_back(x.get<double>());
    }
    return out;
}

std::vector<double> linspace(double start, double stop, std::uint64_t count) {
    if (count == 0) {
        throw ConfigError("range count must be at least 1");
    }
    std::vector<double> out(count);
    for (std::uint64_t k = 0; k < count; ++k) {
        out[k] = count == 1 ? start : start + (stop - start) * static_cast<double>(k) / static_cast<double>(count - 1);
    }
    return out;
}

ScanVariable parse_variable(const std::string &name) {
    if (name == "theta2") return ScanVariable::Theta2;
    if (name == "chi") return ScanVariable::Chi;
    if (name == "gamma") return ScanVariable::Gamma;
    if (name == "M") return ScanVariable::M;
    if (name == "N") return ScanVariable::N;
    throw ConfigError("scan variable must be one of theta2, chi, gamma, M, N; got '" + name + "'");
}

ScanSpec parse_scan(const json &block) {
    reject_unknown_keys(block, "scan", {"variable", "grid", "range"});
    if (!block.contains("variable") || !block.at("variable").is_string()) {
        throw ConfigError("scan.variable is required");
    }
    ScanSpec scan;
    scan.variable = parse_variable(block.at("variable").get<std::string>());
    if (block.contains("grid") == block.contains("range")) {
        throw ConfigError("scan needs exactly one of 'grid' or 'range'");
    }
    if (block.contains("grid")) {
        scan.grid = number_list(block.at("grid"), "scan.grid");
    } else {
        const json &r = block.at("range");
        reject_unknown_keys(r, "scan.range", {"start", "stop", "count"});
        if (!r.contains("start") || !r.contains("stop") || !r.contains("count")) {
            throw ConfigError("scan.range needs start, stop and count");
        }
        scan.grid = linspace(number_or(r, "start", 0), number_or(r, "stop", 0), unsigned_or(r, "count", 0));
    }
    if (scan.grid.size() > 1) {
        bool increasing = scan.grid[1] > scan.grid[0];
        for (size_t k = 1; k < scan.grid.size(); ++k) {
            bool step_up = scan.grid[k] > scan.grid[k - 1];
            bool step_down = scan.grid[k] < scan.grid[k - 1];
            if (increasing ? !step_up : !step_down) {
                throw ConfigError("scan.grid must be strictly monotone");
            }
        }
    }
    if (scan.variable == ScanVariable::M || scan.variable == ScanVariable::N) {
        for (double x : scan.grid) {
            bool integral = x == std::floor(x);
            bool ok = scan.variable == ScanVariable::M ? (integral && x >= 1) : x >= 0;
            if (!ok) {
                throw ConfigError(std::string("scan over ") + scan_variable_name(scan.variable) +
                                  " needs " + (scan.variable == ScanVariable::M ? "integers >= 1" : "values >= 0"));
            }
        }
    }
    return scan;
}

std::string trim(const std::string &s) {
    size_t b = s.find_first_not_of(" \t");
    size_t e = s.find_last_not_of(" \t");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

double parse_double(const std::string &text) {
    std::string t = trim(text);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
        throw ConfigError("cannot parse number '" + text + "'");
    }
    return v;
}

}  // namespace

const char *scan_variable_name(ScanVariable v) {
    switch (v) {
        case ScanVariable::Theta2: return "theta2";
        case ScanVariable::Chi: return "chi";
        case ScanVariable::Gamma: return "gamma";
        case ScanVariable::M: return "M";
        case ScanVariable::N: return "N";
    }
    return "?";
}

std::vector<double> default_theta2_grid() {
    return linspace(0.05, kPi / 4 - 1e-4, 200);
}

std::string fnv1a_hex(const std::string &bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json parse_scan_override(const std::string &text) {
    size_t eq = text.find('=');
    if (eq == std::string::npos) {
        throw ConfigError("--scan expects var=values, got '" + text + "'");
    }
    json block;
    block["variable"] = trim(text.substr(0, eq));
    std::string values = text.substr(eq + 1);
    if (values.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(values);
        for (std::string item; std::getline(ss, item, ':');) {
            parts.push_back(item);
        }
        if (parts.size() != 3) {
            throw ConfigError("--scan range must be start:stop:count");
        }
        double count = parse_double(parts[2]);
        if (count < 1 || count != std::floor(count)) {
            throw ConfigError("--scan range count must be a positive integer");
        }
        block["range"] = {{"start", parse_double(parts[0])},
                          {"stop", parse_double(parts[1])},
                          {"count", static_cast<std::uint64_t>(count)}};
    } else {
        json grid = json::array();
        std::stringstream ss(values);
        for (std::string item; std::getline(ss, item, ',');) {
            grid.push_back(parse_double(item));
        }
        block["grid"] = grid;
    }
    return block;
}

RunConfig parse_config(json doc, const Overrides &overrides) {
    if (doc.is_null()) {
        doc = json::object();
    }
    if (overrides.scan) doc["scan"] = parse_scan_override(*overrides.scan);
    if (overrides.seed) doc["shots"]["seed"] = *overrides.seed;
    if (overrides.out) doc["output"]["path"] = *overrides.out;
    if (overrides.format) doc["output"]["format"] = *overrides.format;
    if (overrides.threads) doc["threads"] = *overrides.threads;

    reject_unknown_keys(doc, "config", {"mzi", "lo", "detector", "shots", "scan", "fig2", "fig4", "output", "threads"});

    RunConfig cfg;
    try {
        // Output location and thread count do not change the numbers, so they stay out of the hash.
        json hashed = doc;
        hashed.erase("threads");
        if (hashed.contains("output")) {
            hashed["output"].erase("path");
            if (hashed["output"].empty()) {
                hashed.erase("output");
            }
        }
        cfg.hash = fnv1a_hex(hashed.dump());

        if (!doc.contains("mzi")) {
            throw ConfigError("an 'mzi' block with at least 'n' is required");
        }
        const json &mzi = doc.at("mzi");
        reject_unknown_keys(mzi, "mzi", {"theta1", "theta2", "gamma", "chi", "n", "lambda"});
        if (!mzi.contains("n")) {
            throw ConfigError("mzi.n (input photon number) is required");
        }
        cfg.photon_number = number_or(mzi, "n", 0.0);
        if (cfg.photon_number < 0) {
            throw ConfigError("mzi.n must be non-negative");
        }
        cfg.lambda = number_or(mzi, "lambda", 0.0);
        cfg.mzi.theta1 = number_or(mzi, "theta1", kPi / 4);
        cfg.mzi.theta2 = number_or(mzi, "theta2", 0.0);
        cfg.mzi.gamma = number_or(mzi, "gamma", 0.0);
        cfg.mzi.chi = number_or(mzi, "chi", 0.0);
        cfg.mzi.alpha = coherent_amplitude(cfg.photon_number, cfg.lambda);
        cfg.mzi.validate();

        cfg.lo = LoConfig{1.0, kPi / 2 + cfg.lambda, 0.0};
        if (doc.contains("lo")) {
            const json &lo = doc.at("lo");
            reject_unknown_keys(lo, "lo", {"beta_mag", "beta_mag2", "xi", "delta"});
            if (lo.contains("beta_mag") == lo.contains("beta_mag2")) {
                throw ConfigError("lo needs exactly one of beta_mag or beta_mag2");
            }
            cfg.lo.beta_mag = lo.contains("beta_mag") ? number_or(lo, "beta_mag", 1.0)
                                                      : std::sqrt(std::max(0.0, number_or(lo, "beta_mag2", 1.0)));
            cfg.lo.xi = number_or(lo, "xi", kPi / 2 + cfg.lambda);
            cfg.lo.delta = number_or(lo, "delta", 0.0);
            cfg.lo.validate();
            cfg.has_lo = true;
        }

        if (doc.contains("detector")) {
            const json &det = doc.at("detector");
            reject_unknown_keys(det, "detector", {"k_max", "n_sat"});
            if (!det.contains("k_max") || !det.contains("n_sat")) {
                throw ConfigError("detector needs k_max and n_sat");
            }
            DetectorParams d{number_or(det, "k_max", 0), number_or(det, "n_sat", 0)};
            d.validate();
            cfg.detector = d;
        }

        if (doc.contains("shots")) {
            const json &sh = doc.at("shots");
            reject_unknown_keys(sh, "shots", {"m", "seed", "runs", "pulse_duration"});
            ShotConfig s;
            s.m = unsigned_or(sh, "m", 1);
            if (sh.contains("seed")) {
                s.seed = unsigned_or(sh, "seed", 0);
            }
            s.runs = unsigned_or(sh, "runs", 200);
            s.pulse_duration = number_or(sh, "pulse_duration", 0.0);
            if (s.m < 1 || s.runs < 2) {
                throw ConfigError("shots.m must be >= 1 and shots.runs >= 2");
            }
            cfg.shots = s;
        }

        if (doc.contains("scan")) {
            cfg.scan = parse_scan(doc.at("scan"));
        }

        cfg.chi_values = {1e-4, 1e-2};
        if (doc.contains("fig2")) {
            reject_unknown_keys(doc.at("fig2"), "fig2", {"chi_values"});
            if (doc.at("fig2").contains("chi_values")) {
                cfg.chi_values = number_list(doc.at("fig2").at("chi_values"), "fig2.chi_values");
            }
        }
        cfg.n_values = {100, 500, 1000, 2000};
        if (doc.contains("fig4")) {
            reject_unknown_keys(doc.at("fig4"), "fig4", {"n_values"});
            if (doc.at("fig4").contains("n_values")) {
                cfg.n_values = number_list(doc.at("fig4").at("n_values"), "fig4.n_values");
                for (double n : cfg.n_values) {
                    if (n < 0) {
                        throw ConfigError("fig4.n_values must be non-negative");
                    }
                }
            }
        }

        if (doc.contains("output")) {
            const json &out = doc.at("output");
            reject_unknown_keys(out, "output", {"path", "format", "precision"});
            if (out.contains("path")) {
                if (!out.at("path").is_string()) {
                    throw ConfigError("output.path must be a string");
                }
                cfg.output.path = out.at("path").get<std::string>();
            }
            if (out.contains("format")) {
                std::string f = out.at("format").is_string() ? out.at("format").get<std::string>() : "";
                if (f == "csv") {
                    cfg.output.format = OutputFormat::Csv;
                } else if (f == "json") {
                    cfg.output.format = OutputFormat::Json;
                } else {
                    throw ConfigError("output.format must be 'csv' or 'json'");
                }
            }
            std::uint64_t p = unsigned_or(out, "precision", 12);
            if (p < 1 || p > 17) {
                throw ConfigError("output.precision must be between 1 and 17");
            }
            cfg.output.precision = static_cast<int>(p);
        }

        std::uint64_t threads = unsigned_or(doc, "threads", 1);
        if (threads > 1024) {
            throw ConfigError("threads must be at most 1024");
        }
        cfg.threads = static_cast<unsigned>(threads);
    } catch (const ConfigError &) {
        throw;
    } catch (const Error &e) {
        throw ConfigError(e.what());
    } catch (const json::exception &e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

RunConfig load_config(const std::string &path, const Overrides &overrides) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error &e) {
        throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_config(std::move(doc), overrides);
}

}  // namespace psa::runner
