#ifndef PSA_RUNNER_CONFIG_H
#define PSA_RUNNER_CONFIG_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "psa/homodyne.h"
#include "psa/optics.h"
#include "psa/saturation.h"

namespace psa::runner {

enum class ScanVariable { Theta2, Chi, Gamma, M, N };

const char *scan_variable_name(ScanVariable v);

struct ScanSpec {
    ScanVariable variable = ScanVariable::Theta2;
    std::vector<double> grid;
};

struct ShotConfig {
    std::uint64_t m = 1;
    std::optional<std::uint64_t> seed;
    std::uint64_t runs = 200;
    double pulse_duration = 0.0;
};

enum class OutputFormat { Csv, Json };

struct OutputConfig {
    std::string path;  ///< empty writes to stdout
    OutputFormat format = OutputFormat::Csv;
    int precision = 12;
};

/// Everything a run needs, after defaults and command-line overrides.
struct RunConfig {
    MziParams mzi;
    double photon_number = 0.0;
    double lambda = 0.0;
    LoConfig lo;
    bool has_lo = false;  ///< an "lo" block was given; otherwise lo holds |beta| = 1 at the optimal phase
    std::optional<DetectorParams> detector;
    std::optional<ShotConfig> shots;
    std::optional<ScanSpec> scan;
    std::vector<double> chi_values;  ///< signal phases overlaid in fig2
    std::vector<double> n_values;    ///< input photon numbers overlaid in fig4
    OutputConfig output;
    unsigned threads = 1;
    /// FNV-1a hash of the effective configuration document, as 16 hex digits.
    std::string hash;
};

/// Command-line overrides applied on top of the configuration file.
struct Overrides {
    std::optional<std::string> scan;  ///< "var=v1,v2,..." or "var=start:stop:count"
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::string> format;
    std::optional<unsigned> threads;
};

/// Parses a scan override such as "theta2=0.1,0.2" or "M=1:10000:5" into the
/// JSON scan block it stands for. Throws ConfigError on malformed text.
nlohmann::json parse_scan_override(const std::string &text);

/// Builds the effective configuration. Throws ConfigError on any malformed or
/// inconsistent field.
RunConfig parse_config(nlohmann::json doc, const Overrides &overrides = {});

/// Reads a JSON file and parses it. Throws ConfigError if unreadable.
RunConfig load_config(const std::string &path, const Overrides &overrides = {});

/// 200 uniform points on [0.05, pi/4 - 1e-4].
std::vector<double> default_theta2_grid();

std::string fnv1a_hex(const std::string &bytes);

}  // namespace psa::runner

#endif
