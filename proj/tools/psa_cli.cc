// Command-line front end: fig2 | fig3 | fig4 | single.
//
// Exit codes: 0 success, 1 numerical failure or self-check mismatch,
// 2 configuration error, 3 output consists of sentinels only.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "psa/errors.h"
#include "psa/runner/config.h"
#include "psa/runner/figures.h"
#include "psa/runner/table.h"

namespace {

using namespace psa::runner;

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitSentinel = 3;

struct Options {
    std::string config;
    std::string scan;
    std::uint64_t seed = 0;
    std::string out;
    std::string format;
    unsigned threads = 0;
    std::string self_check;
};

void add_options(CLI::App *cmd, Options &opt) {
    cmd->add_option("--config", opt.config, "JSON run configuration")->check(CLI::ExistingFile);
    cmd->add_option("--scan", opt.scan, "scan override: var=v1,v2,... or var=start:stop:count");
    cmd->add_option("--seed", opt.seed, "Monte-Carlo seed");
    cmd->add_option("--out", opt.out, "output file (default: stdout)");
    cmd->add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--threads", opt.threads, "worker threads for scan points (0 = all cores)");
    cmd->add_option("--self-check", opt.self_check, "compare the result against an expected JSON file")
        ->check(CLI::ExistingFile);
}

Overrides overrides_from(const CLI::App *cmd, const Options &opt) {
    Overrides o;
    if (cmd->count("--scan")) o.scan = opt.scan;
    if (cmd->count("--seed")) o.seed = opt.seed;
    if (cmd->count("--out")) o.out = opt.out;
    if (cmd->count("--format")) o.format = opt.format;
    if (cmd->count("--threads")) o.threads = opt.threads;
    return o;
}

void emit(const std::string &text, const std::string &path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw psa::ConfigError("cannot write output file '" + path + "'");
    }
    f << text;
}

nlohmann::json read_json(const std::string &path) {
    std::ifstream in(path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception &e) {
        throw psa::ConfigError("expected-values file '" + path + "' is not valid JSON: " + e.what());
    }
}

int check_against(const nlohmann::json &actual, const std::string &expected_path) {
    std::vector<std::string> diffs = self_check(actual, read_json(expected_path));
    for (const std::string &d : diffs) {
        std::cerr << "self-check: " << d << '\n';
    }
    if (!diffs.empty()) {
        return kExitFailure;
    }
    std::cerr << "self-check: ok\n";
    return 0;
}

int run(const std::string &command, const CLI::App *cmd, const Options &opt) {
    nlohmann::json doc;
    RunConfig cfg = opt.config.empty() ? parse_config(doc, overrides_from(cmd, opt))
                                       : load_config(opt.config, overrides_from(cmd, opt));
    Provenance prov{cfg.hash, cfg.shots ? cfg.shots->seed : std::nullopt};

    if (command == "single") {
        nlohmann::json record = run_single(cfg);
        emit(record.dump(2) + "\n", cfg.output.path);
        if (!opt.self_check.empty()) {
            return check_against(record, opt.self_check);
        }
        return record_is_sentinel_only(record) ? kExitSentinel : 0;
    }

    Table table = command == "fig2" ? run_fig2(cfg) : command == "fig3" ? run_fig3(cfg) : run_fig4(cfg);
    std::ostringstream text;
    if (cfg.output.format == OutputFormat::Json) {
        write_json(text, table, prov, cfg.output.precision);
    } else {
        write_csv(text, table, prov, cfg.output.precision);
    }
    emit(text.str(), cfg.output.path);
    if (!opt.self_check.empty()) {
        std::ostringstream js;
        write_json(js, table, prov, cfg.output.precision);
        return check_against(nlohmann::json::parse(js.str()), opt.self_check);
    }
    return table.sentinel_only() ? kExitSentinel : 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Postselected phase-amplification simulator for a Mach-Zehnder interferometer"};
    app.require_subcommand(1);

    Options opt;
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"fig2", "amplified phase versus theta2"},
        {"fig3", "sensitivity and uncertainty versus shot count"},
        {"fig4", "detector-saturation error ratio versus theta2"},
        {"single", "all derived quantities at one operating point"},
    };
    for (const auto &[name, help] : commands) {
        add_options(app.add_subcommand(name, help), opt);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    const CLI::App *cmd = app.get_subcommands().front();
    try {
        return run(cmd->get_name(), cmd, opt);
    } catch (const psa::ConfigError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const psa::Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}
