#include <CLI11.hpp>
#include <cstdio>
#include <string>
#include <vector>

#include "cvqkd/cli_runner.hpp"

namespace {

struct Override {
    std::string key;
    std::string value;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Key-generation-rate calculator for discrete-modulation CV-QKD over "
                 "pure-loss and thermal-loss wiretap channels"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<Override> overrides;

    const std::vector<std::pair<std::string, std::string>> flags = {
        {"--modulation", "qam:M | psk:N | gg02"},
        {"--shaping", "uniform | mb-mutualinfo | mb-kgr"},
        {"--zeta", "reconciliation efficiency in (0, 1]"},
        {"--epsilon", "channel excess noise (SNU)"},
        {"--kappa", "fiber loss rate, dB/km"},
        {"--d", "distance grid: v | v1,v2,... | lo:hi:step (km)"},
        {"--nbar", "energy grid: v | v1,v2,... | lo:hi:step (photons)"},
        {"--simpson-points", "classical Simpson nodes (odd)"},
        {"--holevo-points", "Holevo Simpson nodes (odd)"},
        {"--tail-sigmas", "integration range padding"},
        {"--cutoff-cap", "per-mode Fock cutoff cap"},
        {"--threads", "threads per point (0 = auto)"},
        {"--nu-max", "upper bracket of the shaping search"},
        {"--workers", "parallel points"},
        {"--output", "CSV path"},
        {"--cache-dir", "cache directory (default $CVQKD_CACHE_DIR or .cvqkd_cache)"},
    };

    const std::vector<std::string> scenarios = {"sweep-energy", "sweep-distance", "optimize",
                                                "ratio", "dmax", "gg02"};
    for (const auto& name : scenarios) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "key = value config file");
        for (const auto& [flag, help] : flags) {
            std::string key = flag.substr(2);
            for (auto& ch : key)
                if (ch == '-') ch = '_';
            sub->add_option_function<std::string>(
                flag,
                [key, &overrides](const std::string& v) {
                    overrides.push_back({key, v});
                },
                help);
        }
        sub->add_flag_callback(
            "--no-cache", [&overrides] { overrides.push_back({"cache", "off"}); },
            "disable the evaluation cache");
        sub->add_flag_callback(
            "--timings", [&overrides] { overrides.push_back({"timings", "on"}); },
            "record measured wall_ms (breaks byte-reproducibility)");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        cvqkd::cli::RunConfig cfg;
        if (!config_path.empty()) cfg = cvqkd::cli::parse_config_file(config_path);
        cfg.scenario = app.get_subcommands().front()->get_name();
        for (const auto& o : overrides) cvqkd::cli::apply_key(cfg, o.key, o.value);
        return cvqkd::cli::run(cfg);
    } catch (const cvqkd::cli::ConfigError& e) {
        if (e.line_number > 0)
            std::fprintf(stderr, "%s:%d: %s\n", config_path.c_str(), e.line_number, e.what());
        else
            std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
