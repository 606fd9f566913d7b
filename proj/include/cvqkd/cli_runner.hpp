#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "cvqkd/kgr.hpp"

namespace cvqkd::cli {

class ConfigError : public std::runtime_error {
public:
    ConfigError(int line, const std::string& what)
        : std::runtime_error(what), line_number(line) {}

    int line_number;  // 0 when the error is not tied to a config line
};

struct RunConfig {
    std::string scenario;  // sweep-energy | sweep-distance | optimize | ratio | dmax | gg02
    ModulationSpec modulation{ModulationSpec::Family::Qam, 4};
    std::string shaping = "uniform";  // uniform | mb-mutualinfo | mb-kgr
    double zeta = 0.95;
    double epsilon = 0.0;
    double kappa = 0.2;
    std::vector<double> d_km;
    std::vector<double> nbar;
    NumericsConfig numerics;
    SearchOptions search;
    int workers = 1;
    std::string output = "results.csv";
    bool cache_enabled = true;
    std::string cache_dir;  // empty: $CVQKD_CACHE_DIR, else .cvqkd_cache
    bool timings = false;   // measured wall_ms breaks byte-reproducibility

    void validate() const;  // throws ConfigError on bad values
    std::string canonical() const;

    ShapingObjective objective() const;
};

/// Plain-text "key = value" file; '#' starts a comment. Unknown keys are
/// rejected with their line number.
RunConfig parse_config_file(const std::string& path);

/// Apply one key=value pair (shared by the file parser and CLI overrides).
void apply_key(RunConfig& cfg, const std::string& key, const std::string& value, int line = 0);

/// "100" | "80,85,90" | "80:100:5" (inclusive range)
std::vector<double> parse_grid(const std::string& text);

struct ResultRow {
    std::string scenario;
    std::string modulation;
    std::string shaping;
    double d_km = 0.0;
    double eta = 0.0;
    double epsilon = 0.0;
    double nbar = 0.0;
    double nu = 0.0;
    double beta = 0.0;
    double delta = 0.0;
    double i_ab_bits = 0.0;
    double chi_be_bits = 0.0;
    double k_bits = 0.0;
    double zeta = 0.0;
    int cutoff_used = 0;
    int grid_points = 0;
    long wall_ms = 0;
};

std::string csv_header();
std::string to_csv(const ResultRow& row);

/// Identity of one cached evaluation point.
struct PointKey {
    std::string task;  // row kind, e.g. "sweep-energy" or "optimize"
    std::string modulation;
    std::string shaping;
    double d_km = 0.0;
    double epsilon = 0.0;
    double kappa = 0.2;
    double zeta = 0.95;
    double nbar = 0.0;  // NaN for rows that optimize over energy
    int simpson_points = 0;
    int holevo_points = 0;
    int cutoff_cap = 0;
    double tail_sigmas = 8.0;
    double nu_hi = 80.0;
};

/// Stable FNV-1a hash of the canonical point description.
std::string cache_key(const PointKey& key);

/// Execute the configured scenario: CSV plus a manifest next to it.
/// Returns 0 on success, 2 on validation errors, 3 on numerical errors.
int run(const RunConfig& cfg);

extern const char* kToolVersion;

}  // namespace cvqkd::cli
