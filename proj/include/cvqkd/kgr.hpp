#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cvqkd/classical_info.hpp"
#include "cvqkd/holevo.hpp"

namespace cvqkd {

enum class ShapingObjective { Uniform, MutualInfo, Kgr };

std::string to_string(ShapingObjective o);

struct ModulationSpec {
    enum class Family { Qam, Psk, Gg02 };
    Family family = Family::Qam;
    int order = 4;  // QAM: points per quadrature; PSK: total symbol count

    /// "qam:4" | "psk:16" | "gg02"
    static ModulationSpec parse(const std::string& text);
    std::string to_string() const;
};

struct KgrPoint {
    ChannelParams channel;
    double nbar = 0.0;
    double nu = 0.0;
    double beta = 0.0;
    double delta = 0.0;
    double i_ab = 0.0;
    double chi_be = 0.0;
    double k = 0.0;
    double zeta = 1.0;
    int cutoff_used = 0;
    int grid_points = 0;
};

struct OptimumRecord {
    KgrPoint best;
    double k_max = 0.0;
    double nbar_max = 0.0;
    double nu_opt = 0.0;
    ShapingObjective objective = ShapingObjective::Uniform;
    bool feasible = false;
};

struct SearchOptions {
    double nu_hi = 80.0;
    double nu_tol = 1e-4;
};

struct EnergyScanPolicy {
    double nbar_lo = 0.01;
    double nbar_hi = 50.0;
    int coarse_points = 25;
    double k_rel_tol = 1e-3;   // refinement stop, relative in K
    // Stop scanning once two consecutive K values are negative and
    // decreasing; the curve is past its maximum and the Fock dimension of
    // the chi evaluation keeps growing with nbar.
    bool early_stop_negative = true;
    // Sign queries only: return as soon as some scanned K is positive.
    bool stop_at_first_positive = false;
    std::function<void(const KgrPoint&)> observer;
};

/// K = zeta I_AB - chi_BE at one operating point; dispatches between the
/// pure-loss and thermal pipelines on epsilon.
KgrPoint kgr_at(const Constellation& c, const ChannelParams& ch, double zeta,
                const NumericsConfig& cfg = {});

/// Shaping parameter maximizing the mutual information at fixed energy.
double optimize_nu_mutual_info(int M, double nbar, const ChannelParams& ch,
                               const GridPolicy& grid = {}, const SearchOptions& opt = {});

/// Shaping parameter maximizing the key rate directly (each probe costs a
/// full Holevo evaluation).
double optimize_nu_kgr(int M, double nbar, const ChannelParams& ch, double zeta,
                       const NumericsConfig& cfg = {}, const SearchOptions& opt = {});

/// Coarse log-spaced energy scan plus golden-section refinement of the
/// best bracket; the inner nu optimization follows the objective.
OptimumRecord optimize_energy(const ModulationSpec& mod, const ChannelParams& ch, double zeta,
                              ShapingObjective objective, const NumericsConfig& cfg = {},
                              const EnergyScanPolicy& scan = {});

struct RatioPoint {
    double d_km = 0.0;
    double k_max_uniform = 0.0;
    double k_max_shaped = 0.0;
    double ratio = 0.0;
    bool feasible = false;
};

struct RatioResult {
    std::vector<RatioPoint> per_distance;
    double mean_ratio = 0.0;  // over feasible points with d >= min_avg_distance
    int averaged_count = 0;
};

/// PAS gain R = K_max(shaped) / K_max(uniform) per distance, averaged
/// over the far region to smooth the optimizer plateau.
RatioResult ratio_pas_gain(int M, const std::vector<double>& distances_km, double zeta,
                           const NumericsConfig& cfg = {}, double kappa_db_per_km = 0.2,
                           double min_avg_distance = 80.0);

struct DmaxResult {
    double d_max_km = 0.0;
    bool bounded = true;
};

/// Largest distance with positive optimized key rate under excess noise,
/// to +-1 km. Coarse 10 km march to bracket, then bisection.
DmaxResult find_d_max(const ModulationSpec& mod, double epsilon, double zeta,
                      ShapingObjective objective, const NumericsConfig& cfg = {},
                      double kappa_db_per_km = 0.2, double d_hi_km = 400.0);

/// Closed-form Gaussian-modulation benchmark point.
KgrPoint gg02_kgr(double nbar, const ChannelParams& ch, double zeta);

}  // namespace cvqkd
