#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cvqkd/channel.hpp"
#include "cvqkd/constellation.hpp"
#include "cvqkd/fock.hpp"
#include "cvqkd/gaussian.hpp"
#include "cvqkd/quadrature.hpp"

namespace cvqkd {

struct NumericsConfig {
    GridPolicy grid;
    int cutoff_cap = 128;        // per-mode truncation cap for chi pipelines
    double deficit_tol = 1e-6;   // accepted trace loss per expanded matrix
    double node_drop_rel = 1e-12;  // drop nodes with p_B below this times the peak
    int threads = 0;             // 0 = hardware concurrency
};

struct HolevoResult {
    double chi = 0.0;         // bits
    double s_total = 0.0;     // S[rho_E], bits
    double s_cond_avg = 0.0;  // integral of p_B(x) S[rho_E|x], bits
    int cutoff_used = 0;      // largest per-mode cutoff
    int grid_points = 0;
};

/// Holevo information of the pure-loss wiretap channel: Eve holds the
/// coherent mixture sum p(x_A,y_A) |sqrt(1-eta)(x_A+iy_A)>.
HolevoResult holevo_pure_loss(const Constellation& c, const ChannelParams& ch,
                              const NumericsConfig& cfg = {});

/// Eve's two-mode Gaussian states under the entangling-cloner attack for
/// one input symbol. Mode order: (reflected port, untouched TMSV arm).
class EveThermalStates {
public:
    EveThermalStates(double x_a, double y_a, const ChannelParams& ch);

    const GaussianState& overall() const { return overall_; }
    GaussianState conditional(double x_b) const;
    double outcome_density(double x_b) const;
    double bob_mean() const { return joint3_.fm(0); }
    double bob_variance() const { return joint3_.cm(0, 0); }

private:
    GaussianState joint3_;  // (Bob, E1', E2) after the channel beam splitter
    GaussianState overall_;
};

/// Holevo information of the thermal-loss wiretap channel via truncated
/// Fock expansion of Eve's two-mode Gaussian mixtures.
HolevoResult holevo_thermal(const Constellation& c, const ChannelParams& ch,
                            const NumericsConfig& cfg = {});

/// Eve's conditional mixture at outcome x_b, expanded in the Fock basis
/// with the physical (undisplaced) first moments. Reference path for
/// consistency checks; holevo_thermal works in a displaced frame.
Eigen::MatrixXcd thermal_conditional_mixture(const Constellation& c, const ChannelParams& ch,
                                             double x_b, const std::vector<int>& cutoffs);

/// Matching cutoffs used by holevo_thermal for the given inputs.
std::vector<int> thermal_cutoffs(const Constellation& c, const ChannelParams& ch,
                                 const NumericsConfig& cfg = {});

/// Closed-form Holevo bound of the entangling-cloner attack on Gaussian
/// modulation over a pure-loss channel.
double gg02_holevo(double nbar, const ChannelParams& ch);

}  // namespace cvqkd
