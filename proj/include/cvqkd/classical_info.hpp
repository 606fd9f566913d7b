#pragma once

#include "cvqkd/channel.hpp"
#include "cvqkd/constellation.hpp"
#include "cvqkd/quadrature.hpp"

namespace cvqkd {

struct MutualInfoResult {
    double i_ab = 0.0;         // bits
    double h_b = 0.0;          // marginal entropy, bits
    double h_b_given_a = 0.0;  // conditional entropy, bits
    int grid_points = 0;
};

/// Bob's conditional outcome density: Gaussian with mean 2 sqrt(eta) x_A
/// and variance sigma_eps^2 (= 1 on a pure-loss channel).
double p_b_given_a(double x_b, double x_a, const ChannelParams& ch);

/// Bob's average outcome density for a discrete constellation.
double p_b(double x_b, const Constellation& c, const ChannelParams& ch);

MutualInfoResult mutual_information(const Constellation& c, const ChannelParams& ch,
                                    const GridPolicy& policy = {});

/// Gaussian-modulation benchmark: (1/2) log2(1 + 2 eta nbar), pure loss only.
double gg02_mutual_information(double nbar, const ChannelParams& ch);

}  // namespace cvqkd
