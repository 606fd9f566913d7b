#pragma once

#include <cstddef>
#include <vector>

#include "cvqkd/channel.hpp"
#include "cvqkd/constellation.hpp"

namespace cvqkd {

/// Composite-Simpson nodes and weights on a uniform grid.
struct QuadratureGrid {
    std::vector<double> points;
    std::vector<double> weights;
    double lo = 0.0;
    double hi = 0.0;

    static QuadratureGrid simpson(double lo, double hi, int n_points);

    std::size_t size() const { return points.size(); }

    template <typename F>
    double integrate(F&& f) const {
        double s = 0.0;
        for (std::size_t i = 0; i < points.size(); ++i) s += weights[i] * f(points[i]);
        return s;
    }
};

struct GridPolicy {
    int points = 1201;        // classical entropy integral
    int holevo_points = 301;  // conditional-entropy integral (eigensolve per node)
    double tail_sigmas = 8.0;
};

/// Grid covering every Bob-side symbol mean (2 sqrt(eta) x_A) plus
/// tail_sigmas standard deviations on both sides.
QuadratureGrid outcome_grid(const Constellation& c, const ChannelParams& ch, int n_points,
                            double tail_sigmas = 8.0);

}  // namespace cvqkd
