#include "cvqkd/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace cvqkd {

QuadratureGrid QuadratureGrid::simpson(double lo, double hi, int n_points) {
    if (n_points < 3 || n_points % 2 == 0)
        throw std::domain_error("Simpson grid needs an odd number of points >= 3");
    if (!(hi > lo)) throw std::domain_error("quadrature range must be nonempty");

    QuadratureGrid g;
    g.lo = lo;
    g.hi = hi;
    g.points.resize(n_points);
    g.weights.resize(n_points);
    const double h = (hi - lo) / (n_points - 1);
    for (int i = 0; i < n_points; ++i) {
        g.points[i] = lo + h * i;
        g.weights[i] = (i == 0 || i == n_points - 1) ? h / 3.0
                       : (i % 2 == 1)                ? 4.0 * h / 3.0
                                                     : 2.0 * h / 3.0;
    }
    g.points.back() = hi;
    return g;
}

QuadratureGrid outcome_grid(const Constellation& c, const ChannelParams& ch, int n_points,
                            double tail_sigmas) {
    if (!c.is_discrete())
        throw std::domain_error("outcome grid needs a discrete constellation");
    const double scale = 2.0 * std::sqrt(ch.eta);
    const double lo_mean = scale * c.marginal_x.front();
    const double hi_mean = scale * c.marginal_x.back();
    const double sigma = std::sqrt(ch.sigma_eps_sq);
    return QuadratureGrid::simpson(lo_mean - tail_sigmas * sigma, hi_mean + tail_sigmas * sigma,
                                   n_points);
}

}  // namespace cvqkd
