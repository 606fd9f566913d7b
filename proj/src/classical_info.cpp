#include "cvqkd/classical_info.hpp"

#include <cmath>
#include <stdexcept>

#include "cvqkd/errors.hpp"

namespace cvqkd {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double plog2p(double p) {
    if (p < 1e-300) return 0.0;
    return p * std::log2(p);
}

}  // namespace

double p_b_given_a(double x_b, double x_a, const ChannelParams& ch) {
    const double mean = 2.0 * std::sqrt(ch.eta) * x_a;
    const double var = ch.sigma_eps_sq;
    const double z = x_b - mean;
    return std::exp(-z * z / (2.0 * var)) / std::sqrt(kTwoPi * var);
}

double p_b(double x_b, const Constellation& c, const ChannelParams& ch) {
    if (!c.is_discrete())
        throw std::domain_error("p_b needs a discrete constellation; use the GG02 closed forms");
    double p = 0.0;
    for (std::size_t i = 0; i < c.marginal_x.size(); ++i)
        p += c.marginal_px[i] * p_b_given_a(x_b, c.marginal_x[i], ch);
    return p;
}

MutualInfoResult mutual_information(const Constellation& c, const ChannelParams& ch,
                                    const GridPolicy& policy) {
    if (!c.is_discrete())
        throw std::domain_error("mutual_information needs a discrete constellation");
    const QuadratureGrid grid = outcome_grid(c, ch, policy.points, policy.tail_sigmas);

    double h_b = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double p = p_b(grid.points[i], c, ch);
        if (!std::isfinite(p)) throw NumericalError("non-finite outcome density");
        h_b -= grid.weights[i] * plog2p(p);
    }

    MutualInfoResult r;
    r.h_b = h_b;
    r.h_b_given_a = 0.5 * std::log2(kTwoPi * M_E * ch.sigma_eps_sq);
    const double diff = r.h_b - r.h_b_given_a;
    if (diff < -1e-9)
        throw NumericalError("mutual information came out negative; quadrature failure");
    r.i_ab = diff < 0.0 ? 0.0 : diff;
    r.grid_points = static_cast<int>(grid.size());
    return r;
}

double gg02_mutual_information(double nbar, const ChannelParams& ch) {
    if (!ch.pure_loss())
        throw std::domain_error("GG02 closed forms are derived for the pure-loss channel");
    if (nbar < 0.0) throw std::domain_error("mean energy nbar must be nonnegative");
    return 0.5 * std::log2(1.0 + 2.0 * ch.eta * nbar);
}

}  // namespace cvqkd
