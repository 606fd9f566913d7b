#include "cvqkd/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace cvqkd {

ChannelParams ChannelParams::from_distance(double d_km, double kappa_db_per_km, double epsilon) {
    if (d_km < 0.0) throw std::domain_error("distance must be nonnegative");
    if (!(kappa_db_per_km > 0.0)) throw std::domain_error("loss rate kappa must be positive");
    if (epsilon < 0.0) throw std::domain_error("excess noise epsilon must be nonnegative");

    ChannelParams ch;
    ch.distance_km = d_km;
    ch.kappa_db_per_km = kappa_db_per_km;
    ch.epsilon = epsilon;
    ch.eta = std::pow(10.0, -0.1 * kappa_db_per_km * d_km);
    if (ch.eta >= 1.0) {
        if (epsilon > 0.0)
            throw std::domain_error("excess noise requires a lossy channel (d = 0 gives eta = 1)");
        ch.eta = 1.0;
        ch.nbar_eps = 0.0;
    } else {
        ch.nbar_eps = ch.eta * epsilon / (2.0 * (1.0 - ch.eta));
    }
    ch.sigma_eps_sq = 1.0 + ch.eta * epsilon;
    return ch;
}

ChannelParams ChannelParams::from_eta(double eta, double epsilon, double kappa_db_per_km) {
    if (!(eta > 0.0) || eta > 1.0) throw std::domain_error("transmissivity must be in (0, 1]");
    const double d_km = eta == 1.0 ? 0.0 : -10.0 * std::log10(eta) / kappa_db_per_km;
    return from_distance(d_km, kappa_db_per_km, epsilon);
}

}  // namespace cvqkd
