#pragma once

namespace cvqkd {

/// Pure-loss / thermal-loss wiretap channel parameters, shot-noise units.
///
/// Derived quantities (eta, nbar_eps, sigma_eps_sq) are always computed
/// from (distance, kappa, epsilon) by the factory functions; records are
/// immutable once built so the fields stay consistent.
struct ChannelParams {
    double distance_km = 0.0;
    double kappa_db_per_km = 0.2;
    double epsilon = 0.0;       // excess noise at the channel output, SNU
    double eta = 1.0;           // transmissivity 10^(-0.1 kappa d)
    double nbar_eps = 0.0;      // cloner thermal photons eta*eps / (2(1-eta))
    double sigma_eps_sq = 1.0;  // Bob's conditional variance 1 + eta*eps

    static ChannelParams from_distance(double d_km, double kappa_db_per_km = 0.2,
                                       double epsilon = 0.0);

    /// Convenience: the distance reproducing a given transmissivity.
    static ChannelParams from_eta(double eta, double epsilon = 0.0,
                                  double kappa_db_per_km = 0.2);

    bool pure_loss() const { return epsilon == 0.0; }
};

}  // namespace cvqkd
