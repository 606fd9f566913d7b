#include "cvqkd/holevo.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

#include "cvqkd/classical_info.hpp"
#include "cvqkd/errors.hpp"

namespace cvqkd {

namespace {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

template <typename F>
void parallel_for(int n, int threads, F&& body) {
    threads = std::min(threads, n);
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        const int lo = static_cast<int>(static_cast<long>(n) * t / threads);
        const int hi = static_cast<int>(static_cast<long>(n) * (t + 1) / threads);
        pool.emplace_back([lo, hi, &body] {
            for (int i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

/// Average conditional entropy integral sum_j W_j p_B(x_j) S[rho_j] where
/// rho_j = sum_g coef_g(x_j) G_g, coef_g = px_g p(x_j|x_g) / p_B(x_j).
/// Exploits the x -> -x mirror symmetry of symmetric constellations
/// (mirrored nodes host unitarily equivalent mixtures) and drops nodes
/// with negligible p_B.
double conditional_entropy_average(const Constellation& c, const ChannelParams& ch,
                                   const QuadratureGrid& grid,
                                   const std::vector<Eigen::MatrixXcd>& group_mats,
                                   const NumericsConfig& cfg) {
    const int n = static_cast<int>(grid.size());
    const int n_groups = static_cast<int>(group_mats.size());
    const long dim = group_mats.empty() ? 0 : group_mats.front().rows();

    std::vector<double> pb(n);
    double pmax = 0.0;
    for (int j = 0; j < n; ++j) {
        pb[j] = p_b(grid.points[j], c, ch);
        pmax = std::max(pmax, pb[j]);
    }
    if (!(pmax > 0.0)) throw NumericalError("outcome density vanished on the whole grid");

    const bool halve = c.x_marginal_symmetric() &&
                       std::abs(grid.lo + grid.hi) <= 1e-9 * (grid.hi - grid.lo);
    const int mid = (n - 1) / 2;

    struct Node {
        int j;
        double factor;
    };
    std::vector<Node> nodes;
    nodes.reserve(n);
    for (int j = halve ? mid : 0; j < n; ++j) {
        if (pb[j] <= cfg.node_drop_rel * pmax) continue;
        nodes.push_back({j, halve && j > mid ? 2.0 : 1.0});
    }

    std::vector<double> entropy(nodes.size());
    const int threads = resolve_threads(cfg.threads);
    parallel_for(static_cast<int>(nodes.size()), threads, [&](int idx) {
        const int j = nodes[idx].j;
        Eigen::MatrixXcd mix = Eigen::MatrixXcd::Zero(dim, dim);
        for (int g = 0; g < n_groups; ++g) {
            const double coef =
                c.marginal_px[g] * p_b_given_a(grid.points[j], c.marginal_x[g], ch) / pb[j];
            if (coef > 0.0) mix.noalias() += coef * group_mats[g];
        }
        entropy[idx] = von_neumann_entropy(mix);
    });

    double s = 0.0;
    for (std::size_t idx = 0; idx < nodes.size(); ++idx) {
        const int j = nodes[idx].j;
        s += nodes[idx].factor * grid.weights[j] * pb[j] * entropy[idx];
    }
    return s;
}

double finish_chi(HolevoResult& r) {
    const double diff = r.s_total - r.s_cond_avg;
    const double tol = 1e-9 * std::max(1.0, r.s_total);
    if (diff < -tol)
        throw NumericalError("Holevo information came out negative beyond tolerance");
    r.chi = diff < 0.0 ? 0.0 : diff;
    return r.chi;
}

/// Symbol-independent geometry of the entangling-cloner channel.
struct ThermalGeometry {
    Eigen::Matrix4d sigma_e;   // Eve's unconditional CM (modes E1', E2)
    Eigen::Matrix4d sigma_c;   // Eve's conditional CM after Bob's homodyne
    Eigen::Vector4d l_vec;     // FM response to (x_b - Bob mean)
    double bob_var = 1.0;
    double r = 0.0;            // sqrt(1 - eta)
    double t = 1.0;            // sqrt(eta)

    explicit ThermalGeometry(const ChannelParams& ch) {
        const double v_eps = 1.0 + 2.0 * ch.nbar_eps;
        const SymplecticMap s = beam_splitter(ch.eta, 0, 1, 3);
        const GaussianState joint = evolve(tensor(vacuum(1), tmsv(v_eps)), s);
        sigma_e = joint.cm.bottomRightCorner<4, 4>();
        bob_var = joint.cm(0, 0);
        const Eigen::Vector4d zq = joint.cm.block<1, 4>(0, 2).transpose();
        l_vec = zq / bob_var;
        sigma_c = sigma_e - (zq * zq.transpose()) / bob_var;
        r = std::sqrt(1.0 - ch.eta);
        t = std::sqrt(ch.eta);
    }

    Eigen::Vector4d fm_e(const std::complex<double>& s) const {
        return {-2.0 * r * s.real(), -2.0 * r * s.imag(), 0.0, 0.0};
    }

    double bob_mean(const std::complex<double>& s) const { return 2.0 * t * s.real(); }

    /// Conditional FM with the common l_vec * x_b displacement removed.
    Eigen::Vector4d fm_c_centered(const std::complex<double>& s) const {
        return fm_e(s) - l_vec * bob_mean(s);
    }
};

std::vector<int> thermal_cutoffs_at_cap(const Constellation& c, const ThermalGeometry& geo,
                                        int cap) {
    double mu[2] = {0.0, 0.0};
    GaussianState probe;
    probe.cm = geo.sigma_e;
    for (std::size_t i = 0; i < c.size(); ++i) {
        probe.fm = geo.fm_e(c.symbols[i]);
        mu[0] = std::max(mu[0], probe.mode_mean_photons(0));
        mu[1] = std::max(mu[1], probe.mode_mean_photons(1));
    }
    probe.cm = geo.sigma_c;
    for (std::size_t i = 0; i < c.size(); ++i) {
        probe.fm = geo.fm_c_centered(c.symbols[i]);
        mu[0] = std::max(mu[0], probe.mode_mean_photons(0));
        mu[1] = std::max(mu[1], probe.mode_mean_photons(1));
    }
    return {auto_cutoff(mu[0], cap), auto_cutoff(mu[1], cap)};
}

void require_thermal(const ChannelParams& ch) {
    if (ch.pure_loss() || !(ch.eta < 1.0))
        throw std::domain_error("thermal pipeline needs epsilon > 0 and eta < 1");
}

}  // namespace

HolevoResult holevo_pure_loss(const Constellation& c, const ChannelParams& ch,
                              const NumericsConfig& cfg) {
    if (!ch.pure_loss())
        throw std::domain_error("holevo_pure_loss needs a pure-loss channel");
    if (!c.is_discrete())
        throw std::domain_error("holevo_pure_loss needs a discrete constellation");

    const double r = std::sqrt(1.0 - ch.eta);
    double max_sq = 0.0;
    for (const auto& s : c.symbols) max_sq = std::max(max_sq, std::norm(r * s));

    const int n_groups = static_cast<int>(c.marginal_x.size());
    std::vector<Eigen::MatrixXcd> groups;
    Eigen::MatrixXcd rho_e;

    int cutoff = auto_cutoff(max_sq, cfg.cutoff_cap);
    for (int attempt = 0;; ++attempt) {
        const int dim = cutoff + 1;
        groups.assign(n_groups, Eigen::MatrixXcd::Zero(dim, dim));
        for (std::size_t i = 0; i < c.size(); ++i) {
            const Eigen::VectorXcd v = coherent_vector(r * c.symbols[i], cutoff);
            const int g = c.marginal_index[i];
            groups[g].noalias() += (c.probs[i] / c.marginal_px[g]) * (v * v.adjoint());
        }
        rho_e = Eigen::MatrixXcd::Zero(dim, dim);
        double worst_deficit = 0.0;
        for (int g = 0; g < n_groups; ++g) {
            rho_e.noalias() += c.marginal_px[g] * groups[g];
            worst_deficit = std::max(worst_deficit, 1.0 - groups[g].trace().real());
        }
        if (worst_deficit <= cfg.deficit_tol) break;
        const int next = std::min(static_cast<int>(std::ceil(1.5 * cutoff)), cfg.cutoff_cap);
        if (attempt >= 1 || next <= cutoff)
            throw CutoffError("pure-loss Eve mixture lost trace " +
                                  std::to_string(worst_deficit) + " at cutoff " +
                                  std::to_string(cutoff),
                              static_cast<int>(std::ceil(1.5 * cutoff)));
        cutoff = next;
    }

    HolevoResult res;
    res.cutoff_used = cutoff;
    res.s_total = von_neumann_entropy(rho_e);
    const QuadratureGrid grid =
        outcome_grid(c, ch, cfg.grid.holevo_points, cfg.grid.tail_sigmas);
    res.grid_points = static_cast<int>(grid.size());
    res.s_cond_avg = conditional_entropy_average(c, ch, grid, groups, cfg);
    finish_chi(res);
    return res;
}

EveThermalStates::EveThermalStates(double x_a, double y_a, const ChannelParams& ch) {
    require_thermal(ch);
    const double v_eps = 1.0 + 2.0 * ch.nbar_eps;
    const SymplecticMap s = beam_splitter(ch.eta, 0, 1, 3);
    joint3_ = evolve(tensor(coherent(x_a, y_a), tmsv(v_eps)), s);
    overall_ = joint3_.reduced({1, 2});
}

GaussianState EveThermalStates::conditional(double x_b) const {
    return condition_on_homodyne_q(joint3_, 0, x_b).state;
}

double EveThermalStates::outcome_density(double x_b) const {
    return condition_on_homodyne_q(joint3_, 0, x_b).density;
}

std::vector<int> thermal_cutoffs(const Constellation& c, const ChannelParams& ch,
                                 const NumericsConfig& cfg) {
    require_thermal(ch);
    return thermal_cutoffs_at_cap(c, ThermalGeometry(ch), cfg.cutoff_cap);
}

HolevoResult holevo_thermal(const Constellation& c, const ChannelParams& ch,
                            const NumericsConfig& cfg) {
    require_thermal(ch);
    if (!c.is_discrete())
        throw std::domain_error("holevo_thermal needs a discrete constellation");

    const ThermalGeometry geo(ch);
    const int n_groups = static_cast<int>(c.marginal_x.size());

    std::vector<int> cutoffs = thermal_cutoffs_at_cap(c, geo, cfg.cutoff_cap);
    std::vector<Eigen::MatrixXcd> groups;
    Eigen::MatrixXcd rho_e;

    GaussianState uncond, cond;
    uncond.cm = geo.sigma_e;
    uncond.fm = geo.fm_e(c.symbols[0]);
    cond.cm = geo.sigma_c;
    cond.fm = geo.fm_c_centered(c.symbols[0]);

    for (int attempt = 0;; ++attempt) {
        const long dim = static_cast<long>(cutoffs[0] + 1) * (cutoffs[1] + 1);
        FockExpansion fe_u(uncond);
        FockExpansion fe_c(cond);
        rho_e = Eigen::MatrixXcd::Zero(dim, dim);
        groups.assign(n_groups, Eigen::MatrixXcd::Zero(dim, dim));
        for (std::size_t i = 0; i < c.size(); ++i) {
            fe_u.set_first_moments(geo.fm_e(c.symbols[i]));
            rho_e.noalias() += c.probs[i] * fe_u.matrix(cutoffs);
            fe_c.set_first_moments(geo.fm_c_centered(c.symbols[i]));
            const int g = c.marginal_index[i];
            groups[g].noalias() += (c.probs[i] / c.marginal_px[g]) * fe_c.matrix(cutoffs);
        }
        double worst_deficit = 1.0 - rho_e.trace().real();
        for (const auto& g : groups)
            worst_deficit = std::max(worst_deficit, 1.0 - g.trace().real());
        if (worst_deficit <= cfg.deficit_tol) break;
        std::vector<int> next = {
            std::min(static_cast<int>(std::ceil(1.5 * cutoffs[0])), cfg.cutoff_cap),
            std::min(static_cast<int>(std::ceil(1.5 * cutoffs[1])), cfg.cutoff_cap)};
        if (attempt >= 1 || next == cutoffs)
            throw CutoffError("thermal Eve mixture lost trace " + std::to_string(worst_deficit) +
                                  " at cutoffs (" + std::to_string(cutoffs[0]) + ", " +
                                  std::to_string(cutoffs[1]) + ")",
                              static_cast<int>(std::ceil(1.5 * std::max(cutoffs[0], cutoffs[1]))));
        cutoffs = next;
    }

    HolevoResult res;
    res.cutoff_used = std::max(cutoffs[0], cutoffs[1]);
    res.s_total = von_neumann_entropy(rho_e);
    const QuadratureGrid grid =
        outcome_grid(c, ch, cfg.grid.holevo_points, cfg.grid.tail_sigmas);
    res.grid_points = static_cast<int>(grid.size());
    res.s_cond_avg = conditional_entropy_average(c, ch, grid, groups, cfg);
    finish_chi(res);
    return res;
}

Eigen::MatrixXcd thermal_conditional_mixture(const Constellation& c, const ChannelParams& ch,
                                             double x_b, const std::vector<int>& cutoffs) {
    require_thermal(ch);
    const ThermalGeometry geo(ch);
    const long dim = static_cast<long>(cutoffs[0] + 1) * (cutoffs[1] + 1);

    GaussianState cond;
    cond.cm = geo.sigma_c;
    cond.fm = geo.fm_c_centered(c.symbols[0]) + geo.l_vec * x_b;
    FockExpansion fe(cond);

    const double pb = p_b(x_b, c, ch);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double w =
            c.probs[i] * p_b_given_a(x_b, c.symbols[i].real(), ch) / pb;
        fe.set_first_moments(geo.fm_c_centered(c.symbols[i]) + geo.l_vec * x_b);
        rho.noalias() += w * fe.matrix(cutoffs);
    }
    return rho;
}

double gg02_holevo(double nbar, const ChannelParams& ch) {
    if (!ch.pure_loss())
        throw std::domain_error("GG02 closed forms are derived for the pure-loss channel");
    if (nbar < 0.0) throw std::domain_error("mean energy nbar must be nonnegative");
    const double eta = ch.eta;
    const double v_e = 1.0 + 2.0 * (1.0 - eta) * nbar;
    const double v_bar =
        std::sqrt((eta + (1.0 - eta) * (1.0 + 2.0 * nbar)) /
                  (1.0 - eta + eta * (1.0 + 2.0 * nbar)) * (1.0 + 2.0 * nbar));
    const auto bracket = [](double v) {
        return v > 1.0 ? 0.5 * (v - 1.0) * std::log2((v + 1.0) / (v - 1.0)) : 0.0;
    };
    return std::log2((v_e + 1.0) / (v_bar + 1.0)) + bracket(v_e) - bracket(v_bar);
}

}  // namespace cvqkd
