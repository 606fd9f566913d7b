#include "cvqkd/kgr.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "cvqkd/errors.hpp"
#include "cvqkd/golden.hpp"

namespace cvqkd {

namespace {

void require_zeta(double zeta) {
    if (!(zeta > 0.0) || zeta > 1.0)
        throw std::domain_error("reconciliation efficiency zeta must be in (0, 1]");
}

double best_of_three(const GoldenResult& interior, double f_lo, double lo, double f_hi, double hi,
                     double* value = nullptr) {
    double x = interior.x, f = interior.value;
    if (f_lo > f) {
        x = lo;
        f = f_lo;
    }
    if (f_hi > f) {
        x = hi;
        f = f_hi;
    }
    if (value) *value = f;
    return x;
}

}  // namespace

std::string to_string(ShapingObjective o) {
    switch (o) {
        case ShapingObjective::Uniform: return "uniform";
        case ShapingObjective::MutualInfo: return "mb-mutualinfo";
        case ShapingObjective::Kgr: return "mb-kgr";
    }
    return "?";
}

ModulationSpec ModulationSpec::parse(const std::string& text) {
    ModulationSpec m;
    if (text == "gg02") {
        m.family = Family::Gg02;
        m.order = 0;
        return m;
    }
    const auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    if (colon == std::string::npos || colon + 1 == text.size())
        throw std::domain_error("modulation must be qam:M, psk:N or gg02, got '" + text + "'");
    int order = 0;
    try {
        std::size_t used = 0;
        order = std::stoi(text.substr(colon + 1), &used);
        if (used != text.size() - colon - 1) throw std::invalid_argument("tail");
    } catch (const std::exception&) {
        throw std::domain_error("bad modulation order in '" + text + "'");
    }
    if (head == "qam") {
        m.family = Family::Qam;
    } else if (head == "psk") {
        m.family = Family::Psk;
    } else {
        throw std::domain_error("unknown modulation family '" + head + "'");
    }
    m.order = order;
    return m;
}

std::string ModulationSpec::to_string() const {
    switch (family) {
        case Family::Qam: return "qam:" + std::to_string(order);
        case Family::Psk: return "psk:" + std::to_string(order);
        case Family::Gg02: return "gg02";
    }
    return "?";
}

KgrPoint kgr_at(const Constellation& c, const ChannelParams& ch, double zeta,
                const NumericsConfig& cfg) {
    require_zeta(zeta);
    if (!c.is_discrete()) return gg02_kgr(c.mean_energy, ch, zeta);

    KgrPoint p;
    p.channel = ch;
    p.zeta = zeta;
    p.nbar = c.mean_energy;
    p.nu = c.nu;
    p.beta = c.beta;
    p.delta = c.delta;

    const MutualInfoResult mi = mutual_information(c, ch, cfg.grid);
    p.i_ab = mi.i_ab;
    const HolevoResult hv =
        ch.pure_loss() ? holevo_pure_loss(c, ch, cfg) : holevo_thermal(c, ch, cfg);
    p.chi_be = hv.chi;
    p.cutoff_used = hv.cutoff_used;
    p.grid_points = hv.grid_points;
    p.k = zeta * p.i_ab - p.chi_be;
    return p;
}

double optimize_nu_mutual_info(int M, double nbar, const ChannelParams& ch,
                               const GridPolicy& grid, const SearchOptions& opt) {
    const auto objective = [&](double nu) {
        return mutual_information(build_qam(M, nbar, nu), ch, grid).i_ab;
    };
    const GoldenResult r = golden_section_maximize(objective, 0.0, opt.nu_hi, opt.nu_tol);
    return best_of_three(r, objective(0.0), 0.0, objective(opt.nu_hi), opt.nu_hi);
}

double optimize_nu_kgr(int M, double nbar, const ChannelParams& ch, double zeta,
                       const NumericsConfig& cfg, const SearchOptions& opt) {
    require_zeta(zeta);
    const auto objective = [&](double nu) {
        return kgr_at(build_qam(M, nbar, nu), ch, zeta, cfg).k;
    };
    const GoldenResult r = golden_section_maximize(objective, 0.0, opt.nu_hi, opt.nu_tol);
    return best_of_three(r, objective(0.0), 0.0, objective(opt.nu_hi), opt.nu_hi);
}

OptimumRecord optimize_energy(const ModulationSpec& mod, const ChannelParams& ch, double zeta,
                              ShapingObjective objective, const NumericsConfig& cfg,
                              const EnergyScanPolicy& scan) {
    require_zeta(zeta);
    if (mod.family != ModulationSpec::Family::Qam && objective != ShapingObjective::Uniform)
        throw std::domain_error("shaping objectives apply to QAM only");
    if (!(scan.nbar_hi > scan.nbar_lo) || !(scan.nbar_lo > 0.0))
        throw std::domain_error("energy scan bounds must satisfy 0 < lo < hi");
    if (scan.coarse_points < 3) throw std::domain_error("energy scan needs >= 3 coarse points");

    const auto eval = [&](double nbar) -> KgrPoint {
        KgrPoint p;
        switch (mod.family) {
            case ModulationSpec::Family::Gg02:
                p = gg02_kgr(nbar, ch, zeta);
                break;
            case ModulationSpec::Family::Psk:
                p = kgr_at(build_psk(mod.order, nbar), ch, zeta, cfg);
                break;
            case ModulationSpec::Family::Qam: {
                double nu = 0.0;
                if (objective == ShapingObjective::MutualInfo)
                    nu = optimize_nu_mutual_info(mod.order, nbar, ch, cfg.grid);
                else if (objective == ShapingObjective::Kgr)
                    nu = optimize_nu_kgr(mod.order, nbar, ch, zeta, cfg);
                p = kgr_at(build_qam(mod.order, nbar, nu), ch, zeta, cfg);
                break;
            }
        }
        if (scan.observer) scan.observer(p);
        return p;
    };

    OptimumRecord rec;
    rec.objective = objective;

    // Coarse log-spaced scan, ascending.
    const double lt_lo = std::log(scan.nbar_lo), lt_hi = std::log(scan.nbar_hi);
    std::vector<double> grid_nbar(scan.coarse_points);
    for (int i = 0; i < scan.coarse_points; ++i)
        grid_nbar[i] = std::exp(lt_lo + (lt_hi - lt_lo) * i / (scan.coarse_points - 1));

    KgrPoint best;
    bool have_best = false;
    int best_idx = 0;
    double prev_k = 0.0;
    int scanned = 0;
    for (int i = 0; i < scan.coarse_points; ++i) {
        const KgrPoint p = eval(grid_nbar[i]);
        ++scanned;
        if (!have_best || p.k > best.k) {
            best = p;
            best_idx = i;
            have_best = true;
        }
        if (scan.stop_at_first_positive && p.k > 0.0) {
            rec.best = best;
            rec.k_max = best.k;
            rec.nbar_max = best.nbar;
            rec.nu_opt = best.nu;
            rec.feasible = true;
            return rec;
        }
        if (scan.early_stop_negative && i > 0 && p.k < 0.0 && prev_k < 0.0 && p.k < prev_k &&
            best.k > p.k)
            break;
        prev_k = p.k;
    }

    // Golden refinement on log-energy around the best coarse point.
    const int lo_idx = std::max(best_idx - 1, 0);
    const int hi_idx = std::min(best_idx + 1, scanned - 1);
    if (hi_idx > lo_idx) {
        const double a = std::log(grid_nbar[lo_idx]), b = std::log(grid_nbar[hi_idx]);
        const auto f = [&](double t) {
            const KgrPoint p = eval(std::exp(t));
            if (p.k > best.k) best = p;
            return p.k;
        };
        golden_section_maximize(f, a, b, 1e-3, scan.k_rel_tol);
    }

    rec.best = best;
    rec.k_max = best.k;
    rec.nbar_max = best.nbar;
    rec.nu_opt = best.nu;
    rec.feasible = best.k > 0.0;
    return rec;
}

RatioResult ratio_pas_gain(int M, const std::vector<double>& distances_km, double zeta,
                           const NumericsConfig& cfg, double kappa_db_per_km,
                           double min_avg_distance) {
    if (distances_km.empty()) throw std::domain_error("distance list must be nonempty");
    RatioResult res;
    double sum = 0.0;
    for (double d : distances_km) {
        const ChannelParams ch = ChannelParams::from_distance(d, kappa_db_per_km, 0.0);
        const ModulationSpec mod{ModulationSpec::Family::Qam, M};
        const OptimumRecord uni = optimize_energy(mod, ch, zeta, ShapingObjective::Uniform, cfg);
        const OptimumRecord shaped =
            optimize_energy(mod, ch, zeta, ShapingObjective::MutualInfo, cfg);
        RatioPoint p;
        p.d_km = d;
        p.k_max_uniform = uni.k_max;
        p.k_max_shaped = shaped.k_max;
        p.feasible = uni.feasible && shaped.feasible;
        p.ratio = p.feasible ? shaped.k_max / uni.k_max : 0.0;
        if (!p.feasible)
            std::fprintf(stderr, "ratio_pas_gain: infeasible point at d=%g km excluded\n", d);
        res.per_distance.push_back(p);
        if (p.feasible && d >= min_avg_distance) {
            sum += p.ratio;
            ++res.averaged_count;
        }
    }
    if (res.averaged_count > 0) res.mean_ratio = sum / res.averaged_count;
    return res;
}

DmaxResult find_d_max(const ModulationSpec& mod, double epsilon, double zeta,
                      ShapingObjective objective, const NumericsConfig& cfg,
                      double kappa_db_per_km, double d_hi_km) {
    if (!(epsilon > 0.0)) throw std::domain_error("find_d_max needs excess noise epsilon > 0");
    require_zeta(zeta);

    const auto positive = [&](double d) {
        const ChannelParams ch = ChannelParams::from_distance(d, kappa_db_per_km, epsilon);
        EnergyScanPolicy scan;
        scan.stop_at_first_positive = true;
        return optimize_energy(mod, ch, zeta, objective, cfg, scan).k_max > 0.0;
    };

    // Coarse 10 km march for a sign-change bracket.
    double lo = 0.0, hi = 0.0;
    double prev = 0.0;
    bool found = false;
    for (double d = 10.0; d <= d_hi_km + 1e-9; d += 10.0) {
        if (positive(d)) {
            prev = d;
            continue;
        }
        lo = prev;
        hi = d;
        found = true;
        break;
    }
    if (!found) return {d_hi_km, false};
    if (lo == 0.0) {
        // Nonpositive already at 10 km; probe downwards for a bracket.
        double probe = hi / 2.0;
        while (probe >= 0.5 && !positive(probe)) {
            hi = probe;
            probe /= 2.0;
        }
        if (probe < 0.5) return {0.0, true};
        lo = probe;
    }

    while (hi - lo > 2.0) {
        const double mid = 0.5 * (lo + hi);
        (positive(mid) ? lo : hi) = mid;
    }
    return {0.5 * (lo + hi), true};
}

KgrPoint gg02_kgr(double nbar, const ChannelParams& ch, double zeta) {
    require_zeta(zeta);
    KgrPoint p;
    p.channel = ch;
    p.zeta = zeta;
    p.nbar = nbar;
    p.i_ab = gg02_mutual_information(nbar, ch);
    p.chi_be = gg02_holevo(nbar, ch);
    p.k = zeta * p.i_ab - p.chi_be;
    return p;
}

}  // namespace cvqkd
