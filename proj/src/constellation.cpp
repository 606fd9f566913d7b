#include "cvqkd/constellation.hpp"

#include <algorithm>
#include <cmath>

#include "cvqkd/errors.hpp"

namespace cvqkd {

namespace {

bool is_power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }

void require_lattice_size(int M) {
    if (M < 2 || !is_power_of_two(M))
        throw std::domain_error("lattice size M must be a power of two >= 2");
}

double half_index(int i, int M) { return 0.5 * (2 * i - (M - 1)); }

}  // namespace

Lattice1D Lattice1D::make(int M, double delta) {
    require_lattice_size(M);
    if (!(delta > 0.0)) throw std::domain_error("lattice spacing must be positive");
    Lattice1D lat;
    lat.M = M;
    lat.delta = delta;
    lat.points.resize(M);
    for (int i = 0; i < M; ++i) lat.points[i] = half_index(i, M) * delta;
    return lat;
}

double ShapedDistribution1D::index_second_moment() const {
    double e2 = 0.0;
    for (int i = 0; i < M; ++i) {
        const double n = half_index(i, M);
        e2 += weights[i] * n * n;
    }
    return e2;
}

double solve_delta_uniform(int M, double nbar) {
    require_lattice_size(M);
    if (!(nbar > 0.0)) throw std::domain_error("mean energy nbar must be positive");
    return std::sqrt(6.0 * nbar / (static_cast<double>(M) * M - 1.0));
}

ShapedDistribution1D mb_weights(double nu, int M) {
    require_lattice_size(M);
    if (nu < 0.0) throw std::domain_error("shaping parameter nu must be nonnegative");
    ShapedDistribution1D dist;
    dist.M = M;
    dist.nu = nu;
    dist.beta = nu;  // unit-spacing convention; energy-constrained builds overwrite
    dist.weights.resize(M);
    // Anchor the exponent at the innermost level |n| = 1/2 so weights stay in (0, 1].
    double z = 0.0;
    for (int i = 0; i < M; ++i) {
        const double n = half_index(i, M);
        dist.weights[i] = std::exp(-nu * (n * n - 0.25));
        z += dist.weights[i];
    }
    for (auto& w : dist.weights) w /= z;
    return dist;
}

DeltaBeta solve_delta_mb(double nu, int M, double nbar) {
    if (!(nbar > 0.0)) throw std::domain_error("mean energy nbar must be positive");
    const ShapedDistribution1D dist = mb_weights(nu, M);
    const double e2 = dist.index_second_moment();  // >= 1/4 for any nu
    const double delta = std::sqrt(nbar / (2.0 * e2));
    return {delta, nu / (delta * delta)};
}

bool Constellation::x_marginal_symmetric(double tol) const {
    const std::size_t n = marginal_x.size();
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = n - 1 - i;
        if (std::abs(marginal_x[i] + marginal_x[j]) > tol * std::max(1.0, std::abs(marginal_x[i])))
            return false;
        if (std::abs(marginal_px[i] - marginal_px[j]) > tol) return false;
    }
    return true;
}

Constellation build_qam(int M, double nbar, double nu) {
    const auto [delta, beta] = solve_delta_mb(nu, M, nbar);
    const Lattice1D lat = Lattice1D::make(M, delta);
    const ShapedDistribution1D dist = mb_weights(nu, M);

    Constellation c;
    c.kind = nu == 0.0 ? ConstellationKind::QamUniform : ConstellationKind::QamMb;
    c.M = M;
    c.delta = delta;
    c.nu = nu;
    c.beta = beta;
    c.symbols.reserve(static_cast<std::size_t>(M) * M);
    c.probs.reserve(static_cast<std::size_t>(M) * M);
    c.marginal_index.reserve(static_cast<std::size_t>(M) * M);
    double energy = 0.0;
    for (int ix = 0; ix < M; ++ix) {
        for (int iy = 0; iy < M; ++iy) {
            const std::complex<double> s(lat.points[ix], lat.points[iy]);
            const double p = dist.weights[ix] * dist.weights[iy];
            c.symbols.push_back(s);
            c.probs.push_back(p);
            c.marginal_index.push_back(ix);
            energy += p * std::norm(s);
        }
    }
    c.mean_energy = energy;
    c.marginal_x = lat.points;
    c.marginal_px = dist.weights;
    return c;
}

Constellation build_psk(int N, double nbar) {
    if (N < 2) throw std::domain_error("PSK needs at least 2 symbols");
    if (!(nbar > 0.0)) throw std::domain_error("mean energy nbar must be positive");
    const double amp = std::sqrt(nbar);

    Constellation c;
    c.kind = ConstellationKind::Psk;
    c.symbols.resize(N);
    c.probs.assign(N, 1.0 / N);
    // Phases (2k+1) pi / N. Cosines for k and N-1-k coincide; compute each
    // once so equal x-components are bitwise identical.
    std::vector<double> cosv(N), sinv(N);
    for (int k = 0; 2 * k < N; ++k) {
        const double th = (2.0 * k + 1.0) * M_PI / N;
        cosv[k] = std::cos(th);
        sinv[k] = std::sin(th);
        cosv[N - 1 - k] = cosv[k];
        sinv[N - 1 - k] = -sinv[k];
    }
    if (N % 2 == 1) {  // middle phase is exactly pi
        cosv[(N - 1) / 2] = -1.0;
        sinv[(N - 1) / 2] = 0.0;
    }
    for (int k = 0; k < N; ++k) c.symbols[k] = amp * std::complex<double>(cosv[k], sinv[k]);
    c.mean_energy = nbar;

    // Marginal over distinct x values.
    std::vector<int> order(N);
    for (int k = 0; k < N; ++k) order[k] = k;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return c.symbols[a].real() < c.symbols[b].real(); });
    c.marginal_index.resize(N);
    const double tol = 1e-9 * std::max(1.0, amp);
    for (int k : order) {
        const double x = c.symbols[k].real();
        if (c.marginal_x.empty() || x - c.marginal_x.back() > tol) {
            c.marginal_x.push_back(x);
            c.marginal_px.push_back(0.0);
        }
        c.marginal_index[k] = static_cast<int>(c.marginal_x.size()) - 1;
        c.marginal_px.back() += c.probs[k];
    }
    // Make the x -> -x symmetry exact where it holds up to rounding.
    for (std::size_t i = 0, j = c.marginal_x.size() - 1; i < j; ++i, --j) {
        if (std::abs(c.marginal_x[i] + c.marginal_x[j]) <= tol) {
            c.marginal_x[i] = -c.marginal_x[j];
            const double p = 0.5 * (c.marginal_px[i] + c.marginal_px[j]);
            c.marginal_px[i] = c.marginal_px[j] = p;
        }
    }
    return c;
}

Constellation gg02_descriptor(double nbar) {
    if (nbar < 0.0) throw std::domain_error("mean energy nbar must be nonnegative");
    Constellation c;
    c.kind = ConstellationKind::Gg02;
    c.mean_energy = nbar;
    return c;
}

std::string to_string(ConstellationKind kind) {
    switch (kind) {
        case ConstellationKind::QamUniform: return "qam-uniform";
        case ConstellationKind::QamMb: return "qam-mb";
        case ConstellationKind::Psk: return "psk";
        case ConstellationKind::Gg02: return "gg02";
    }
    return "?";
}

}  // namespace cvqkd
