#pragma once

#include <complex>
#include <string>
#include <vector>

namespace cvqkd {

/// One quadrature of a square QAM lattice: M points n*delta with
/// half-integer indices n = -(M-1)/2, ..., (M-1)/2.
struct Lattice1D {
    int M = 0;
    double delta = 0.0;
    std::vector<double> points;

    static Lattice1D make(int M, double delta);
};

/// Maxwell-Boltzmann weights exp(-nu n^2)/Z over the lattice indices.
/// nu = beta * delta^2 is the scale-free shaping parameter; the recorded
/// beta refers to the spacing that produced the distribution (unit
/// spacing for a bare mb_weights() call).
struct ShapedDistribution1D {
    int M = 0;
    double nu = 0.0;
    double beta = 0.0;
    std::vector<double> weights;

    /// E[n^2] over the half-integer indices.
    double index_second_moment() const;
};

enum class ConstellationKind { QamUniform, QamMb, Psk, Gg02 };

/// Discrete set of coherent-state amplitudes with probabilities, or the
/// GG02 Gaussian-modulation descriptor (mean energy only, no symbol list).
struct Constellation {
    ConstellationKind kind = ConstellationKind::QamUniform;
    std::vector<std::complex<double>> symbols;
    std::vector<double> probs;
    double mean_energy = 0.0;

    // Shaping metadata; zero for PSK and GG02.
    int M = 0;
    double delta = 0.0;
    double nu = 0.0;
    double beta = 0.0;

    // x-quadrature marginal cached at build time: distinct Re(symbol)
    // values ascending, their total probability, and a per-symbol index
    // into the marginal.
    std::vector<double> marginal_x;
    std::vector<double> marginal_px;
    std::vector<int> marginal_index;

    bool is_discrete() const { return kind != ConstellationKind::Gg02; }
    std::size_t size() const { return symbols.size(); }
    bool x_marginal_symmetric(double tol = 1e-12) const;
};

/// Spacing of a uniform constellation with mean energy nbar: the unique
/// delta with (1/M) sum_n (n delta)^2 = nbar/2.
double solve_delta_uniform(int M, double nbar);

ShapedDistribution1D mb_weights(double nu, int M);

struct DeltaBeta {
    double delta;
    double beta;
};

/// Spacing and inverse temperature for a Maxwell-Boltzmann constellation
/// with shaping nu and mean energy nbar. Closed form: the weights depend
/// on (beta, delta) only through nu, so delta = sqrt(nbar / (2 E_nu[n^2]))
/// and beta = nu / delta^2.
DeltaBeta solve_delta_mb(double nu, int M, double nbar);

Constellation build_qam(int M, double nbar, double nu);
Constellation build_psk(int N, double nbar);
Constellation gg02_descriptor(double nbar);

std::string to_string(ConstellationKind kind);

}  // namespace cvqkd
