#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace cvqkd {

/// Truncated Fock-basis density matrix (multi-mode indices flattened,
/// last mode fastest).
struct FockDensityMatrix {
    Eigen::MatrixXcd mat;
    double trace_deficit = 0.0;
    std::vector<int> cutoffs;

    int dim() const { return static_cast<int>(mat.rows()); }
};

/// Coherent-state amplitudes e^{-|a|^2/2} a^n / sqrt(n!) for n = 0..cutoff.
Eigen::VectorXcd coherent_vector(std::complex<double> alpha, int cutoff);

/// sum_i w_i |a_i><a_i| truncated at the given cutoff. Throws CutoffError
/// (with a suggested cutoff) when the recorded trace deficit exceeds 1e-6.
FockDensityMatrix mixture_of_coherent(const std::vector<std::complex<double>>& amplitudes,
                                      const std::vector<double>& weights, int cutoff);

/// -Tr(rho log2 rho) via Hermitian eigendecomposition. Eigenvalues in
/// [-1e-9, 0) are clamped to zero; anything lower is a physicality error.
double von_neumann_entropy(const Eigen::MatrixXcd& rho);
double von_neumann_entropy(const FockDensityMatrix& rho);

/// Entropy of a thermal state, g(n) = (n+1) log2(n+1) - n log2 n.
double thermal_entropy_bits(double nbar);

/// Entropy of a Gaussian mode with symplectic eigenvalue nu: g((nu-1)/2).
double gaussian_entropy_from_symplectic(double nu);

}  // namespace cvqkd
