#include "cvqkd/fock.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

#include "cvqkd/errors.hpp"
#include "cvqkd/gaussian.hpp"

namespace cvqkd {

Eigen::VectorXcd coherent_vector(std::complex<double> alpha, int cutoff) {
    if (cutoff < 0) throw std::domain_error("cutoff must be nonnegative");
    Eigen::VectorXcd v(cutoff + 1);
    v(0) = std::exp(-0.5 * std::norm(alpha));
    for (int n = 1; n <= cutoff; ++n) v(n) = v(n - 1) * alpha / std::sqrt(static_cast<double>(n));
    return v;
}

FockDensityMatrix mixture_of_coherent(const std::vector<std::complex<double>>& amplitudes,
                                      const std::vector<double>& weights, int cutoff) {
    if (amplitudes.size() != weights.size())
        throw std::domain_error("amplitude and weight counts differ");
    double wsum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw std::domain_error("mixture weights must be nonnegative");
        wsum += w;
    }
    if (wsum > 1.0 + 1e-12) throw std::domain_error("mixture weights must sum to at most 1");

    FockDensityMatrix rho;
    rho.cutoffs = {cutoff};
    rho.mat = Eigen::MatrixXcd::Zero(cutoff + 1, cutoff + 1);
    double max_sq = 0.0;
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
        const Eigen::VectorXcd v = coherent_vector(amplitudes[i], cutoff);
        rho.mat.noalias() += weights[i] * (v * v.adjoint());
        max_sq = std::max(max_sq, std::norm(amplitudes[i]));
    }
    rho.trace_deficit = wsum - rho.mat.trace().real();
    if (rho.trace_deficit > 1e-6) {
        const int suggested =
            std::max(auto_cutoff(max_sq, 1 << 20), static_cast<int>(std::ceil(1.5 * cutoff)));
        throw CutoffError("coherent mixture lost too much trace at cutoff " +
                              std::to_string(cutoff) + "; suggest " + std::to_string(suggested),
                          suggested);
    }
    return rho;
}

double von_neumann_entropy(const Eigen::MatrixXcd& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        const double lam = es.eigenvalues()(i);
        if (lam < -1e-9)
            throw NumericalError("density matrix has eigenvalue " + std::to_string(lam) +
                                 " below the physicality tolerance");
        if (lam > 0.0) s -= lam * std::log2(lam);
    }
    return s;
}

double von_neumann_entropy(const FockDensityMatrix& rho) { return von_neumann_entropy(rho.mat); }

double thermal_entropy_bits(double nbar) {
    if (nbar < 0.0) throw std::domain_error("thermal photon number must be nonnegative");
    if (nbar == 0.0) return 0.0;
    return (nbar + 1.0) * std::log2(nbar + 1.0) - nbar * std::log2(nbar);
}

double gaussian_entropy_from_symplectic(double nu) {
    return thermal_entropy_bits(std::max(0.0, 0.5 * (nu - 1.0)));
}

}  // namespace cvqkd
