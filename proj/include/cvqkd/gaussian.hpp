#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace cvqkd {

/// n-mode Gaussian state: first-moment vector and covariance matrix in
/// shot-noise units (vacuum CM = identity), quadrature order q1,p1,q2,p2,...
struct GaussianState {
    Eigen::VectorXd fm;
    Eigen::MatrixXd cm;

    int n_modes() const { return static_cast<int>(fm.size()) / 2; }

    /// Symplectic spectrum of the CM; physical states have all values >= 1.
    std::vector<double> symplectic_eigenvalues() const;
    bool physical(double tol = 1e-9) const;

    /// Mean photon number of one mode: (sigma_qq + sigma_pp + q^2 + p^2)/4 - 1/2.
    double mode_mean_photons(int mode) const;

    /// Partial trace onto the listed modes (order preserved as given).
    GaussianState reduced(const std::vector<int>& modes) const;
};

GaussianState vacuum(int n_modes);
GaussianState coherent(double x_a, double y_a);
GaussianState thermal(double nbar);

/// Two-mode squeezed vacuum with quadrature variance v_eps >= 1:
/// CM blocks v I on the diagonal and sqrt(v^2-1) sigma_z off-diagonal.
GaussianState tmsv(double v_eps);

GaussianState tensor(const GaussianState& a, const GaussianState& b);

struct SymplecticMap {
    Eigen::MatrixXd matrix;

    bool is_symplectic(double tol = 1e-10) const;
};

/// Beam splitter of transmissivity eta acting on (mode_a, mode_b) of an
/// n-mode register; identity on the remaining modes. Output mode_a is the
/// transmitted port: q_a' = sqrt(eta) q_a + sqrt(1-eta) q_b.
SymplecticMap beam_splitter(double eta, int mode_a = 0, int mode_b = 1, int n_modes = 2);

GaussianState evolve(const GaussianState& state, const SymplecticMap& map);

struct HomodyneResult {
    GaussianState state;  // conditional state of the unmeasured modes
    double density;       // q-quadrature marginal of the measured mode at x_b
};

/// Condition on a q-homodyne outcome x_b on one mode. Implements the
/// analytic z->0 limit of the measurement CM diag(z, 1/z): the inverse
/// (sigma_A + sigma_m)^-1 collapses to diag(1/sigma_qq, 0), i.e. the
/// Moore-Penrose pseudo-inverse of the projected q-block.
HomodyneResult condition_on_homodyne_q(const GaussianState& state, int measured_mode, double x_b);

/// Truncation rule ceil(mu + 7 sqrt(mu) + 10), capped.
int auto_cutoff(double mean_photons, int cap = 64);

/// Fock-basis expansion of a Gaussian state from its complex-basis
/// covariance data. The FM-independent pieces (sigma_Q, A) are computed
/// once; set_first_moments() retargets the expansion to a displaced copy
/// sharing the same CM.
class FockExpansion {
public:
    explicit FockExpansion(const GaussianState& state);

    void set_first_moments(const Eigen::VectorXd& fm);

    /// Dense truncated density matrix; mode s runs over 0..cutoffs[s],
    /// multi-indices flattened row-major with the last mode fastest.
    Eigen::MatrixXcd matrix(const std::vector<int>& cutoffs) const;

    /// Single element <m|rho|k>.
    std::complex<double> element(const std::vector<int>& m, const std::vector<int>& k) const;

    int n_modes() const { return n_modes_; }
    const Eigen::MatrixXcd& sigma_q() const { return sigma_q_; }
    const Eigen::MatrixXcd& a_mat() const { return a_mat_; }
    const Eigen::VectorXcd& gamma() const { return gamma_; }

private:
    std::vector<std::complex<double>> derivative_table(const std::vector<int>& box) const;

    int n_modes_ = 0;
    Eigen::MatrixXcd u_;            // quadrature -> complex basis
    Eigen::MatrixXcd sigma_q_;      // sigma_tilde + I/2
    Eigen::MatrixXcd sigma_q_inv_;
    Eigen::MatrixXcd a_mat_;        // X (I - sigma_Q^-1), symmetrized
    double log_sqrt_det_sigma_q_ = 0.0;
    Eigen::VectorXcd gamma_;
    double exponent_ = 0.0;         // -1/2 beta^dag sigma_Q^-1 beta
};

}  // namespace cvqkd
