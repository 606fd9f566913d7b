#include "cvqkd/gaussian.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cvqkd/errors.hpp"

namespace cvqkd {

namespace {

using Cx = std::complex<double>;

Eigen::MatrixXd symplectic_form(int n_modes) {
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
    for (int m = 0; m < n_modes; ++m) {
        omega(2 * m, 2 * m + 1) = 1.0;
        omega(2 * m + 1, 2 * m) = -1.0;
    }
    return omega;
}

// sqrt(n!) reciprocals for the expansion prefactor, in double via lgamma.
double inv_sqrt_factorial(int n) { return std::exp(-0.5 * std::lgamma(n + 1.0)); }

}  // namespace

std::vector<double> GaussianState::symplectic_eigenvalues() const {
    const int n = n_modes();
    const Eigen::MatrixXd m = symplectic_form(n) * cm;
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, /*computeEigenvectors=*/false);
    std::vector<double> mags(2 * n);
    for (int i = 0; i < 2 * n; ++i) mags[i] = std::abs(es.eigenvalues()(i));
    std::sort(mags.begin(), mags.end());
    // Eigenvalues come in +-i nu pairs; keep one of each.
    std::vector<double> nus(n);
    for (int i = 0; i < n; ++i) nus[i] = mags[2 * i];
    return nus;
}

bool GaussianState::physical(double tol) const {
    if (!cm.isApprox(cm.transpose(), 1e-12)) return false;
    for (double nu : symplectic_eigenvalues())
        if (nu < 1.0 - tol) return false;
    return true;
}

double GaussianState::mode_mean_photons(int mode) const {
    const int q = 2 * mode, p = 2 * mode + 1;
    return 0.25 * (cm(q, q) + cm(p, p) + fm(q) * fm(q) + fm(p) * fm(p)) - 0.5;
}

GaussianState GaussianState::reduced(const std::vector<int>& modes) const {
    const int k = static_cast<int>(modes.size());
    GaussianState out;
    out.fm.resize(2 * k);
    out.cm.resize(2 * k, 2 * k);
    for (int i = 0; i < k; ++i) {
        out.fm(2 * i) = fm(2 * modes[i]);
        out.fm(2 * i + 1) = fm(2 * modes[i] + 1);
        for (int j = 0; j < k; ++j)
            out.cm.block<2, 2>(2 * i, 2 * j) = cm.block<2, 2>(2 * modes[i], 2 * modes[j]);
    }
    return out;
}

GaussianState vacuum(int n_modes) {
    GaussianState s;
    s.fm = Eigen::VectorXd::Zero(2 * n_modes);
    s.cm = Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
    return s;
}

GaussianState coherent(double x_a, double y_a) {
    GaussianState s = vacuum(1);
    s.fm << 2.0 * x_a, 2.0 * y_a;
    return s;
}

GaussianState thermal(double nbar) {
    if (nbar < 0.0) throw std::domain_error("thermal photon number must be nonnegative");
    GaussianState s = vacuum(1);
    s.cm *= 1.0 + 2.0 * nbar;
    return s;
}

GaussianState tmsv(double v_eps) {
    if (v_eps < 1.0) throw std::domain_error("TMSV variance must be >= 1");
    const double z = std::sqrt(v_eps * v_eps - 1.0);
    GaussianState s = vacuum(2);
    s.cm *= v_eps;
    s.cm(0, 2) = s.cm(2, 0) = z;
    s.cm(1, 3) = s.cm(3, 1) = -z;
    return s;
}

GaussianState tensor(const GaussianState& a, const GaussianState& b) {
    GaussianState s;
    const int na = static_cast<int>(a.fm.size()), nb = static_cast<int>(b.fm.size());
    s.fm.resize(na + nb);
    s.fm << a.fm, b.fm;
    s.cm = Eigen::MatrixXd::Zero(na + nb, na + nb);
    s.cm.topLeftCorner(na, na) = a.cm;
    s.cm.bottomRightCorner(nb, nb) = b.cm;
    return s;
}

bool SymplecticMap::is_symplectic(double tol) const {
    const int n = static_cast<int>(matrix.rows()) / 2;
    const Eigen::MatrixXd omega = symplectic_form(n);
    return (matrix * omega * matrix.transpose() - omega).cwiseAbs().maxCoeff() <= tol;
}

SymplecticMap beam_splitter(double eta, int mode_a, int mode_b, int n_modes) {
    if (!(eta > 0.0) || eta > 1.0) throw std::domain_error("transmissivity must be in (0, 1]");
    if (mode_a == mode_b || mode_a < 0 || mode_b < 0 || mode_a >= n_modes || mode_b >= n_modes)
        throw std::domain_error("beam splitter needs two distinct modes in range");
    const double t = std::sqrt(eta), r = std::sqrt(1.0 - eta);
    SymplecticMap map;
    map.matrix = Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes);
    const Eigen::Matrix2d id2 = Eigen::Matrix2d::Identity();
    map.matrix.block<2, 2>(2 * mode_a, 2 * mode_a) = t * id2;
    map.matrix.block<2, 2>(2 * mode_a, 2 * mode_b) = r * id2;
    map.matrix.block<2, 2>(2 * mode_b, 2 * mode_a) = -r * id2;
    map.matrix.block<2, 2>(2 * mode_b, 2 * mode_b) = t * id2;
    return map;
}

GaussianState evolve(const GaussianState& state, const SymplecticMap& map) {
    if (map.matrix.rows() != state.fm.size())
        throw std::domain_error("symplectic map dimension does not match state");
    GaussianState out;
    out.fm = map.matrix * state.fm;
    out.cm = map.matrix * state.cm * map.matrix.transpose();
    out.cm = 0.5 * (out.cm + out.cm.transpose()).eval();
    return out;
}

HomodyneResult condition_on_homodyne_q(const GaussianState& state, int measured_mode,
                                       double x_b) {
    const int n = state.n_modes();
    if (n < 2) throw std::domain_error("conditioning needs at least two modes");
    if (measured_mode < 0 || measured_mode >= n)
        throw std::domain_error("measured mode out of range");

    const int q = 2 * measured_mode;
    const double var_q = state.cm(q, q);
    if (!(var_q > 0.0)) throw NumericalError("degenerate q-variance in homodyne conditioning");

    std::vector<int> rest;
    rest.reserve(n - 1);
    for (int m = 0; m < n; ++m)
        if (m != measured_mode) rest.push_back(m);

    // Row of cross covariances between the measured q and the kept modes.
    Eigen::VectorXd zq(2 * (n - 1));
    for (int i = 0; i < n - 1; ++i) {
        zq(2 * i) = state.cm(q, 2 * rest[i]);
        zq(2 * i + 1) = state.cm(q, 2 * rest[i] + 1);
    }

    GaussianState cond = state.reduced(rest);
    const double shift = (x_b - state.fm(q)) / var_q;
    cond.fm += zq * shift;
    cond.cm -= (zq * zq.transpose()) / var_q;
    cond.cm = 0.5 * (cond.cm + cond.cm.transpose()).eval();

    const double z = x_b - state.fm(q);
    const double density =
        std::exp(-z * z / (2.0 * var_q)) / std::sqrt(2.0 * M_PI * var_q);
    return {std::move(cond), density};
}

int auto_cutoff(double mean_photons, int cap) {
    const double mu = std::max(mean_photons, 0.0);
    const int c = static_cast<int>(std::ceil(mu + 7.0 * std::sqrt(mu) + 10.0));
    return std::min(c, cap);
}

FockExpansion::FockExpansion(const GaussianState& state) {
    n_modes_ = state.n_modes();
    const int d = 2 * n_modes_;

    u_ = Eigen::MatrixXcd::Zero(d, d);
    for (int m = 0; m < n_modes_; ++m) {
        u_(2 * m, 2 * m) = 0.5;
        u_(2 * m, 2 * m + 1) = Cx(0.0, 0.5);
        u_(2 * m + 1, 2 * m) = 0.5;
        u_(2 * m + 1, 2 * m + 1) = Cx(0.0, -0.5);
    }

    const Eigen::MatrixXcd sigma_tilde = u_ * state.cm * u_.adjoint();
    sigma_q_ = sigma_tilde + 0.5 * Eigen::MatrixXcd::Identity(d, d);
    sigma_q_inv_ = sigma_q_.inverse();

    const Cx det = sigma_q_.determinant();
    if (!(det.real() > 0.0) || std::abs(det.imag()) > 1e-9 * std::abs(det.real()))
        throw NumericalError("sigma_Q is singular or non-physical in the Fock expansion");
    log_sqrt_det_sigma_q_ = 0.5 * std::log(det.real());

    Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(d, d);
    for (int m = 0; m < n_modes_; ++m) {
        x(2 * m, 2 * m + 1) = 1.0;
        x(2 * m + 1, 2 * m) = 1.0;
    }
    const Eigen::MatrixXcd a = x * (Eigen::MatrixXcd::Identity(d, d) - sigma_q_inv_);
    a_mat_ = 0.5 * (a + a.transpose());  // the quadratic form sees only the symmetric part

    set_first_moments(state.fm);
}

void FockExpansion::set_first_moments(const Eigen::VectorXd& fm) {
    const Eigen::VectorXcd beta = u_ * fm;
    gamma_ = sigma_q_inv_.transpose() * beta.conjugate();
    exponent_ = -0.5 * (beta.adjoint() * sigma_q_inv_ * beta)(0).real();
}

// D table over the 2n derivative variables (alpha_1, alpha*_1, ...):
// D_0 = 1, D_{b+e_s} = gamma_s D_b + sum_t A_{s,t} b_t D_{b-e_t}.
std::vector<Cx> FockExpansion::derivative_table(const std::vector<int>& box) const {
    const int nv = static_cast<int>(box.size());
    std::vector<int> stride(nv);
    long total = 1;
    for (int v = nv - 1; v >= 0; --v) {
        stride[v] = static_cast<int>(total);
        total *= box[v];
    }
    std::vector<Cx> table(static_cast<std::size_t>(total));
    std::vector<int> idx(nv, 0);
    table[0] = 1.0;
    for (long flat = 1; flat < total; ++flat) {
        // Row-major odometer increment (last variable fastest).
        int v = nv - 1;
        while (idx[v] + 1 == box[v]) idx[v--] = 0;
        ++idx[v];

        int s = 0;
        while (idx[s] == 0) ++s;
        const long base = flat - stride[s];  // index of b = idx - e_s
        Cx val = gamma_(s) * table[base];
        for (int t = 0; t < nv; ++t) {
            const int bt = idx[t] - (t == s ? 1 : 0);
            if (bt > 0) val += a_mat_(s, t) * static_cast<double>(bt) * table[base - stride[t]];
        }
        table[flat] = val;
    }
    return table;
}

Eigen::MatrixXcd FockExpansion::matrix(const std::vector<int>& cutoffs) const {
    if (static_cast<int>(cutoffs.size()) != n_modes_)
        throw std::domain_error("one cutoff per mode required");

    // Variable 2s differentiates alpha_s (column index k_s), variable
    // 2s+1 differentiates alpha*_s (row index m_s).
    std::vector<int> box(2 * n_modes_);
    long dim = 1;
    for (int s = 0; s < n_modes_; ++s) {
        box[2 * s] = cutoffs[s] + 1;
        box[2 * s + 1] = cutoffs[s] + 1;
        dim *= cutoffs[s] + 1;
    }
    const std::vector<Cx> table = derivative_table(box);

    std::vector<int> vstride(2 * n_modes_);
    {
        long total = 1;
        for (int v = 2 * n_modes_ - 1; v >= 0; --v) {
            vstride[v] = static_cast<int>(total);
            total *= box[v];
        }
    }

    const double t0 = std::exp(exponent_ - log_sqrt_det_sigma_q_);

    Eigen::MatrixXcd rho(dim, dim);
    std::vector<int> m(n_modes_, 0), k(n_modes_, 0);
    for (long row = 0; row < dim; ++row) {
        double fm_row = 1.0;
        for (int s = 0; s < n_modes_; ++s) fm_row *= inv_sqrt_factorial(m[s]);
        std::fill(k.begin(), k.end(), 0);
        for (long col = 0; col < dim; ++col) {
            long flat = 0;
            double fk = 1.0;
            for (int s = 0; s < n_modes_; ++s) {
                flat += static_cast<long>(k[s]) * vstride[2 * s] +
                        static_cast<long>(m[s]) * vstride[2 * s + 1];
                fk *= inv_sqrt_factorial(k[s]);
            }
            rho(row, col) = t0 * fm_row * fk * table[flat];
            int s = n_modes_ - 1;
            while (s >= 0 && k[s] + 1 > cutoffs[s]) k[s--] = 0;
            if (s >= 0) ++k[s];
        }
        int s = n_modes_ - 1;
        while (s >= 0 && m[s] + 1 > cutoffs[s]) m[s--] = 0;
        if (s >= 0) ++m[s];
    }
    if (!rho.allFinite()) throw NumericalError("Fock expansion overflowed");
    return rho;
}

std::complex<double> FockExpansion::element(const std::vector<int>& m,
                                            const std::vector<int>& k) const {
    if (static_cast<int>(m.size()) != n_modes_ || static_cast<int>(k.size()) != n_modes_)
        throw std::domain_error("multi-index length must equal the mode count");
    std::vector<int> box(2 * n_modes_);
    for (int s = 0; s < n_modes_; ++s) {
        if (m[s] < 0 || k[s] < 0) throw std::domain_error("negative Fock index");
        box[2 * s] = k[s] + 1;
        box[2 * s + 1] = m[s] + 1;
    }
    const std::vector<Cx> table = derivative_table(box);
    double fact = 1.0;
    for (int s = 0; s < n_modes_; ++s)
        fact *= inv_sqrt_factorial(m[s]) * inv_sqrt_factorial(k[s]);
    return std::exp(exponent_ - log_sqrt_det_sigma_q_) * fact * table.back();
}

}  // namespace cvqkd
