// Independent reference implementations used as test oracles. These
// deliberately avoid the library's computation paths: closed forms,
// explicit beam-splitter matrix elements, direct quadrature.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

using Cx = std::complex<double>;

inline double log2_safe(double x) { return std::log2(x); }

/// <m| a >< a |k> for a coherent state.
inline Cx coherent_fock_element(Cx alpha, int m, int k) {
    const double lf = -0.5 * (std::lgamma(m + 1.0) + std::lgamma(k + 1.0));
    return std::exp(-std::norm(alpha)) * std::pow(alpha, m) * std::pow(std::conj(alpha), k) *
           std::exp(lf);
}

/// Diagonal occupation of a thermal state.
inline double thermal_fock_occupation(double nbar, int n) {
    return std::pow(nbar / (nbar + 1.0), n) / (nbar + 1.0);
}

/// <m1 m2| TMSV >< TMSV |k1 k2> with variance v (lambda^2 = (v-1)/(v+1)).
inline Cx tmsv_fock_element(double v, int m1, int m2, int k1, int k2) {
    if (m1 != m2 || k1 != k2) return 0.0;
    const double lambda = std::sqrt((v - 1.0) / (v + 1.0));
    return (1.0 - lambda * lambda) * std::pow(lambda, m1 + k1);
}

/// g(x) = (x+1) log2(x+1) - x log2 x.
inline double g_func(double x) {
    if (x <= 0.0) return 0.0;
    return (x + 1.0) * std::log2(x + 1.0) - x * std::log2(x);
}

/// GG02 closed forms via the thermal-entropy route: chi = g(n_E) - g(n_cond)
/// with V_E = 1 + 2(1-eta)nbar and the conditional symplectic eigenvalue.
/// Algebraically equivalent to the log-bracket form but coded differently.
struct Gg02Reference {
    double i_ab;
    double chi_be;
    double k;

    Gg02Reference(double eta, double nbar, double zeta) {
        i_ab = 0.5 * std::log2(1.0 + 2.0 * eta * nbar);
        const double v_e = 1.0 + 2.0 * (1.0 - eta) * nbar;
        const double v_bar = std::sqrt((eta + (1.0 - eta) * (1.0 + 2.0 * nbar)) /
                                       (1.0 - eta + eta * (1.0 + 2.0 * nbar)) *
                                       (1.0 + 2.0 * nbar));
        chi_be = g_func(0.5 * (v_e - 1.0)) - g_func(0.5 * (v_bar - 1.0));
        k = zeta * i_ab - chi_be;
    }
};

/// Harmonic-oscillator eigenfunctions in shot-noise units (vacuum q-variance 1):
/// psi_n(x) = (2 pi)^(-1/4) / sqrt(2^n n!) H_n(x / sqrt 2) e^{-x^2/4}.
inline std::vector<double> hermite_psi(int n_max, double x) {
    std::vector<double> psi(n_max + 1);
    const double u = x / std::sqrt(2.0);
    std::vector<double> h(n_max + 1);
    h[0] = 1.0;
    if (n_max >= 1) h[1] = 2.0 * u;
    for (int n = 2; n <= n_max; ++n) h[n] = 2.0 * u * h[n - 1] - 2.0 * (n - 1) * h[n - 2];
    const double envelope = std::pow(2.0 * M_PI, -0.25) * std::exp(-x * x / 4.0);
    for (int n = 0; n <= n_max; ++n)
        psi[n] = envelope * h[n] * std::exp(-0.5 * (n * std::log(2.0) + std::lgamma(n + 1.0)));
    return psi;
}

/// Beam splitter matrix elements <p q| U |m n> from the creation-operator
/// transform U a1+ U+ = t a1+ - r a2+, U a2+ U+ = r a1+ + t a2+ with
/// t = sqrt(eta), r = sqrt(1-eta). Returns the full truncated unitary on
/// the (cutoff+1)^2 space, indices flattened as i1 * (cutoff+1) + i2.
inline Eigen::MatrixXcd beam_splitter_fock(double eta, int cutoff) {
    const int d = cutoff + 1;
    const double t = std::sqrt(eta), r = std::sqrt(1.0 - eta);
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(d * d, d * d);
    // lgamma-based binomial in double
    const auto lfact = [](int n) { return std::lgamma(n + 1.0); };
    for (int m = 0; m < d; ++m) {
        for (int n = 0; n < d; ++n) {
            // U |m n> = sum_{j<=m, l<=n} C(m,j) C(n,l) t^j (-r)^(m-j) r^l t^(n-l)
            //           * sqrt(p! q! / (m! n!)) |p=j+l, q=m-j+n-l>
            for (int j = 0; j <= m; ++j) {
                for (int l = 0; l <= n; ++l) {
                    const int p = j + l, q = m - j + n - l;
                    if (p >= d || q >= d) continue;
                    const double logmag = lfact(m) - lfact(j) - lfact(m - j) + lfact(n) -
                                          lfact(l) - lfact(n - l) +
                                          0.5 * (lfact(p) + lfact(q) - lfact(m) - lfact(n));
                    double val = std::exp(logmag) * std::pow(t, j + n - l) *
                                 std::pow(r, l + m - j);
                    if ((m - j) % 2 == 1) val = -val;
                    u(p * d + q, m * d + n) += val;
                }
            }
        }
    }
    return u;
}

inline double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a - b, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace oracle
