#pragma once

#include <cmath>

namespace cvqkd {

struct GoldenResult {
    double x = 0.0;
    double value = 0.0;
    int evals = 0;
};

/// Golden-section maximization of a unimodal scalar function on [lo, hi].
///
/// Stops when the bracket is narrower than tol_x, or (if rel_f_tol > 0)
/// when the two interior probes agree to rel_f_tol in relative terms.
/// Deterministic: fixed probe sequence, no randomness.
template <typename F>
GoldenResult golden_section_maximize(F&& f, double lo, double hi, double tol_x,
                                     double rel_f_tol = 0.0, int max_evals = 200) {
    constexpr double inv_phi = 0.6180339887498949;  // 1/phi
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    int evals = 2;
    while (b - a > tol_x && evals < max_evals) {
        if (rel_f_tol > 0.0) {
            const double scale = std::max(std::abs(fc), std::abs(fd));
            if (std::abs(fc - fd) <= rel_f_tol * scale) break;
        }
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        ++evals;
    }
    return fc > fd ? GoldenResult{c, fc, evals} : GoldenResult{d, fd, evals};
}

}  // namespace cvqkd
