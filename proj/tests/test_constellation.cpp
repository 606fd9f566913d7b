#include <doctest.h>

#include <cmath>
#include <complex>

#include "cvqkd/constellation.hpp"

using namespace cvqkd;

namespace {

double total_prob(const Constellation& c) {
    double s = 0.0;
    for (double p : c.probs) s += p;
    return s;
}

double energy(const Constellation& c) {
    double e = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) e += c.probs[i] * std::norm(c.symbols[i]);
    return e;
}

}  // namespace

TEST_CASE("lattice points are symmetric with spacing delta") {
    const Lattice1D lat = Lattice1D::make(8, 0.7);
    REQUIRE(lat.points.size() == 8);
    for (int i = 0; i < 8; ++i) CHECK(lat.points[i] == -lat.points[7 - i]);
    for (int i = 1; i < 8; ++i)
        CHECK(lat.points[i] - lat.points[i - 1] == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("solve_delta_uniform closed form") {
    CHECK(solve_delta_uniform(4, 2.5) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(solve_delta_uniform(2, 1.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    // zero-energy limit
    CHECK(solve_delta_uniform(4, 1e-12) < 1e-5);
    CHECK_THROWS_AS(solve_delta_uniform(4, 0.0), std::domain_error);
    CHECK_THROWS_AS(solve_delta_uniform(1, 1.0), std::domain_error);
    CHECK_THROWS_AS(solve_delta_uniform(3, 1.0), std::domain_error);
}

TEST_CASE("solve_delta_uniform satisfies the energy constraint") {
    for (int M : {2, 4, 8}) {
        for (double nbar : {0.1, 1.0, 7.5}) {
            const double delta = solve_delta_uniform(M, nbar);
            const Lattice1D lat = Lattice1D::make(M, delta);
            double var = 0.0;
            for (double z : lat.points) var += z * z / M;
            CHECK(var == doctest::Approx(nbar / 2.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("mb_weights limits") {
    SUBCASE("nu = 0 is uniform") {
        const auto d = mb_weights(0.0, 4);
        for (double w : d.weights) CHECK(w == 0.25);
    }
    SUBCASE("large nu concentrates on the innermost levels") {
        const auto d = mb_weights(100.0, 4);
        CHECK(d.weights[1] == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(d.weights[2] == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(d.weights[0] < 1e-12);
        CHECK(d.weights[3] < 1e-12);
    }
    SUBCASE("M = 2 is uniform by symmetry") {
        const auto d = mb_weights(1.0, 2);
        CHECK(d.weights[0] == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(d.weights[1] == doctest::Approx(0.5).epsilon(1e-14));
    }
    SUBCASE("outer weights vanish for nu > 60") {
        const auto d = mb_weights(61.0, 8);
        for (int i : {0, 1, 2, 5, 6, 7}) CHECK(d.weights[i] < 1e-12);
    }
    CHECK_THROWS_AS(mb_weights(-0.1, 4), std::domain_error);
}

TEST_CASE("mb weights sum to one and are symmetric") {
    for (double nu : {0.0, 0.3, 2.0, 20.0}) {
        for (int M : {2, 4, 8, 16}) {
            const auto d = mb_weights(nu, M);
            double s = 0.0;
            for (double w : d.weights) s += w;
            CHECK(s == doctest::Approx(1.0).epsilon(1e-13));
            for (int i = 0; i < M; ++i) CHECK(d.weights[i] == d.weights[M - 1 - i]);
        }
    }
}

TEST_CASE("solve_delta_mb satisfies the energy constraint") {
    SUBCASE("nu = 0 reduces to the uniform closed form") {
        const auto [delta, beta] = solve_delta_mb(0.0, 4, 2.5);
        CHECK(delta == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(beta == 0.0);
    }
    SUBCASE("variance recomputed from the returned weights") {
        const auto [delta, beta] = solve_delta_mb(2.0, 4, 1.0);
        const auto d = mb_weights(2.0, 4);
        const Lattice1D lat = Lattice1D::make(4, delta);
        double var = 0.0;
        for (int i = 0; i < 4; ++i) var += d.weights[i] * lat.points[i] * lat.points[i];
        CHECK(var == doctest::Approx(0.5).epsilon(1e-10));
        CHECK(beta == doctest::Approx(2.0 / (delta * delta)).epsilon(1e-13));
    }
}

TEST_CASE("spacing grows with shaping at fixed energy") {
    const double d0 = solve_delta_mb(0.0, 4, 1.7).delta;
    double prev = d0;
    for (double nu = 0.5; nu <= 40.0; nu += 0.5) {
        const double d = solve_delta_mb(nu, 4, 1.7).delta;
        CHECK(d >= prev - 1e-13);
        prev = d;
    }
    CHECK(prev > d0);
}

TEST_CASE("build_qam basics") {
    SUBCASE("4 symbols for M = 2") {
        const Constellation c = build_qam(2, 1.0, 0.0);
        REQUIRE(c.size() == 4);
        const double half = std::sqrt(2.0) / 2.0;
        for (const auto& s : c.symbols) {
            CHECK(std::abs(std::abs(s.real()) - half) < 1e-12);
            CHECK(std::abs(std::abs(s.imag()) - half) < 1e-12);
        }
        for (double p : c.probs) CHECK(p == doctest::Approx(0.25).epsilon(1e-13));
        CHECK(c.kind == ConstellationKind::QamUniform);
    }
    SUBCASE("corner energy of uniform QAM16 with nbar = 2.5") {
        const Constellation c = build_qam(4, 2.5, 0.0);
        REQUIRE(c.size() == 16);
        double max_e = 0.0;
        for (const auto& s : c.symbols) max_e = std::max(max_e, std::norm(s));
        CHECK(max_e == doctest::Approx(4.5).epsilon(1e-12));
    }
    SUBCASE("probabilities and energy meet the invariants") {
        for (double nu : {0.0, 1.3, 12.0}) {
            const Constellation c = build_qam(4, 0.8, nu);
            CHECK(total_prob(c) == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(energy(c) == doctest::Approx(0.8).epsilon(1e-9));
            CHECK(c.x_marginal_symmetric());
            for (double p : c.probs) CHECK(p >= 0.0);
        }
    }
}

TEST_CASE("build_psk phases and modulus") {
    SUBCASE("PSK4 at nbar = 1") {
        const Constellation c = build_psk(4, 1.0);
        REQUIRE(c.size() == 4);
        for (int k = 0; k < 4; ++k) {
            const double th = (2.0 * k + 1.0) * M_PI / 4.0;
            CHECK(c.symbols[k].real() == doctest::Approx(std::cos(th)).epsilon(1e-12));
            CHECK(c.symbols[k].imag() == doctest::Approx(std::sin(th)).epsilon(1e-12));
        }
    }
    SUBCASE("PSK2 at nbar = 4 sits on the imaginary axis") {
        const Constellation c = build_psk(2, 4.0);
        REQUIRE(c.size() == 2);
        CHECK(std::abs(c.symbols[0] - std::complex<double>(0.0, 2.0)) < 1e-12);
        CHECK(std::abs(c.symbols[1] - std::complex<double>(0.0, -2.0)) < 1e-12);
    }
    SUBCASE("constant modulus and marginal bookkeeping") {
        for (int N : {2, 4, 16, 64}) {
            const Constellation c = build_psk(N, 2.3);
            for (const auto& s : c.symbols) CHECK(std::norm(s) == doctest::Approx(2.3).epsilon(1e-12));
            CHECK(total_prob(c) == doctest::Approx(1.0).epsilon(1e-12));
            double marg = 0.0;
            for (double p : c.marginal_px) marg += p;
            CHECK(marg == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(c.x_marginal_symmetric(1e-9));
            for (std::size_t i = 0; i < c.size(); ++i)
                CHECK(c.marginal_x[c.marginal_index[i]] ==
                      doctest::Approx(c.symbols[i].real()).epsilon(1e-9));
        }
    }
    CHECK_THROWS_AS(build_psk(1, 1.0), std::domain_error);
}

TEST_CASE("large-nu QAM collapses onto the inner QAM4 sublattice") {
    const Constellation c = build_qam(4, 1.0, 70.0);
    double outer = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double r = std::abs(c.symbols[i].real()) / c.delta;
        const double im = std::abs(c.symbols[i].imag()) / c.delta;
        if (r > 0.6 || im > 0.6) outer += c.probs[i];
    }
    CHECK(outer < 1e-12);
}

TEST_CASE("gg02 descriptor") {
    const Constellation c = gg02_descriptor(1.5);
    CHECK(!c.is_discrete());
    CHECK(c.mean_energy == 1.5);
    CHECK(c.size() == 0);
}
