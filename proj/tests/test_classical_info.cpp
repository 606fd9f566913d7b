#include <doctest.h>

#include <cmath>

#include "cvqkd/classical_info.hpp"
#include "cvqkd/errors.hpp"
#include "cvqkd/kgr.hpp"

using namespace cvqkd;

TEST_CASE("Simpson grid") {
    const auto g = QuadratureGrid::simpson(-2.0, 3.0, 11);
    REQUIRE(g.size() == 11);
    double wsum = 0.0;
    for (double w : g.weights) wsum += w;
    CHECK(wsum == doctest::Approx(5.0).epsilon(1e-12));
    // cubic integrated exactly
    const double integral = g.integrate([](double x) { return x * x * x - x; });
    CHECK(integral == doctest::Approx(65.0 / 4.0 - 5.0 / 2.0).epsilon(1e-12));
    CHECK_THROWS_AS(QuadratureGrid::simpson(0.0, 1.0, 4), std::domain_error);
    CHECK_THROWS_AS(QuadratureGrid::simpson(0.0, 1.0, 1), std::domain_error);
}

TEST_CASE("conditional outcome density") {
    const auto ch = ChannelParams::from_distance(0.0, 0.2, 0.0);
    CHECK(p_b_given_a(0.0, 0.0, ch) == doctest::Approx(1.0 / std::sqrt(2.0 * M_PI)).epsilon(1e-12));

    const auto ch2 = ChannelParams::from_distance(35.0, 0.2, 0.0);
    const double mean = 2.0 * std::sqrt(ch2.eta) * 0.7;
    CHECK(p_b_given_a(mean, 0.7, ch2) ==
          doctest::Approx(1.0 / std::sqrt(2.0 * M_PI)).epsilon(1e-12));

    // normalization by quadrature
    const auto grid = QuadratureGrid::simpson(mean - 10.0, mean + 10.0, 801);
    const double total = grid.integrate([&](double x) { return p_b_given_a(x, 0.7, ch2); });
    CHECK(total == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("average outcome density") {
    const auto ch = ChannelParams::from_distance(0.0, 0.2, 0.0);
    SUBCASE("QAM collapses to a two-component mixture in x") {
        const Constellation c = build_qam(2, 1.0, 0.0);
        const double x_a = std::sqrt(2.0) / 2.0;
        for (double x : {-1.3, 0.0, 0.4, 2.2}) {
            const double direct =
                0.5 * (p_b_given_a(x, x_a, ch) + p_b_given_a(x, -x_a, ch));
            CHECK(p_b(x, c, ch) == doctest::Approx(direct).epsilon(1e-12));
        }
    }
    SUBCASE("symmetric constellations give even densities") {
        const Constellation c = build_qam(4, 2.0, 1.1);
        for (double x : {0.3, 1.7, 4.0})
            CHECK(p_b(x, c, ch) == doctest::Approx(p_b(-x, c, ch)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(p_b(0.0, gg02_descriptor(1.0), ch), std::domain_error);
}

TEST_CASE("mutual information basics") {
    const auto ch = ChannelParams::from_distance(10.0, 0.2, 0.0);
    SUBCASE("identity of the result fields") {
        const auto r = mutual_information(build_qam(4, 1.0, 0.0), ch);
        CHECK(r.i_ab == doctest::Approx(r.h_b - r.h_b_given_a).epsilon(1e-12));
        CHECK(r.h_b_given_a == doctest::Approx(0.5 * std::log2(2.0 * M_PI * M_E)).epsilon(1e-12));
        CHECK(r.i_ab > 0.0);
    }
    SUBCASE("vanishing energy gives vanishing information") {
        const auto r = mutual_information(build_qam(4, 1e-9, 0.0), ch);
        CHECK(r.i_ab < 1e-6);
    }
    SUBCASE("entropy ceiling at large energy") {
        const auto ch0 = ChannelParams::from_distance(0.0, 0.2, 0.0);
        const auto r = mutual_information(build_qam(4, 1000.0, 0.0), ch0);
        CHECK(r.i_ab < 2.0 + 1e-9);
        CHECK(r.i_ab > 2.0 - 0.02);
    }
    SUBCASE("capacity approached by shaped QAM16 at low received energy") {
        const auto ch0 = ChannelParams::from_distance(0.0, 0.2, 0.0);
        const double nbar = 0.1;
        const double nu = optimize_nu_mutual_info(4, nbar, ch0);
        const auto r = mutual_information(build_qam(4, nbar, nu), ch0);
        const double cap = 0.5 * std::log2(1.0 + 2.0 * nbar);
        CHECK(r.i_ab <= cap + 1e-9);
        CHECK(cap - r.i_ab < 0.01);
    }
}

TEST_CASE("capacity and entropy ceilings over a parameter sweep") {
    for (double d : {0.0, 25.0, 80.0}) {
        const auto ch = ChannelParams::from_distance(d, 0.2, 0.0);
        for (double nbar : {0.05, 0.5, 3.0}) {
            for (double nu : {0.0, 1.0}) {
                const auto r = mutual_information(build_qam(4, nbar, nu), ch);
                const double cap = 0.5 * std::log2(1.0 + 2.0 * ch.eta * nbar);
                CHECK(r.i_ab <= std::min(cap, 2.0) + 1e-9);
            }
        }
    }
}

TEST_CASE("shaping never hurts the optimized mutual information") {
    for (double d : {5.0, 60.0}) {
        const auto ch = ChannelParams::from_distance(d, 0.2, 0.0);
        for (double nbar : {0.2, 1.0, 6.0}) {
            const double i0 = mutual_information(build_qam(4, nbar, 0.0), ch).i_ab;
            const double nu = optimize_nu_mutual_info(4, nbar, ch);
            const double i1 = mutual_information(build_qam(4, nbar, nu), ch).i_ab;
            CHECK(i1 >= i0 - 1e-9);
        }
    }
}

TEST_CASE("quadrature convergence at the default policy") {
    const auto ch = ChannelParams::from_distance(20.0, 0.2, 0.0);
    const Constellation c = build_qam(4, 1.5, 0.8);
    GridPolicy coarse, fine;
    fine.points = 2 * coarse.points - 1;
    const double i0 = mutual_information(c, ch, coarse).i_ab;
    const double i1 = mutual_information(c, ch, fine).i_ab;
    CHECK(std::abs(i1 - i0) < 1e-6);
}

TEST_CASE("thermal mutual information uses the widened variance") {
    const auto pure = ChannelParams::from_distance(50.0, 0.2, 0.0);
    const auto noisy = ChannelParams::from_distance(50.0, 0.2, 0.05);
    const Constellation c = build_qam(4, 1.0, 0.0);
    const auto r0 = mutual_information(c, pure);
    const auto r1 = mutual_information(c, noisy);
    CHECK(r1.h_b_given_a ==
          doctest::Approx(0.5 * std::log2(2.0 * M_PI * M_E * noisy.sigma_eps_sq)).epsilon(1e-12));
    CHECK(r1.i_ab < r0.i_ab);
}

TEST_CASE("gg02 mutual information closed form") {
    CHECK(gg02_mutual_information(1.0, ChannelParams::from_eta(0.5)) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(gg02_mutual_information(0.0, ChannelParams::from_eta(1.0)) == 0.0);
    CHECK(gg02_mutual_information(5.0, ChannelParams::from_eta(0.1)) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(gg02_mutual_information(1.0, ChannelParams::from_distance(10.0, 0.2, 0.01)),
                    std::domain_error);
}
