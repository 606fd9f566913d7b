#include <doctest.h>

#include <cmath>

#include "cvqkd/channel.hpp"

using namespace cvqkd;

TEST_CASE("channel from distance") {
    SUBCASE("identity channel at d = 0") {
        const auto ch = ChannelParams::from_distance(0.0, 0.2, 0.0);
        CHECK(ch.eta == 1.0);
        CHECK(ch.sigma_eps_sq == 1.0);
        CHECK(ch.nbar_eps == 0.0);
    }
    SUBCASE("50 km of standard fiber is 10 dB") {
        const auto ch = ChannelParams::from_distance(50.0, 0.2, 0.0);
        CHECK(ch.eta == doctest::Approx(0.1).epsilon(1e-12));
    }
    SUBCASE("cloner photon number") {
        const auto ch = ChannelParams::from_distance(50.0, 0.2, 0.05);
        CHECK(ch.nbar_eps == doctest::Approx(0.1 * 0.05 / (2.0 * 0.9)).epsilon(1e-12));
        CHECK(ch.sigma_eps_sq == doctest::Approx(1.0 + 0.1 * 0.05).epsilon(1e-12));
    }
    SUBCASE("exponential law") {
        for (double d : {1.0, 10.0, 123.4}) {
            const auto ch = ChannelParams::from_distance(d, 0.2, 0.0);
            CHECK(ch.eta == doctest::Approx(std::pow(10.0, -0.02 * d)).epsilon(1e-12));
        }
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(ChannelParams::from_distance(0.0, 0.2, 0.1), std::domain_error);
        CHECK_THROWS_AS(ChannelParams::from_distance(-1.0, 0.2, 0.0), std::domain_error);
        CHECK_THROWS_AS(ChannelParams::from_distance(1.0, 0.0, 0.0), std::domain_error);
        CHECK_THROWS_AS(ChannelParams::from_distance(1.0, 0.2, -0.1), std::domain_error);
    }
}

TEST_CASE("eta strictly decreases with distance") {
    double prev = 1.1;
    for (double d = 0.0; d <= 200.0; d += 5.0) {
        const auto ch = ChannelParams::from_distance(d, 0.2, 0.0);
        CHECK(ch.eta < prev);
        prev = ch.eta;
    }
}

TEST_CASE("thermal channel degrades continuously to pure loss") {
    for (double eps : {1e-3, 1e-6, 1e-9}) {
        const auto ch = ChannelParams::from_distance(30.0, 0.2, eps);
        CHECK(ch.sigma_eps_sq == doctest::Approx(1.0).epsilon(1e-2));
        CHECK(ch.sigma_eps_sq > 1.0);
    }
}

TEST_CASE("from_eta round trip") {
    for (double eta : {0.9, 0.5, 0.01}) {
        const auto ch = ChannelParams::from_eta(eta, 0.0);
        CHECK(ch.eta == doctest::Approx(eta).epsilon(1e-12));
    }
    CHECK(ChannelParams::from_eta(1.0, 0.0).distance_km == 0.0);
    CHECK_THROWS_AS(ChannelParams::from_eta(0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(ChannelParams::from_eta(1.5, 0.0), std::domain_error);
}
