#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bswet/scenario.hpp"
#include "support/scenarios.hpp"

using namespace bswet;

TEST_CASE("path_loss reference points") {
    CHECK(path_loss(6.0) == doctest::Approx(4.6296e-6).epsilon(1e-4));
    CHECK(path_loss(6.0) == doctest::Approx(1e-3 / 216.0).epsilon(1e-14));
    CHECK(path_loss(1.0) == doctest::Approx(1.0e-3).epsilon(1e-14));
    CHECK(path_loss(4.0) == doctest::Approx(1.5625e-5).epsilon(1e-14));
}

TEST_CASE("path_loss is strictly decreasing in distance") {
    double prev = path_loss(0.5);
    for (int i = 1; i <= 100; ++i) {
        const double value = path_loss(0.5 + 0.25 * i);
        CHECK(value < prev);
        prev = value;
    }
}

TEST_CASE("path_loss rejects non-positive distance") {
    CHECK_THROWS_AS(path_loss(0.0), std::invalid_argument);
    CHECK_THROWS_AS(path_loss(-3.0), std::invalid_argument);
}

TEST_CASE("dbm_to_watts reference points") {
    CHECK(dbm_to_watts(-90.0) == doctest::Approx(1.0e-12).epsilon(1e-12));
    CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(dbm_to_watts(0.0) == doctest::Approx(1.0e-3).epsilon(1e-14));
    CHECK_THROWS_AS(dbm_to_watts(std::nan("")), std::invalid_argument);
}

TEST_CASE("wet_power reference points") {
    auto sc = testsupport::single_er_reference();
    CHECK(wet_power(sc, 0.0, 8.0) == doctest::Approx(200.0 / 192.0).epsilon(1e-14));
    CHECK(wet_power(sc, 200.0, 8.0) == doctest::Approx(0.0));
    CHECK(wet_power(sc, 9.2, 8.0) == doctest::Approx(0.99375).epsilon(1e-14));
}

TEST_CASE("wet_power rejects a CE phase that fills or exceeds the frame") {
    auto sc = testsupport::single_er_reference();
    CHECK_THROWS_AS(wet_power(sc, 1.0, 200.0), std::invalid_argument);
    CHECK_THROWS_AS(wet_power(sc, 1.0, 250.0), std::invalid_argument);
    CHECK_THROWS_AS(wet_power(sc, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(wet_power(sc, -1.0, 8.0), std::invalid_argument);
    CHECK_THROWS_AS(wet_power(sc, 201.0, 8.0), std::invalid_argument);
}

TEST_CASE("the training/WET energy split conserves the frame budget") {
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> frac(0.0, 1.0);
    for (int i = 0; i < 300; ++i) {
        auto sc = testsupport::random_scenario(gen);
        const double q = frac(gen) * sc.frame_energy();
        const double tau = frac(gen) * 0.9 * sc.frame_symbols + 1e-3;
        const double p2 = wet_power(sc, q, tau);
        const double total = q + (sc.frame_symbols - tau) * p2;
        CHECK(total == doctest::Approx(sc.frame_energy()).epsilon(1e-12));
    }
}

TEST_CASE("scenario validation rejects out-of-range fields") {
    auto good = testsupport::two_er_reference();
    CHECK_NOTHROW(good.validate());

    auto sc = good;
    sc.tx_antennas = 0;
    CHECK_THROWS_AS(sc.validate(), std::invalid_argument);

    sc = good;
    sc.frame_symbols = 0.0;
    CHECK_THROWS_AS(sc.validate(), std::invalid_argument);

    sc = good;
    sc.noise_power_watts = 0.0;
    CHECK_THROWS_AS(sc.validate(), std::invalid_argument);

    sc = good;
    sc.harvest_efficiency = 1.5;
    CHECK_THROWS_AS(sc.validate(), std::invalid_argument);

    sc = good;
    sc.ers.clear();
    CHECK_THROWS_AS(sc.validate(), std::invalid_argument);

    sc = good;
    sc.ers[1].beta = 0.0;  // validation runs after defaults; unset beta is invalid here
    CHECK_THROWS_AS(sc.validate(), std::invalid_argument);

    sc = good;
    sc.ers[0].rho = {0.0, 0.0};
    CHECK_THROWS_AS(sc.validate(), std::invalid_argument);

    sc = good;
    sc.ers[0].rho = {1.3, 0.0};
    CHECK_THROWS_AS(sc.validate(), std::invalid_argument);
}

TEST_CASE("apply_defaults derives beta yet keeps explicit values") {
    Scenario sc;
    sc.tx_antennas = 2;
    sc.frame_symbols = 100.0;
    sc.average_power_watts = 1.0;
    sc.noise_power_watts = 1e-12;
    sc.ers.push_back({6.0, 0.0, {1.0, 0.0}, -1.0});      // beta derived
    sc.ers.push_back({6.0, 3.14e-7, {1.0, 0.0}, -1.0});  // explicit beta wins
    sc.apply_defaults();
    CHECK(sc.ers[0].beta == doctest::Approx(1e-3 / 216.0).epsilon(1e-14));
    CHECK(sc.ers[1].beta == 3.14e-7);
    CHECK(sc.ers[0].theta == doctest::Approx(0.5));
    CHECK(sc.ers[1].theta == doctest::Approx(0.5));
}

TEST_CASE("effective_noise folds the reflection magnitude when enabled") {
    auto sc = testsupport::single_er_reference();
    sc.ers[0].rho = {0.8, 0.5};  // |rho|^2 = 0.89
    CHECK(sc.effective_noise(0) == doctest::Approx(1e-12 / 0.89).epsilon(1e-12));
    sc.rho_scaled_ce = false;
    CHECK(sc.effective_noise(0) == 1e-12);
}

TEST_CASE("allocation validation") {
    auto sc = testsupport::two_er_reference();
    const Allocation ok{9.2, {0.5, 0.5}};
    CHECK_NOTHROW(ok.validate(sc));
    const Allocation slack{0.0, {0.2, 0.3}};  // slack sum allowed
    CHECK_NOTHROW(slack.validate(sc));
    const Allocation negative_q{-1.0, {0.5, 0.5}};
    CHECK_THROWS_AS(negative_q.validate(sc), std::invalid_argument);
    const Allocation over_budget{201.0, {0.5, 0.5}};
    CHECK_THROWS_AS(over_budget.validate(sc), std::invalid_argument);
    const Allocation short_xi{1.0, {0.5}};
    CHECK_THROWS_AS(short_xi.validate(sc), std::invalid_argument);
    const Allocation oversubscribed{1.0, {0.6, 0.6}};
    CHECK_THROWS_AS(oversubscribed.validate(sc), std::invalid_argument);
    const Allocation negative_weight{1.0, {-0.1, 0.5}};
    CHECK_THROWS_AS(negative_weight.validate(sc), std::invalid_argument);
}
