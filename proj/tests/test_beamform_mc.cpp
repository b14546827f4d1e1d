#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <sstream>

#include "bswet/beamform_mc.hpp"
#include "bswet/energy.hpp"
#include "support/scenarios.hpp"

using namespace bswet;

namespace {

McConfig config_for(const Scenario& sc, double q, std::int64_t runs, std::uint64_t seed,
                    int pilot_reps = 1) {
    McConfig mc;
    mc.runs = runs;
    mc.seed = seed;
    mc.ce_plan = CePlan::for_training_energy(sc, q, pilot_reps);
    return mc;
}

Eigen::VectorXcd random_complex_vector(std::mt19937_64& gen, int size) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXcd v(size);
    for (int i = 0; i < size; ++i) v(i) = std::complex<double>(normal(gen), normal(gen));
    return v;
}

}  // namespace

TEST_CASE("single beam basics") {
    Eigen::VectorXcd unit(4);
    unit << 1.0, 0.0, 0.0, 0.0;
    CHECK(beamformer_single(unit) == unit);

    std::mt19937_64 gen(7);
    for (int i = 0; i < 1000; ++i) {
        const auto a = random_complex_vector(gen, 6);
        CHECK(beamformer_single(a).norm() == doctest::Approx(1.0).epsilon(1e-12));
    }

    CHECK_THROWS_AS(beamformer_single(Eigen::VectorXcd::Zero(4)), std::invalid_argument);
}

TEST_CASE("the beam direction ignores the estimate's scale and phase") {
    std::mt19937_64 gen(8);
    for (int i = 0; i < 200; ++i) {
        const auto a = random_complex_vector(gen, 5);
        const auto h = random_complex_vector(gen, 5);
        const std::complex<double> c(0.3, -1.7);
        const std::complex<double> z1 = beamformer_single(a).transpose() * h;
        const std::complex<double> z2 = beamformer_single((c * a).eval()).transpose() * h;
        CHECK(std::abs(z1) == doctest::Approx(std::abs(z2)).epsilon(1e-12));
    }
}

TEST_CASE("multi-beam combination") {
    std::mt19937_64 gen(9);

    // One-hot weights collapse to the single-ER beam.
    Eigen::MatrixXcd a_hat(2, 5);
    a_hat.row(0) = random_complex_vector(gen, 5).transpose();
    a_hat.row(1) = random_complex_vector(gen, 5).transpose();
    const Eigen::VectorXcd w = beamformer_multi(a_hat, {1.0, 0.0});
    const Eigen::VectorXcd single = beamformer_single(a_hat.row(0).transpose());
    CHECK((w - single).norm() < 1e-14);

    // Orthogonal estimates with a half/half split give a unit-power beam.
    Eigen::MatrixXcd ortho = Eigen::MatrixXcd::Zero(2, 4);
    ortho(0, 0) = {2.0, 1.0};
    ortho(1, 2) = {0.0, -3.0};
    CHECK(beamformer_multi(ortho, {0.5, 0.5}).squaredNorm() == doctest::Approx(1.0).epsilon(1e-12));

    // Triangle inequality on the combined power.
    for (int i = 0; i < 1000; ++i) {
        Eigen::MatrixXcd rows(3, 4);
        for (int k = 0; k < 3; ++k) rows.row(k) = random_complex_vector(gen, 4).transpose();
        const auto xi = testsupport::random_weights(gen, 3);
        double budget = 0.0;
        for (double v : xi) budget += std::sqrt(v);
        CHECK(beamformer_multi(rows, xi).norm() <= budget * (1.0 + 1e-12));
    }

    Eigen::MatrixXcd degenerate = Eigen::MatrixXcd::Zero(2, 4);
    degenerate.row(0) = random_complex_vector(gen, 4).transpose();
    CHECK_THROWS_AS(beamformer_multi(degenerate, {0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(beamformer_multi(a_hat, {0.7, 0.7}), std::invalid_argument);
}

TEST_CASE("simulated energy matches the closed form at the reference point") {
    auto sc = testsupport::single_er_reference();
    const auto mc = config_for(sc, 9.2, 20000, 20240807);
    const auto estimate = simulate_energy(sc, Allocation{9.2, {1.0}}, mc);
    const double exact = energy_exact(sc, 9.2, {1.0})[0];
    CHECK(std::abs(estimate.mean[0] - exact) <= 3.0 * estimate.std_error[0]);
}

TEST_CASE("vanishing training energy approaches the omnidirectional level") {
    auto sc = testsupport::single_er_reference();
    const double q = 1e-4;
    const auto mc = config_for(sc, q, 20000, 5);
    const auto estimate = simulate_energy(sc, Allocation{q, {1.0}}, mc);
    CHECK(std::abs(estimate.mean[0] - baselines(sc).omni[0]) <= 3.0 * estimate.std_error[0]);
}

TEST_CASE("closed form tracks the simulation for a lossy reflection coefficient") {
    auto sc = testsupport::two_er_reference(6.0);
    sc.ers[0].rho = {0.8, 0.5};
    sc.ers[1].rho = {0.8, 0.5};
    const double q = 7.45;
    const auto estimate =
        simulate_energy(sc, Allocation{q, {0.5, 0.5}}, config_for(sc, q, 50000, 321));
    const auto exact = energy_exact(sc, q, {0.5, 0.5});
    for (int k = 0; k < 2; ++k)
        CHECK(std::abs(estimate.mean[k] - exact[k]) <= 3.0 * estimate.std_error[k]);
    // |rho|^2 = 0.89 costs estimation SNR, so the unit-reflection curve is higher.
    auto ideal = sc;
    ideal.ers[0].rho = ideal.ers[1].rho = {1.0, 0.0};
    CHECK(exact[0] < energy_exact(ideal, q, {0.5, 0.5})[0]);
}

TEST_CASE("only the training energy matters, not the time/power split") {
    auto sc = testsupport::single_er_reference();
    const double q = 9.2;
    const auto a = simulate_energy(sc, Allocation{q, {1.0}}, config_for(sc, q, 20000, 11, 1));
    const auto b = simulate_energy(sc, Allocation{q, {1.0}}, config_for(sc, q, 20000, 12, 4));
    const double sigma = std::hypot(a.std_error[0], b.std_error[0]);
    CHECK(std::abs(a.mean[0] - b.mean[0]) <= 3.0 * sigma);
}

TEST_CASE("the estimate is bit-reproducible for any worker count") {
    auto sc = testsupport::two_er_reference();
    const double q = 7.45;
    McEstimate reference;
    for (int threads : {1, 2, 3}) {
        auto mc = config_for(sc, q, 4000, 99);
        mc.threads = threads;
        const auto estimate = simulate_energy(sc, Allocation{q, {0.5, 0.5}}, mc);
        if (threads == 1) {
            reference = estimate;
        } else {
            CHECK(estimate.mean == reference.mean);
            CHECK(estimate.std_error == reference.std_error);
        }
    }
}

TEST_CASE("a common backward phase cannot change any harvested sample") {
    auto sc = testsupport::two_er_reference();
    const auto plan = CePlan::for_training_energy(sc, 7.45, 1);
    const std::vector<double> xi{0.5285, 0.4715};
    const std::complex<double> phase = std::polar(1.0, 1.234);
    std::mt19937_64 gen(12);

    for (int r = 0; r < 200; ++r) {
        const rng::RngStream stream{321, static_cast<std::uint64_t>(r)};
        auto realization = sample_channels(sc, stream);

        Eigen::MatrixXcd unit_noise(sc.num_ers(), sc.tx_antennas);
        for (int k = 0; k < sc.num_ers(); ++k)
            for (int m = 0; m < sc.tx_antennas; ++m)
                unit_noise(k, m) = std::complex<double>(std::normal_distribution<double>()(gen),
                                                        std::normal_distribution<double>()(gen));

        const auto est = estimate_backscatter_with_noise(sc, realization, plan, unit_noise);
        const Eigen::VectorXcd w = beamformer_multi(est.a_hat, xi);

        // Rotate the backward channels and the receive-side noise by one
        // common phase: the very ambiguity the beamformer cannot resolve.
        auto rotated = realization;
        rotated.backward *= phase;
        const Eigen::MatrixXcd rotated_noise = unit_noise * phase;
        const auto est2 = estimate_backscatter_with_noise(sc, rotated, plan, rotated_noise);
        const Eigen::VectorXcd w2 = beamformer_multi(est2.a_hat, xi);

        for (int k = 0; k < sc.num_ers(); ++k) {
            const std::complex<double> z1 = realization.forward.row(k) * w;
            const std::complex<double> z2 = rotated.forward.row(k) * w2;
            CHECK(std::norm(z1) == doctest::Approx(std::norm(z2)).epsilon(1e-12));
        }
    }
}

TEST_CASE("cross terms between distinct beams vanish in expectation") {
    auto sc = testsupport::two_er_reference();
    const auto plan = CePlan::for_training_energy(sc, 7.45, 1);
    const std::vector<double> xi{0.5, 0.5};
    const int runs = 20000;
    double sum = 0.0, sum_sq = 0.0;
    for (int r = 0; r < runs; ++r) {
        const rng::RngStream stream{777, static_cast<std::uint64_t>(r)};
        const auto realization = sample_channels(sc, stream);
        const auto est = estimate_backscatter(sc, realization, plan, stream);
        const Eigen::VectorXcd w = beamformer_multi(est.a_hat, xi);
        const std::complex<double> z = realization.forward.row(0) * w;
        double direct = 0.0;
        for (int j = 0; j < sc.num_ers(); ++j) {
            const Eigen::VectorXcd beam =
                beamformer_single(est.a_hat.row(j).transpose());
            const std::complex<double> zj = realization.forward.row(0) * beam;
            direct += xi[static_cast<std::size_t>(j)] * std::norm(zj);
        }
        const double cross = std::norm(z) - direct;
        sum += cross;
        sum_sq += cross * cross;
    }
    const double mean = sum / runs;
    const double std_error =
        std::sqrt((sum_sq / runs - mean * mean) / static_cast<double>(runs - 1));
    CHECK(std::abs(mean) <= 3.0 * std_error);
}

TEST_CASE("sweep brackets the simulated mean and peaks near the optimum") {
    auto sc = testsupport::single_er_reference();
    McConfig mc;
    mc.runs = 20000;
    mc.seed = 31;
    mc.ce_plan = CePlan::for_training_energy(sc, 1.0, 1);  // pilot_reps template
    const std::vector<double> grid{1.0, 5.0, 9.2, 20.0, 50.0};
    const auto rows = simulate_sweep(sc, grid, {1.0}, mc);
    REQUIRE(rows.size() == grid.size());

    std::size_t argmax = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].mc.mean[0] > rows[argmax].mc.mean[0]) argmax = i;
        CHECK(rows[i].lower[0] < rows[i].mc.mean[0] + 3.0 * rows[i].mc.std_error[0]);
        CHECK(rows[i].mc.mean[0] - 3.0 * rows[i].mc.std_error[0] < rows[i].upper[0]);
    }
    // The peak of the mean lands at 9.2 or an adjacent grid point.
    CHECK(argmax >= 1);
    CHECK(argmax <= 3);

    // Single-ER closed form rises to one peak and falls after it.
    std::size_t exact_peak = 0;
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].exact[0] > rows[exact_peak].exact[0]) exact_peak = i;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (i <= exact_peak)
            CHECK(rows[i].exact[0] > rows[i - 1].exact[0]);
        else
            CHECK(rows[i].exact[0] < rows[i - 1].exact[0]);
    }

    CHECK(simulate_sweep(sc, {}, {1.0}, mc).empty());
}

TEST_CASE("sweep CSV bodies are deterministic") {
    auto sc = testsupport::two_er_reference();
    McConfig mc;
    mc.runs = 2000;
    mc.seed = 55;
    mc.ce_plan = CePlan::for_training_energy(sc, 1.0, 1);
    const std::vector<double> grid{2.0, 8.0};
    std::ostringstream first, second;
    write_sweep_csv(first, simulate_sweep(sc, grid, {0.5, 0.5}, mc));
    write_sweep_csv(second, simulate_sweep(sc, grid, {0.5, 0.5}, mc));
    CHECK(first.str() == second.str());
    CHECK(first.str().find("q_joules,mc_mean_1") == 0);
}

TEST_CASE("the plan must spend the allocation's training energy") {
    auto sc = testsupport::single_er_reference();
    auto mc = config_for(sc, 9.2, 10, 1);
    CHECK_THROWS_AS(simulate_energy(sc, Allocation{5.0, {1.0}}, mc), std::invalid_argument);
    mc.runs = 0;
    CHECK_THROWS_AS(simulate_energy(sc, Allocation{9.2, {1.0}}, mc), std::invalid_argument);
}
