#include "bswet/beamform_mc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>

#include "bswet/energy.hpp"

namespace bswet {

namespace {

[[noreturn]] void fail(const std::string& message) {
    throw std::invalid_argument(message);
}

void check_weights(const Eigen::Index k_count, const std::vector<double>& xi) {
    if (static_cast<Eigen::Index>(xi.size()) != k_count)
        fail("beamformer_multi: xi must have one entry per ER");
    double sum = 0.0;
    for (double w : xi) {
        if (!(w >= 0.0)) fail("beamformer_multi: xi entries must be >= 0");
        sum += w;
    }
    if (sum > 1.0 + 1e-9) fail("beamformer_multi: sum of xi must be <= 1");
}

// Fixed-order pairwise reduction; the result does not depend on how the
// buffer was filled, which keeps multi-threaded runs bit-reproducible.
double pairwise_sum(const double* data, std::size_t count) {
    if (count <= 32) {
        double sum = 0.0;
        for (std::size_t i = 0; i < count; ++i) sum += data[i];
        return sum;
    }
    const std::size_t half = count / 2;
    return pairwise_sum(data, half) + pairwise_sum(data + half, count - half);
}

int worker_count(const McConfig& mc, std::int64_t runs) {
    int threads = mc.threads > 0 ? mc.threads
                                 : static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    if (static_cast<std::int64_t>(threads) > runs) threads = static_cast<int>(runs);
    return threads;
}

char* format_g17(char* buffer, std::size_t size, double value) {
    std::snprintf(buffer, size, "%.17g", value);
    return buffer;
}

}  // namespace

Eigen::VectorXcd beamformer_single(const Eigen::VectorXcd& a_hat_k) {
    const double norm = a_hat_k.norm();
    if (!(norm > 0.0)) fail("beamformer_single: estimate must be nonzero");
    return a_hat_k.conjugate() / norm;
}

Eigen::VectorXcd beamformer_multi(const Eigen::MatrixXcd& a_hat, const std::vector<double>& xi) {
    check_weights(a_hat.rows(), xi);
    Eigen::VectorXcd combined = Eigen::VectorXcd::Zero(a_hat.cols());
    for (Eigen::Index k = 0; k < a_hat.rows(); ++k) {
        const double weight = xi[static_cast<std::size_t>(k)];
        if (weight == 0.0) continue;
        const double norm = a_hat.row(k).norm();
        if (!(norm > 0.0)) fail("beamformer_multi: estimate row must be nonzero");
        combined += std::sqrt(weight) / norm * a_hat.row(k).conjugate().transpose();
    }
    return combined;
}

McEstimate simulate_energy(const Scenario& scenario, const Allocation& allocation,
                           const McConfig& mc) {
    scenario.validate();
    allocation.validate(scenario);
    mc.ce_plan.validate(scenario);
    if (mc.runs < 1) fail("simulate_energy: runs must be >= 1");
    if (std::abs(mc.ce_plan.training_energy - allocation.training_energy) >
        1e-9 * std::max(1.0, allocation.training_energy))
        fail("simulate_energy: the CE plan must spend the allocation's training energy");

    const int k_count = scenario.num_ers();
    const double wet_symbols = scenario.frame_symbols - mc.ce_plan.ce_symbols;
    const double power =
        wet_power(scenario, allocation.training_energy, mc.ce_plan.ce_symbols);
    const double scale = scenario.harvest_efficiency * power * wet_symbols;

    // One slot per (er, run); workers fill disjoint ranges, the reduction
    // below runs in a fixed order.
    std::vector<std::vector<double>> samples(
        static_cast<std::size_t>(k_count),
        std::vector<double>(static_cast<std::size_t>(mc.runs)));

    auto run_range = [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t r = begin; r < end; ++r) {
            const rng::RngStream stream{mc.seed, static_cast<std::uint64_t>(r)};
            const ChannelRealization realization = sample_channels(scenario, stream);
            const BackscatterEstimate estimate =
                estimate_backscatter(scenario, realization, mc.ce_plan, stream);
            const Eigen::VectorXcd w = beamformer_multi(estimate.a_hat, allocation.xi);
            for (int k = 0; k < k_count; ++k) {
                const std::complex<double> z = realization.forward.row(k) * w;
                samples[static_cast<std::size_t>(k)][static_cast<std::size_t>(r)] =
                    scale * std::norm(z);
            }
        }
    };

    const int threads = worker_count(mc, mc.runs);
    if (threads == 1) {
        run_range(0, mc.runs);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        const std::int64_t chunk = (mc.runs + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            const std::int64_t begin = t * chunk;
            const std::int64_t end = std::min(mc.runs, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(run_range, begin, end);
        }
        for (auto& worker : pool) worker.join();
    }

    McEstimate estimate;
    estimate.runs = mc.runs;
    estimate.mean.resize(static_cast<std::size_t>(k_count));
    estimate.std_error.resize(static_cast<std::size_t>(k_count));
    for (int k = 0; k < k_count; ++k) {
        const auto& column = samples[static_cast<std::size_t>(k)];
        const double mean = pairwise_sum(column.data(), column.size()) /
                            static_cast<double>(mc.runs);
        estimate.mean[static_cast<std::size_t>(k)] = mean;
        if (mc.runs > 1) {
            std::vector<double> sq(column.size());
            for (std::size_t i = 0; i < column.size(); ++i) {
                const double centered = column[i] - mean;
                sq[i] = centered * centered;
            }
            const double variance = pairwise_sum(sq.data(), sq.size()) /
                                    static_cast<double>(mc.runs - 1);
            estimate.std_error[static_cast<std::size_t>(k)] =
                std::sqrt(variance / static_cast<double>(mc.runs));
        } else {
            estimate.std_error[static_cast<std::size_t>(k)] = 0.0;
        }
    }
    return estimate;
}

std::vector<SweepRow> simulate_sweep(const Scenario& scenario, const std::vector<double>& q_grid,
                                     const std::vector<double>& xi, const McConfig& mc) {
    scenario.validate();
    std::vector<SweepRow> rows;
    rows.reserve(q_grid.size());
    for (double q : q_grid) {
        McConfig point = mc;
        point.ce_plan = CePlan::for_training_energy(scenario, q, mc.ce_plan.pilot_reps);
        SweepRow row;
        row.training_energy = q;
        row.mc = simulate_energy(scenario, Allocation{q, xi}, point);
        row.exact = energy_exact(scenario, q, xi);
        row.lower = energy_lower(scenario, q, xi);
        row.upper = energy_upper(scenario, q, xi);
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    if (rows.empty()) {
        out << "q_joules\n";
        return;
    }
    const std::size_t k_count = rows.front().mc.mean.size();
    out << "q_joules";
    for (std::size_t k = 1; k <= k_count; ++k)
        out << ",mc_mean_" << k << ",mc_stderr_" << k << ",exact_" << k << ",lower_" << k
            << ",upper_" << k;
    out << '\n';
    char buffer[64];
    for (const auto& row : rows) {
        out << format_g17(buffer, sizeof buffer, row.training_energy);
        for (std::size_t k = 0; k < k_count; ++k) {
            out << ',' << format_g17(buffer, sizeof buffer, row.mc.mean[k]);
            out << ',' << format_g17(buffer, sizeof buffer, row.mc.std_error[k]);
            out << ',' << format_g17(buffer, sizeof buffer, row.exact[k]);
            out << ',' << format_g17(buffer, sizeof buffer, row.lower[k]);
            out << ',' << format_g17(buffer, sizeof buffer, row.upper[k]);
        }
        out << '\n';
    }
}

}  // namespace bswet
