#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "bswet/channel.hpp"

namespace bswet {

struct McConfig {
    std::int64_t runs = 100000;
    std::uint64_t seed = 0;
    CePlan ce_plan{};
    /// Worker threads; 0 picks the hardware concurrency. Results are
    /// bit-identical for any value (per-run counter streams + fixed-order
    /// pairwise reduction).
    int threads = 0;
};

struct McEstimate {
    std::vector<double> mean;       ///< joules per ER
    std::vector<double> std_error;  ///< sample std / sqrt(runs)
    std::int64_t runs = 0;
};

/// Beam toward one ER: the normalized conjugate of its estimate.
Eigen::VectorXcd beamformer_single(const Eigen::VectorXcd& a_hat_k);

/// Energy-weighted combination of per-ER beams. Components are stored
/// conjugated so that a one-hot weight vector reproduces beamformer_single.
Eigen::VectorXcd beamformer_multi(const Eigen::MatrixXcd& a_hat, const std::vector<double>& xi);

/// Direct simulation of estimation + beamforming + harvesting, averaged over
/// channel and noise draws. The plan must spend the allocation's training
/// energy. Deterministic given (seed, runs).
McEstimate simulate_energy(const Scenario& scenario, const Allocation& allocation,
                           const McConfig& mc);

struct SweepRow {
    double training_energy = 0.0;
    McEstimate mc;
    std::vector<double> exact;
    std::vector<double> lower;
    std::vector<double> upper;
};

/// One simulate_energy per grid value, next to the three analytic curves.
std::vector<SweepRow> simulate_sweep(const Scenario& scenario, const std::vector<double>& q_grid,
                                     const std::vector<double>& xi, const McConfig& mc);

/// Header + one row per grid point; doubles printed with 17 significant
/// digits so reruns are byte-identical.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace bswet
