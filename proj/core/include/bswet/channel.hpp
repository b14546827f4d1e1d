#pragma once

#include <Eigen/Core>

#include "bswet/rng.hpp"
#include "bswet/scenario.hpp"

namespace bswet {

/// One draw of the fading state shared by the CE and WET phases of a frame.
struct ChannelRealization {
    Eigen::MatrixXcd forward;   ///< K x M, entry (k, m) ~ CN(0, beta_k)
    Eigen::VectorXcd backward;  ///< K, entry k ~ CN(0, beta_k)
};

/// Pilot schedule of one CE phase: K slots of M*L symbols at power p1, so
/// ce_symbols = K*M*L and training_energy = ce_symbols * pilot_power.
struct CePlan {
    double ce_symbols = 0.0;
    int pilot_reps = 1;            ///< repetitions L per transmit antenna
    double pilot_power = 0.0;      ///< watts
    double training_energy = 0.0;  ///< joules

    static CePlan make(const Scenario& scenario, int pilot_reps, double pilot_power);
    /// Plan that spends exactly `training_energy` joules with the given L.
    static CePlan for_training_energy(const Scenario& scenario, double training_energy,
                                      int pilot_reps = 1);
    void validate(const Scenario& scenario) const;
};

/// Least-squares estimate of the concatenated (backscatter) channel, the only
/// CSI the ET can acquire on its own.
struct BackscatterEstimate {
    Eigen::MatrixXcd a_hat;            ///< K x M
    double noise_var_per_entry = 0.0;  ///< sigma^2 / (L * p1)
    int pilot_reps = 1;
    double pilot_power = 0.0;
};

ChannelRealization sample_channels(const Scenario& scenario, const rng::RngStream& stream);

BackscatterEstimate estimate_backscatter(const Scenario& scenario,
                                         const ChannelRealization& realization,
                                         const CePlan& plan, const rng::RngStream& stream);

/// Deterministic core of the estimator: the caller supplies unit-variance
/// noise draws (K x M), which are scaled by sqrt(sigma^2 / (L p1)) internally.
BackscatterEstimate estimate_backscatter_with_noise(const Scenario& scenario,
                                                    const ChannelRealization& realization,
                                                    const CePlan& plan,
                                                    const Eigen::MatrixXcd& unit_noise);

/// Forward-channel estimation error variance conditioned on the backward
/// channel power |g_k|^2 = backward_gain_sq, for total training energy q.
double conditional_error_variance(const Scenario& scenario, double training_energy,
                                  double backward_gain_sq, int er);

}  // namespace bswet
