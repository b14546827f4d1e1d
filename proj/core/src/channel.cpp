#include "bswet/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bswet {

namespace {

// Lane tags keep the forward, backward, and estimation-noise draws of one
// (seed, draw) pair on disjoint counter ranges.
constexpr std::uint32_t kTagForward = 0u << 24;
constexpr std::uint32_t kTagBackward = 1u << 24;
constexpr std::uint32_t kTagEstimateNoise = 2u << 24;
constexpr int kMaxAntennas = 1 << 24;

[[noreturn]] void fail(const std::string& message) {
    throw std::invalid_argument(message);
}

}  // namespace

CePlan CePlan::make(const Scenario& scenario, int pilot_reps, double pilot_power) {
    scenario.validate();
    if (pilot_reps < 1) fail("CePlan: pilot_reps must be >= 1");
    if (!(pilot_power > 0.0)) fail("CePlan: pilot_power must be > 0");
    CePlan plan;
    plan.pilot_reps = pilot_reps;
    plan.pilot_power = pilot_power;
    plan.ce_symbols = static_cast<double>(scenario.num_ers()) * scenario.tx_antennas * pilot_reps;
    plan.training_energy = plan.ce_symbols * pilot_power;
    plan.validate(scenario);
    return plan;
}

CePlan CePlan::for_training_energy(const Scenario& scenario, double training_energy,
                                   int pilot_reps) {
    if (!(training_energy > 0.0)) fail("CePlan: training_energy must be > 0");
    const double symbols =
        static_cast<double>(scenario.num_ers()) * scenario.tx_antennas * pilot_reps;
    return make(scenario, pilot_reps, training_energy / symbols);
}

void CePlan::validate(const Scenario& scenario) const {
    const double expected_symbols =
        static_cast<double>(scenario.num_ers()) * scenario.tx_antennas * pilot_reps;
    if (pilot_reps < 1) fail("CePlan: pilot_reps must be >= 1");
    if (!(pilot_power > 0.0)) fail("CePlan: pilot_power must be > 0");
    if (ce_symbols != expected_symbols) fail("CePlan: ce_symbols must equal K * M * L");
    if (std::abs(training_energy - ce_symbols * pilot_power) >
        1e-9 * std::max(1.0, training_energy))
        fail("CePlan: training_energy must equal ce_symbols * pilot_power");
    if (ce_symbols >= scenario.frame_symbols)
        fail("CePlan: the CE phase must be shorter than the frame");
    if (training_energy > scenario.frame_energy() * (1.0 + 1e-12))
        fail("CePlan: training_energy exceeds the frame energy budget");
}

ChannelRealization sample_channels(const Scenario& scenario, const rng::RngStream& stream) {
    scenario.validate();
    const int k_count = scenario.num_ers();
    const int m_count = scenario.tx_antennas;
    if (m_count >= kMaxAntennas) fail("sample_channels: tx_antennas too large for lane encoding");

    ChannelRealization out;
    out.forward.resize(k_count, m_count);
    out.backward.resize(k_count);
    for (int k = 0; k < k_count; ++k) {
        const double beta = scenario.ers[static_cast<std::size_t>(k)].beta;
        for (int m = 0; m < m_count; ++m) {
            out.forward(k, m) = rng::complex_gaussian(
                stream, static_cast<std::uint32_t>(k),
                kTagForward | static_cast<std::uint32_t>(m), beta);
        }
        out.backward(k) =
            rng::complex_gaussian(stream, static_cast<std::uint32_t>(k), kTagBackward, beta);
    }
    return out;
}

BackscatterEstimate estimate_backscatter(const Scenario& scenario,
                                         const ChannelRealization& realization,
                                         const CePlan& plan, const rng::RngStream& stream) {
    const int k_count = scenario.num_ers();
    const int m_count = scenario.tx_antennas;
    Eigen::MatrixXcd unit_noise(k_count, m_count);
    for (int k = 0; k < k_count; ++k)
        for (int m = 0; m < m_count; ++m)
            unit_noise(k, m) = rng::complex_gaussian(
                stream, static_cast<std::uint32_t>(k),
                kTagEstimateNoise | static_cast<std::uint32_t>(m), 1.0);
    return estimate_backscatter_with_noise(scenario, realization, plan, unit_noise);
}

BackscatterEstimate estimate_backscatter_with_noise(const Scenario& scenario,
                                                    const ChannelRealization& realization,
                                                    const CePlan& plan,
                                                    const Eigen::MatrixXcd& unit_noise) {
    scenario.validate();
    plan.validate(scenario);
    const int k_count = scenario.num_ers();
    const int m_count = scenario.tx_antennas;
    if (realization.forward.rows() != k_count || realization.forward.cols() != m_count ||
        realization.backward.size() != k_count)
        fail("estimate_backscatter: realization dimensions do not match the scenario");
    if (unit_noise.rows() != k_count || unit_noise.cols() != m_count)
        fail("estimate_backscatter: noise dimensions do not match the scenario");

    BackscatterEstimate estimate;
    estimate.pilot_reps = plan.pilot_reps;
    estimate.pilot_power = plan.pilot_power;
    estimate.noise_var_per_entry =
        scenario.noise_power_watts / (plan.pilot_reps * plan.pilot_power);
    const double noise_scale = std::sqrt(estimate.noise_var_per_entry);

    estimate.a_hat.resize(k_count, m_count);
    for (int k = 0; k < k_count; ++k) {
        const std::complex<double> rho = scenario.ers[static_cast<std::size_t>(k)].rho;
        const std::complex<double> g = realization.backward(k);
        for (int m = 0; m < m_count; ++m)
            estimate.a_hat(k, m) = rho * realization.forward(k, m) * g +
                                   noise_scale * unit_noise(k, m);
    }
    return estimate;
}

double conditional_error_variance(const Scenario& scenario, double training_energy,
                                  double backward_gain_sq, int er) {
    scenario.validate();
    if (er < 0 || er >= scenario.num_ers())
        fail("conditional_error_variance: er index out of range");
    if (!(training_energy > 0.0))
        fail("conditional_error_variance: training_energy must be > 0");
    if (!(backward_gain_sq > 0.0))
        fail("conditional_error_variance: backward_gain_sq must be > 0");
    const double km = static_cast<double>(scenario.num_ers()) * scenario.tx_antennas;
    return km * scenario.effective_noise(er) / (backward_gain_sq * training_energy);
}

}  // namespace bswet
