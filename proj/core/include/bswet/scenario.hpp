#pragma once

#include <complex>
#include <vector>

namespace bswet {

/// Scalar distance-power path loss: reference_gain * distance_m^(-exponent).
struct PathLossModel {
    double reference_gain = 1.0e-3;  ///< linear power gain at 1 m
    double exponent = 3.0;
};

double path_loss(double distance_m, const PathLossModel& model = {});

double dbm_to_watts(double level_dbm);

/// One energy receiver: a single-antenna backscatter device that reflects
/// pilots during its CE slot and harvests RF energy during the WET phase.
struct ErProfile {
    double distance_m = 1.0;
    /// Long-term power gain of the ET<->ER link. Values that are not > 0
    /// mean "derive from distance_m with the scenario's path loss model".
    double beta = 0.0;
    std::complex<double> rho{1.0, 0.0};  ///< backscatter reflection coefficient
    /// Weighted-sum-energy combination weight. Negative means "default to 1/K".
    double theta = -1.0;
};

/// Full system description. Immutable after construction; all other modules
/// take it by const reference and never mutate it.
struct Scenario {
    int tx_antennas = 1;               ///< transmit antennas at the ET
    double frame_symbols = 0.0;        ///< frame length; one symbol period == one second
    double average_power_watts = 0.0;  ///< per-frame average transmit power
    double noise_power_watts = 0.0;    ///< receiver noise variance at the ET
    double harvest_efficiency = 1.0;   ///< RF-to-DC efficiency in (0, 1]
    /// Fold |rho_k|^2 into the channel-estimation SNR. The LS observation is
    /// rho*h*g + noise, so the reflected pilot power scales with |rho|^2;
    /// disable to reproduce the unit-reflection analysis regardless of rho.
    bool rho_scaled_ce = true;
    PathLossModel path_loss_model{};
    std::vector<ErProfile> ers;

    int num_ers() const { return static_cast<int>(ers.size()); }
    double frame_energy() const { return average_power_watts * frame_symbols; }

    /// Noise power governing CE quality at ER k: sigma^2 / |rho_k|^2 when
    /// rho-scaled CE is enabled, sigma^2 otherwise.
    double effective_noise(int er) const;

    /// Fill derived members: beta from the path loss model where unset,
    /// theta = 1/K where unset.
    void apply_defaults();

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// The two resource-allocation decision variables: total pilot energy and the
/// per-ER beam energy weights.
struct Allocation {
    double training_energy = 0.0;  ///< joules spent on channel training
    std::vector<double> xi;        ///< per-ER beam energy weights, sum <= 1

    void validate(const Scenario& scenario) const;
};

/// Transmit power left for the WET phase after spending `training_energy`
/// joules over a CE phase of `ce_symbols` symbols.
double wet_power(const Scenario& scenario, double training_energy, double ce_symbols);

}  // namespace bswet
