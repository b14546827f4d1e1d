#include "bswet/scenario.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bswet {

namespace {

[[noreturn]] void fail(const std::string& message) {
    throw std::invalid_argument(message);
}

}  // namespace

double path_loss(double distance_m, const PathLossModel& model) {
    if (!(distance_m > 0.0)) fail("path_loss: distance_m must be > 0");
    if (!(model.reference_gain > 0.0)) fail("path_loss: reference_gain must be > 0");
    return model.reference_gain * std::pow(distance_m, -model.exponent);
}

double dbm_to_watts(double level_dbm) {
    if (!std::isfinite(level_dbm)) fail("dbm_to_watts: level must be finite");
    return std::pow(10.0, (level_dbm - 30.0) / 10.0);
}

double Scenario::effective_noise(int er) const {
    if (er < 0 || er >= num_ers()) fail("Scenario::effective_noise: er index out of range");
    if (!rho_scaled_ce) return noise_power_watts;
    const double rho_sq = std::norm(ers[static_cast<std::size_t>(er)].rho);
    return noise_power_watts / rho_sq;
}

void Scenario::apply_defaults() {
    const double uniform_theta = ers.empty() ? 0.0 : 1.0 / static_cast<double>(ers.size());
    for (auto& er : ers) {
        if (!(er.beta > 0.0)) er.beta = path_loss(er.distance_m, path_loss_model);
        if (!(er.theta >= 0.0)) er.theta = uniform_theta;
    }
}

void Scenario::validate() const {
    if (tx_antennas < 1) fail("Scenario: tx_antennas must be >= 1");
    if (!(frame_symbols > 0.0)) fail("Scenario: frame_symbols must be > 0");
    if (!(average_power_watts > 0.0)) fail("Scenario: average_power_watts must be > 0");
    if (!(noise_power_watts > 0.0)) fail("Scenario: noise_power_watts must be > 0");
    if (!(harvest_efficiency > 0.0) || harvest_efficiency > 1.0)
        fail("Scenario: harvest_efficiency must be in (0, 1]");
    if (ers.empty()) fail("Scenario: ers must contain at least one entry");
    for (std::size_t k = 0; k < ers.size(); ++k) {
        const auto& er = ers[k];
        const std::string tag = "Scenario: ers[" + std::to_string(k) + "]";
        if (!(er.beta > 0.0)) fail(tag + ".beta must be > 0");
        const double rho_mag = std::abs(er.rho);
        if (!(rho_mag > 0.0) || rho_mag > 1.0 + 1e-12)
            fail(tag + ".rho magnitude must be in (0, 1]");
        if (!(er.theta >= 0.0)) fail(tag + ".theta must be >= 0");
    }
}

void Allocation::validate(const Scenario& scenario) const {
    const double budget = scenario.frame_energy();
    if (!(training_energy >= 0.0) || training_energy > budget * (1.0 + 1e-12))
        fail("Allocation: training_energy must be in [0, p_ave * T]");
    if (static_cast<int>(xi.size()) != scenario.num_ers())
        fail("Allocation: xi must have one entry per ER");
    double sum = 0.0;
    for (std::size_t k = 0; k < xi.size(); ++k) {
        if (!(xi[k] >= 0.0)) fail("Allocation: xi[" + std::to_string(k) + "] must be >= 0");
        sum += xi[k];
    }
    if (sum > 1.0 + 1e-9) fail("Allocation: sum of xi must be <= 1");
}

double wet_power(const Scenario& scenario, double training_energy, double ce_symbols) {
    scenario.validate();
    if (!(ce_symbols > 0.0)) fail("wet_power: ce_symbols must be > 0");
    if (ce_symbols >= scenario.frame_symbols)
        fail("wet_power: ce_symbols must be < frame_symbols");
    const double budget = scenario.frame_energy();
    if (!(training_energy >= 0.0) || training_energy > budget * (1.0 + 1e-12))
        fail("wet_power: training_energy must be in [0, p_ave * T]");
    return (budget - training_energy) / (scenario.frame_symbols - ce_symbols);
}

}  // namespace bswet
