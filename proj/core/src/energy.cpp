#include "bswet/energy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bswet/specfun.hpp"

namespace bswet {

namespace {

[[noreturn]] void fail(const std::string& message) {
    throw std::invalid_argument(message);
}

void require_snr(double x) {
    if (!(x >= 0.0)) fail("beam gain: estimation SNR must be >= 0");
}

// sum_{k>=1} (-1)^{k+1} k! x^k, truncated at the smallest term. For x <= 0.02
// the truncation error is below e^{-1/x} ~ 1e-21 relative; used where the
// direct form 1 - t e^t E1(t) would cancel catastrophically.
double exact_gain_series(double x) {
    double term = x;
    double sum = x;
    double prev_mag = std::abs(term);
    for (int k = 2; k <= 60; ++k) {
        term *= -static_cast<double>(k) * x;
        const double mag = std::abs(term);
        if (mag >= prev_mag) break;  // asymptotic series turned around
        sum += term;
        prev_mag = mag;
        if (mag < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

// sum_{k>=1} (-1)^{k+1} x^k / (k+1) = 1 - ln(1+x)/x, cancellation-free
// for small x.
double lower_gain_series(double x) {
    double pow_x = x;
    double sum = 0.0;
    for (int k = 1; k <= 80; ++k) {
        const double add = ((k & 1) ? pow_x : -pow_x) / (k + 1);
        sum += add;
        if (std::abs(add) < 1e-18 * std::abs(sum)) break;
        pow_x *= x;
    }
    return sum;
}

void check_feasible(const Scenario& scenario, double training_energy,
                    const std::vector<double>& xi) {
    scenario.validate();
    Allocation alloc{training_energy, xi};
    alloc.validate(scenario);
}

std::vector<double> omni_levels(const Scenario& scenario) {
    std::vector<double> out(static_cast<std::size_t>(scenario.num_ers()));
    for (int k = 0; k < scenario.num_ers(); ++k)
        out[static_cast<std::size_t>(k)] = scenario.harvest_efficiency *
                                           scenario.ers[static_cast<std::size_t>(k)].beta *
                                           scenario.frame_energy();
    return out;
}

template <typename GainFn>
std::vector<double> energy_with_gain(const Scenario& scenario, double training_energy,
                                     const std::vector<double>& xi, GainFn&& gain) {
    check_feasible(scenario, training_energy, xi);
    if (training_energy == 0.0) return omni_levels(scenario);
    const double wet_energy = scenario.frame_energy() - training_energy;
    const double surplus = static_cast<double>(scenario.tx_antennas) - 1.0;
    std::vector<double> out(xi.size());
    for (int k = 0; k < scenario.num_ers(); ++k) {
        const double x = ce_snr(scenario, training_energy, k);
        const double beta = scenario.ers[static_cast<std::size_t>(k)].beta;
        out[static_cast<std::size_t>(k)] =
            scenario.harvest_efficiency * beta * wet_energy *
            (surplus * gain(x) * xi[static_cast<std::size_t>(k)] + 1.0);
    }
    return out;
}

}  // namespace

double beam_gain_exact(double x) {
    require_snr(x);
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x <= 0.02) return exact_gain_series(x);
    // 1 - t e^t E1(t) with t = 1/x; safe from cancellation once x > 0.02.
    return 1.0 - specfun::expectation_inv_one_plus(x, 1.0);
}

double beam_gain_lower(double x) {
    require_snr(x);
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x < 0.25) return lower_gain_series(x);
    return 1.0 - std::log1p(x) / x;
}

double beam_gain_upper(double x) {
    require_snr(x);
    return beam_gain_lower(2.0 * x);
}

double beam_gain_jensen(double x) {
    require_snr(x);
    if (std::isinf(x)) return 1.0;
    return x / (1.0 + x);
}

double ce_snr(const Scenario& scenario, double training_energy, int er) {
    if (er < 0 || er >= scenario.num_ers()) fail("ce_snr: er index out of range");
    if (!(training_energy >= 0.0)) fail("ce_snr: training_energy must be >= 0");
    const double beta = scenario.ers[static_cast<std::size_t>(er)].beta;
    const double km = static_cast<double>(scenario.num_ers()) * scenario.tx_antennas;
    return beta * beta * training_energy / (km * scenario.effective_noise(er));
}

std::vector<double> energy_exact(const Scenario& scenario, double training_energy,
                                 const std::vector<double>& xi) {
    return energy_with_gain(scenario, training_energy, xi, beam_gain_exact);
}

std::vector<double> energy_lower(const Scenario& scenario, double training_energy,
                                 const std::vector<double>& xi) {
    return energy_with_gain(scenario, training_energy, xi, beam_gain_lower);
}

std::vector<double> energy_upper(const Scenario& scenario, double training_energy,
                                 const std::vector<double>& xi) {
    return energy_with_gain(scenario, training_energy, xi, beam_gain_upper);
}

std::vector<double> energy_jensen_upper(const Scenario& scenario, double training_energy) {
    scenario.validate();
    const double budget = scenario.frame_energy();
    if (!(training_energy >= 0.0) || training_energy > budget * (1.0 + 1e-12))
        fail("energy_jensen_upper: training_energy must be in [0, p_ave * T]");
    if (training_energy == 0.0) return omni_levels(scenario);
    const double wet_energy = budget - training_energy;
    const double m = static_cast<double>(scenario.tx_antennas);
    std::vector<double> out(static_cast<std::size_t>(scenario.num_ers()));
    for (int k = 0; k < scenario.num_ers(); ++k) {
        const double x = ce_snr(scenario, training_energy, k);
        const double beta = scenario.ers[static_cast<std::size_t>(k)].beta;
        out[static_cast<std::size_t>(k)] =
            scenario.harvest_efficiency * m * beta * wet_energy *
            (1.0 - (m - 1.0) / m * (1.0 - beam_gain_jensen(x)));
    }
    return out;
}

Baselines baselines(const Scenario& scenario) {
    scenario.validate();
    Baselines out;
    out.perfect_csi.resize(static_cast<std::size_t>(scenario.num_ers()));
    out.omni = omni_levels(scenario);
    for (int k = 0; k < scenario.num_ers(); ++k)
        out.perfect_csi[static_cast<std::size_t>(k)] =
            static_cast<double>(scenario.tx_antennas) * out.omni[static_cast<std::size_t>(k)];
    return out;
}

double wse_beam_coeff(const Scenario& scenario, double training_energy, int er) {
    scenario.validate();
    if (er < 0 || er >= scenario.num_ers()) fail("wse_beam_coeff: er index out of range");
    const double budget = scenario.frame_energy();
    if (!(training_energy >= 0.0) || training_energy > budget * (1.0 + 1e-12))
        fail("wse_beam_coeff: training_energy must be in [0, p_ave * T]");
    const auto& profile = scenario.ers[static_cast<std::size_t>(er)];
    if (training_energy == 0.0) return 0.0;
    const double x = ce_snr(scenario, training_energy, er);
    return profile.theta * profile.beta * (static_cast<double>(scenario.tx_antennas) - 1.0) *
           (budget - training_energy) * beam_gain_lower(x);
}

EnergyAffine pfe_energy_coeffs(const Scenario& scenario, double training_energy) {
    scenario.validate();
    const double budget = scenario.frame_energy();
    if (!(training_energy >= 0.0) || training_energy > budget * (1.0 + 1e-12))
        fail("pfe_energy_coeffs: training_energy must be in [0, p_ave * T]");
    const double wet_energy = budget - training_energy;
    const double surplus = static_cast<double>(scenario.tx_antennas) - 1.0;
    EnergyAffine out;
    out.beam.resize(static_cast<std::size_t>(scenario.num_ers()));
    out.base.resize(static_cast<std::size_t>(scenario.num_ers()));
    for (int k = 0; k < scenario.num_ers(); ++k) {
        const double beta = scenario.ers[static_cast<std::size_t>(k)].beta;
        const double gain =
            training_energy == 0.0 ? 0.0 : beam_gain_lower(ce_snr(scenario, training_energy, k));
        out.beam[static_cast<std::size_t>(k)] = beta * surplus * wet_energy * gain;
        out.base[static_cast<std::size_t>(k)] = beta * wet_energy;
    }
    return out;
}

EnergyReport energy_report(const Scenario& scenario, const Allocation& allocation) {
    allocation.validate(scenario);
    EnergyReport report;
    report.exact = energy_exact(scenario, allocation.training_energy, allocation.xi);
    report.lower = energy_lower(scenario, allocation.training_energy, allocation.xi);
    report.upper = energy_upper(scenario, allocation.training_energy, allocation.xi);
    report.jensen_upper = energy_jensen_upper(scenario, allocation.training_energy);
    auto base = baselines(scenario);
    report.omni = std::move(base.omni);
    report.perfect_csi = std::move(base.perfect_csi);
    return report;
}

}  // namespace bswet
