#pragma once

#include <vector>

#include "bswet/scenario.hpp"

namespace bswet {

// Fraction of the (M-1)-fold coherent beamforming surplus that survives
// estimation with per-ER estimation SNR x. All four forms are 0 at x = 0 and
// tend to 1 as x grows; lower < exact < upper strictly for x > 0, and
// exact <= jensen always.
double beam_gain_exact(double x);
double beam_gain_lower(double x);
double beam_gain_upper(double x);
double beam_gain_jensen(double x);  ///< backward-channel ambiguity ignored

/// Estimation SNR x_k = beta_k^2 q / (K M sigma_eff_k^2).
double ce_snr(const Scenario& scenario, double training_energy, int er);

// Expected harvested energy per ER over the WET phase, efficiency applied.
// `xi` holds the beam energy weights (size K). training_energy = 0 returns
// the omnidirectional level; training_energy = p_ave*T returns zero.
std::vector<double> energy_exact(const Scenario& scenario, double training_energy,
                                 const std::vector<double>& xi);
std::vector<double> energy_lower(const Scenario& scenario, double training_energy,
                                 const std::vector<double>& xi);
std::vector<double> energy_upper(const Scenario& scenario, double training_energy,
                                 const std::vector<double>& xi);

/// Single-beam ceiling that ignores the unknown backward channel: what a
/// conventional receiver-assisted system would harvest at the same CE SNR.
std::vector<double> energy_jensen_upper(const Scenario& scenario, double training_energy);

struct Baselines {
    std::vector<double> perfect_csi;  ///< MRT with perfectly known forward channels
    std::vector<double> omni;         ///< no CSI, omnidirectional transmission
};
Baselines baselines(const Scenario& scenario);

/// Coefficient of xi_k in the weighted-sum-energy utility; strictly concave
/// and positive on the open training-energy interval.
double wse_beam_coeff(const Scenario& scenario, double training_energy, int er);

/// The lower-bound energy as an affine function of the weights:
/// energy_lower[k] = eta * (beam[k] * xi_k + base[k]).
struct EnergyAffine {
    std::vector<double> beam;
    std::vector<double> base;
};
EnergyAffine pfe_energy_coeffs(const Scenario& scenario, double training_energy);

struct EnergyReport {
    std::vector<double> exact;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<double> jensen_upper;
    std::vector<double> omni;
    std::vector<double> perfect_csi;
};
EnergyReport energy_report(const Scenario& scenario, const Allocation& allocation);

}  // namespace bswet
