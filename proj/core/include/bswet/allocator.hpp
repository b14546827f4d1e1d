#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "bswet/scenario.hpp"

namespace bswet {

/// Derivative-free maximizer for a unimodal function on [lo, hi]; returns the
/// bracket midpoint once the bracket is narrower than tol (absolute).
double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double tol);

struct SolveResult {
    Allocation allocation;
    double utility = 0.0;
    /// Harvested-energy lower bound at the returned allocation (the solvers'
    /// objective energies), efficiency applied.
    std::vector<double> per_er_energy;
    int iterations = 0;
    bool converged = true;
};

struct BcdStep {
    double q = 0.0;
    std::vector<double> xi;
    double utility = 0.0;
};
using BcdTrace = std::vector<BcdStep>;

enum class SingleErMethod {
    derivative_root,  ///< bisection on the closed-form energy derivative
    golden_section,   ///< direct 1-D maximization of the energy
};

/// Optimal training energy for a one-ER scenario. Returns q = 0 (pure
/// omnidirectional transmission) when the noise exceeds the threshold at
/// which training stops paying for itself.
SolveResult solve_single_er(const Scenario& scenario,
                            SingleErMethod method = SingleErMethod::derivative_root);

/// Weighted-sum-energy maximization: one beam gets all the energy; the winning
/// ER and its training energy maximize the per-candidate utility. Ties break
/// toward the smaller ER index.
SolveResult solve_wse(const Scenario& scenario);

/// Proportional-fair beam weights at fixed training energy, by exact
/// water-filling over the sorted breakpoints. Requires 0 < q < p_ave*T.
std::vector<double> waterfill(const Scenario& scenario, double training_energy);

/// Best training energy for fixed weights under the proportional-fair
/// utility; compares the interior optimum against q = 0 and returns the
/// better of the two.
double solve_q_given_xi(const Scenario& scenario, const std::vector<double>& xi);

struct PfeOptions {
    double epsilon = 1e-9;      ///< absolute utility tolerance
    double q0 = -1.0;           ///< initial training energy; < 0 selects 5% of the frame energy
    std::vector<double> xi0{};  ///< initial weights; empty selects uniform
    int max_iterations = 1000;
};

/// Proportional-fair-energy maximization by block-coordinate descent,
/// alternating waterfill and solve_q_given_xi. Returns a partial optimum;
/// converged is false when the iteration cap was hit. A result with
/// training_energy == 0 means omnidirectional transmission won (weights are
/// then reported uniform).
std::pair<SolveResult, BcdTrace> solve_pfe(const Scenario& scenario,
                                           const PfeOptions& options = {});

struct AntennaSweepRow {
    int tx_antennas = 0;
    SolveResult wse;
    SolveResult pfe;
};
/// Re-solves WSE and PFE for each antenna count in m_values.
std::vector<AntennaSweepRow> antenna_sweep(const Scenario& base,
                                           const std::vector<int>& m_values);

/// sum_k ln(eta * lower-bound energy_k) of a feasible allocation.
double pfe_utility(const Scenario& scenario, double training_energy,
                   const std::vector<double>& xi);
/// sum_k theta_k * eta * lower-bound energy_k.
double wse_utility(const Scenario& scenario, double training_energy,
                   const std::vector<double>& xi);

}  // namespace bswet
