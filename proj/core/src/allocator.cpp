#include "bswet/allocator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "bswet/energy.hpp"

namespace bswet {

namespace {

[[noreturn]] void fail(const std::string& message) {
    throw std::invalid_argument(message);
}

std::vector<double> uniform_weights(int k_count) {
    return std::vector<double>(static_cast<std::size_t>(k_count),
                               1.0 / static_cast<double>(k_count));
}

void check_weights(const Scenario& scenario, const std::vector<double>& xi) {
    if (static_cast<int>(xi.size()) != scenario.num_ers())
        fail("weights: xi must have one entry per ER");
    double sum = 0.0;
    for (double w : xi) {
        if (!(w >= 0.0)) fail("weights: xi entries must be >= 0");
        sum += w;
    }
    if (sum > 1.0 + 1e-9) fail("weights: sum of xi must be <= 1");
}

// Proportional-fair utility without the efficiency term; the solvers compare
// utilities through this so the returned allocation is bit-identical for any
// efficiency value.
double pfe_objective(const Scenario& scenario, double q, const std::vector<double>& xi) {
    if (q == 0.0) {
        double sum = 0.0;
        for (const auto& er : scenario.ers) sum += std::log(er.beta * scenario.frame_energy());
        return sum;
    }
    const auto coeffs = pfe_energy_coeffs(scenario, q);
    double sum = 0.0;
    for (std::size_t k = 0; k < xi.size(); ++k)
        sum += std::log(coeffs.beam[k] * xi[k] + coeffs.base[k]);
    return sum;
}

}  // namespace

double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double tol) {
    if (!(hi > lo)) fail("golden_section_max: hi must be > lo");
    if (!(tol > 0.0)) fail("golden_section_max: tol must be > 0");
    const double inv_phi = 0.6180339887498948482;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

namespace {

// Sign-carrying factor of the lower-bound energy derivative in normalized
// units x = beta^2 q / (M sigma_eff^2); shares its sign with dE/dq.
double single_er_slope(double x, double c1, double c2, double p_ave) {
    return c2 * p_ave * (x + 1.0) * std::log1p(x) - c1 * x * x * x -
           c1 * (1.0 - c2) * x * x - c2 * p_ave * x;
}

}  // namespace

SolveResult solve_single_er(const Scenario& scenario, SingleErMethod method) {
    scenario.validate();
    if (scenario.num_ers() != 1) fail("solve_single_er: scenario must have exactly one ER");

    const double beta = scenario.ers[0].beta;
    const double sigma2 = scenario.effective_noise(0);
    const double m = static_cast<double>(scenario.tx_antennas);
    const double p_ave = scenario.average_power_watts;
    const double budget = scenario.frame_energy();

    SolveResult result;
    result.allocation.xi = {1.0};
    result.converged = true;

    const double threshold = beta * scenario.frame_symbols * p_ave * (m - 1.0) / m;
    if (sigma2 >= threshold) {
        result.allocation.training_energy = 0.0;
        result.iterations = 0;
    } else if (method == SingleErMethod::derivative_root) {
        // The slope is positive at 0+ (below-threshold case) and negative at
        // the budget endpoint; strict concavity gives exactly one sign change.
        const double c1 = m * sigma2 / (beta * beta * scenario.frame_symbols);
        const double c2 = (m - 1.0) / m;
        double x_lo = 0.0;
        double x_hi = p_ave / c1;  // q = p_ave * T
        int iterations = 0;
        while ((x_hi - x_lo) > 1e-14 * (p_ave / c1) && iterations < 200) {
            const double x_mid = 0.5 * (x_lo + x_hi);
            if (single_er_slope(x_mid, c1, c2, p_ave) > 0.0)
                x_lo = x_mid;
            else
                x_hi = x_mid;
            ++iterations;
        }
        const double x_root = 0.5 * (x_lo + x_hi);
        result.allocation.training_energy = x_root * m * sigma2 / (beta * beta);
        result.iterations = iterations;
    } else {
        const std::vector<double> full_beam{1.0};
        auto objective = [&](double q) { return energy_lower(scenario, q, full_beam)[0]; };
        result.allocation.training_energy =
            golden_section_max(objective, 0.0, budget, 1e-9 * budget);
        result.iterations = 0;
    }

    result.per_er_energy =
        energy_lower(scenario, result.allocation.training_energy, result.allocation.xi);
    result.utility = result.per_er_energy[0];
    return result;
}

SolveResult solve_wse(const Scenario& scenario) {
    scenario.validate();
    const int k_count = scenario.num_ers();
    const double budget = scenario.frame_energy();

    double theta_beta_sum = 0.0;
    double theta_sum = 0.0;
    for (const auto& er : scenario.ers) {
        theta_beta_sum += er.theta * er.beta;
        theta_sum += er.theta;
    }
    if (!(theta_sum > 0.0)) fail("solve_wse: at least one theta must be > 0");

    // Per candidate beam target, the utility is the candidate's beam
    // coefficient plus the CSI-free share common to all ERs; both candidate
    // score and its optimal q come from maximizing that strictly concave sum.
    double best_score = -std::numeric_limits<double>::infinity();
    int best_er = 0;
    double best_q = 0.0;
    for (int k = 0; k < k_count; ++k) {
        auto score = [&](double q) {
            return wse_beam_coeff(scenario, q, k) + (budget - q) * theta_beta_sum;
        };
        const double q_star = golden_section_max(score, 0.0, budget, 1e-8 * budget);
        const double value = score(q_star);
        if (value > best_score) {
            best_score = value;
            best_er = k;
            best_q = q_star;
        }
    }

    SolveResult result;
    result.converged = true;
    result.iterations = k_count;
    const double omni_score = budget * theta_beta_sum;
    if (best_score > omni_score) {
        result.allocation.training_energy = best_q;
        result.allocation.xi.assign(static_cast<std::size_t>(k_count), 0.0);
        result.allocation.xi[static_cast<std::size_t>(best_er)] = 1.0;
    } else {
        // Noise too high for training to pay off; no CSI means the weights
        // carry no meaning, reported uniform.
        result.allocation.training_energy = 0.0;
        result.allocation.xi = uniform_weights(k_count);
    }
    result.per_er_energy =
        energy_lower(scenario, result.allocation.training_energy, result.allocation.xi);
    result.utility =
        wse_utility(scenario, result.allocation.training_energy, result.allocation.xi);
    return result;
}

std::vector<double> waterfill(const Scenario& scenario, double training_energy) {
    scenario.validate();
    const double budget = scenario.frame_energy();
    if (!(training_energy > 0.0) || !(training_energy < budget))
        fail("waterfill: training_energy must be inside (0, p_ave * T)");

    // One antenna leaves no beamforming surplus: every split is optimal.
    if (scenario.tx_antennas == 1) return uniform_weights(scenario.num_ers());

    const auto coeffs = pfe_energy_coeffs(scenario, training_energy);
    const std::size_t k_count = coeffs.beam.size();
    std::vector<double> breakpoint(k_count);
    for (std::size_t k = 0; k < k_count; ++k) breakpoint[k] = coeffs.base[k] / coeffs.beam[k];

    std::vector<std::size_t> order(k_count);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return breakpoint[a] < breakpoint[b]; });

    // The water level solves sum max(0, level - breakpoint_k) = 1, a
    // piecewise linear increasing function with breaks at the sorted
    // breakpoints; scan for the active set and solve that segment exactly.
    double prefix = 0.0;
    double level = 0.0;
    for (std::size_t n = 1; n <= k_count; ++n) {
        prefix += breakpoint[order[n - 1]];
        const double candidate = (1.0 + prefix) / static_cast<double>(n);
        if (n == k_count || candidate <= breakpoint[order[n]]) {
            level = candidate;
            break;
        }
    }

    std::vector<double> xi(k_count);
    for (std::size_t k = 0; k < k_count; ++k) xi[k] = std::max(0.0, level - breakpoint[k]);
    return xi;
}

double solve_q_given_xi(const Scenario& scenario, const std::vector<double>& xi) {
    scenario.validate();
    check_weights(scenario, xi);
    const double budget = scenario.frame_energy();
    auto objective = [&](double q) { return pfe_objective(scenario, q, xi); };
    const double q_hat =
        golden_section_max(objective, 0.0, budget * (1.0 - 1e-12), 1e-6 * budget);
    // The beamformed objective does not apply at q = 0 (no CSI); compare the
    // interior optimum against the omnidirectional utility explicitly.
    return objective(q_hat) > pfe_objective(scenario, 0.0, xi) ? q_hat : 0.0;
}

std::pair<SolveResult, BcdTrace> solve_pfe(const Scenario& scenario, const PfeOptions& options) {
    scenario.validate();
    const int k_count = scenario.num_ers();
    const double budget = scenario.frame_energy();
    if (!(options.epsilon > 0.0)) fail("solve_pfe: epsilon must be > 0");
    if (options.max_iterations < 1) fail("solve_pfe: max_iterations must be >= 1");

    double q = options.q0 < 0.0 ? 0.05 * budget : options.q0;
    if (!(q > 0.0) || q > budget) fail("solve_pfe: q0 must be in (0, p_ave * T]");
    q = std::min(q, budget * (1.0 - 1e-12));

    std::vector<double> xi = options.xi0;
    if (xi.empty())
        xi = uniform_weights(k_count);
    else
        check_weights(scenario, xi);

    const double eta_offset =
        static_cast<double>(k_count) * std::log(scenario.harvest_efficiency);

    BcdTrace trace;
    double utility = pfe_objective(scenario, q, xi);
    trace.push_back({q, xi, utility + eta_offset});

    bool converged = false;
    int iteration = 0;
    while (iteration < options.max_iterations) {
        ++iteration;
        std::vector<double> xi_next = waterfill(scenario, q);
        double mid_utility = pfe_objective(scenario, q, xi_next);
        if (mid_utility < utility) {  // solver tolerance would regress; keep the iterate
            xi_next = xi;
            mid_utility = utility;
        }
        double q_next = solve_q_given_xi(scenario, xi_next);
        if (q_next == 0.0) {
            // Omnidirectional transmission beats any beamformed point for
            // these weights; the utility is then weight-independent.
            const double omni_utility = pfe_objective(scenario, 0.0, xi_next);
            if (omni_utility >= mid_utility) {
                q = 0.0;
                xi = uniform_weights(k_count);
                utility = omni_utility;
            } else {
                xi = std::move(xi_next);
                utility = mid_utility;
            }
            trace.push_back({q, xi, utility + eta_offset});
            converged = true;
            break;
        }
        double next_utility = pfe_objective(scenario, q_next, xi_next);
        if (next_utility < mid_utility) {
            q_next = q;
            next_utility = mid_utility;
        }
        xi = std::move(xi_next);
        q = q_next;
        trace.push_back({q, xi, next_utility + eta_offset});
        const bool done = std::abs(next_utility - utility) <= options.epsilon;
        utility = next_utility;
        if (done) {
            converged = true;
            break;
        }
    }

    SolveResult result;
    result.allocation.training_energy = q;
    result.allocation.xi = xi;
    result.utility = utility + eta_offset;
    result.per_er_energy = energy_lower(scenario, q, xi);
    result.iterations = iteration;
    result.converged = converged;
    return {std::move(result), std::move(trace)};
}

std::vector<AntennaSweepRow> antenna_sweep(const Scenario& base,
                                           const std::vector<int>& m_values) {
    std::vector<AntennaSweepRow> rows;
    rows.reserve(m_values.size());
    for (int m : m_values) {
        Scenario scenario = base;
        scenario.tx_antennas = m;
        scenario.validate();
        AntennaSweepRow row;
        row.tx_antennas = m;
        row.wse = solve_wse(scenario);
        row.pfe = solve_pfe(scenario).first;
        rows.push_back(std::move(row));
    }
    return rows;
}

double pfe_utility(const Scenario& scenario, double training_energy,
                   const std::vector<double>& xi) {
    scenario.validate();
    check_weights(scenario, xi);
    return pfe_objective(scenario, training_energy, xi) +
           static_cast<double>(scenario.num_ers()) * std::log(scenario.harvest_efficiency);
}

double wse_utility(const Scenario& scenario, double training_energy,
                   const std::vector<double>& xi) {
    scenario.validate();
    check_weights(scenario, xi);
    const auto energies = energy_lower(scenario, training_energy, xi);
    double sum = 0.0;
    for (int k = 0; k < scenario.num_ers(); ++k)
        sum += scenario.ers[static_cast<std::size_t>(k)].theta *
               energies[static_cast<std::size_t>(k)];
    return sum;
}

}  // namespace bswet
