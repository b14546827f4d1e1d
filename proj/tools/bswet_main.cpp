// Experiment runner: reproduces the headline sweeps, optima, tables, and the
// Monte Carlo validation battery from scenario files, writing CSV/JSON
// artifacts plus a manifest for bit-reproducible reruns.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "bswet/allocator.hpp"
#include "bswet/beamform_mc.hpp"
#include "bswet/energy.hpp"
#include "bswet/scenario_io.hpp"
#include "bswet/version.hpp"

using json = nlohmann::ordered_json;
using namespace bswet;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitValidation = 4;

struct CommonOptions {
    std::string scenario_path;
    std::string out_dir = ".";
    std::uint64_t seed = 20250801;
    std::int64_t runs = 100000;
    int pilot_reps = 1;
    int threads = 0;
};

std::string g17(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buffer[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buffer;
}

void write_manifest(const CommonOptions& opts, const std::string& command,
                    const std::vector<std::string>& artifacts) {
    json manifest;
    manifest["command"] = command;
    manifest["scenario_file"] = opts.scenario_path;
    manifest["scenario_hash_fnv1a64"] = file_hash_hex(opts.scenario_path);
    manifest["seed"] = opts.seed;
    manifest["runs"] = opts.runs;
    manifest["pilot_reps"] = opts.pilot_reps;
    manifest["tool_version"] = kVersion;
    manifest["artifacts"] = artifacts;
    manifest["generated_utc"] = utc_timestamp();
    std::ofstream out(std::filesystem::path(opts.out_dir) / "manifest.json");
    out << manifest.dump(2) << '\n';
}

json allocation_to_json(const Scenario& sc, const SolveResult& result) {
    json j;
    j["allocation"]["q_joules"] = result.allocation.training_energy;
    j["allocation"]["xi"] = result.allocation.xi;
    j["utility"] = result.utility;
    j["per_er_energy_joules"] = result.per_er_energy;
    j["per_er_energy_exact_joules"] =
        energy_exact(sc, result.allocation.training_energy, result.allocation.xi);
    j["iterations"] = result.iterations;
    j["converged"] = result.converged;
    return j;
}

void write_result_json(const CommonOptions& opts, const std::string& command, const Scenario& sc,
                       const SolveResult& result, const BcdTrace* trace) {
    json j;
    j["command"] = command;
    j.update(allocation_to_json(sc, result));
    if (trace != nullptr) {
        json steps = json::array();
        for (const auto& step : *trace) {
            json s;
            s["q_joules"] = step.q;
            s["xi"] = step.xi;
            s["utility"] = step.utility;
            steps.push_back(std::move(s));
        }
        j["trace"] = std::move(steps);
    }
    std::ofstream out(std::filesystem::path(opts.out_dir) / "result.json");
    out << j.dump(2) << '\n';
    write_manifest(opts, command, {"result.json"});
    std::cout << "q* = " << result.allocation.training_energy << " J, utility = "
              << result.utility << (result.converged ? "" : " (not converged)") << '\n';
}

std::vector<double> parse_q_grid(const std::string& grid_text) {
    double start = 0.0, stop = 0.0, step = 0.0;
    if (std::sscanf(grid_text.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3 || step <= 0.0 ||
        stop < start)
        throw std::invalid_argument("--q-grid must be start:stop:step with step > 0");
    std::vector<double> grid;
    for (double q = start; q <= stop + 1e-9 * step; q += step) grid.push_back(q);
    return grid;
}

int run_sweep(const CommonOptions& opts, const std::string& grid_spec,
              std::vector<double> xi) {
    const Scenario sc = load_scenario(opts.scenario_path);
    if (xi.empty()) xi.assign(static_cast<std::size_t>(sc.num_ers()),
                              1.0 / static_cast<double>(sc.num_ers()));
    McConfig mc;
    mc.runs = opts.runs;
    mc.seed = opts.seed;
    mc.threads = opts.threads;
    mc.ce_plan = CePlan::for_training_energy(sc, 1.0, opts.pilot_reps);
    const auto rows = simulate_sweep(sc, parse_q_grid(grid_spec), xi, mc);
    std::ofstream out(std::filesystem::path(opts.out_dir) / "sweep.csv");
    write_sweep_csv(out, rows);
    write_manifest(opts, "sweep", {"sweep.csv"});
    std::cout << "wrote " << rows.size() << " sweep rows\n";
    return kExitOk;
}

int run_optimize_single(const CommonOptions& opts) {
    const Scenario sc = load_scenario(opts.scenario_path);
    const auto result = solve_single_er(sc);
    write_result_json(opts, "optimize-single", sc, result, nullptr);
    return kExitOk;
}

int run_optimize_wse(const CommonOptions& opts) {
    const Scenario sc = load_scenario(opts.scenario_path);
    const auto result = solve_wse(sc);
    write_result_json(opts, "optimize-wse", sc, result, nullptr);
    return kExitOk;
}

int run_optimize_pfe(const CommonOptions& opts, double epsilon, double q0, int max_iterations) {
    const Scenario sc = load_scenario(opts.scenario_path);
    PfeOptions options;
    options.epsilon = epsilon;
    options.q0 = q0;
    options.max_iterations = max_iterations;
    const auto [result, trace] = solve_pfe(sc, options);
    write_result_json(opts, "optimize-pfe", sc, result, &trace);
    return result.converged ? kExitOk : kExitNoConvergence;
}

int run_table1(const CommonOptions& opts, double epsilon) {
    const Scenario base = load_scenario(opts.scenario_path);
    if (base.num_ers() != 2)
        throw std::invalid_argument("table1 requires a scenario with exactly 2 ERs");

    std::ofstream out(std::filesystem::path(opts.out_dir) / "table1.csv");
    out << "d2_m,q_joules,xi1,e1_joules,e2_joules,e1_exact_joules,e2_exact_joules,"
           "e1_mc_joules,e1_mc_stderr,e2_mc_joules,e2_mc_stderr,utility,iterations,converged\n";
    bool all_converged = true;
    for (double d2 : {4.0, 5.0, 6.0, 7.0, 8.0}) {
        Scenario sc = base;
        sc.ers[1].distance_m = d2;
        sc.ers[1].beta = path_loss(d2, sc.path_loss_model);
        PfeOptions options;
        options.epsilon = epsilon;
        const auto [result, trace] = solve_pfe(sc, options);
        all_converged = all_converged && result.converged;

        McConfig mc;
        mc.runs = opts.runs;
        mc.seed = opts.seed;
        mc.threads = opts.threads;
        mc.ce_plan =
            CePlan::for_training_energy(sc, result.allocation.training_energy, opts.pilot_reps);
        const auto estimate = simulate_energy(sc, result.allocation, mc);
        const auto exact =
            energy_exact(sc, result.allocation.training_energy, result.allocation.xi);

        out << g17(d2) << ',' << g17(result.allocation.training_energy) << ','
            << g17(result.allocation.xi[0]) << ',' << g17(result.per_er_energy[0]) << ','
            << g17(result.per_er_energy[1]) << ',' << g17(exact[0]) << ',' << g17(exact[1])
            << ',' << g17(estimate.mean[0]) << ',' << g17(estimate.std_error[0]) << ','
            << g17(estimate.mean[1]) << ',' << g17(estimate.std_error[1]) << ','
            << g17(result.utility) << ',' << result.iterations << ','
            << (result.converged ? 1 : 0) << '\n';
    }
    write_manifest(opts, "table1", {"table1.csv"});
    std::cout << "wrote table1.csv\n";
    return all_converged ? kExitOk : kExitNoConvergence;
}

int run_antenna_sweep(const CommonOptions& opts, const std::vector<int>& m_values) {
    const Scenario base = load_scenario(opts.scenario_path);
    const auto rows = antenna_sweep(base, m_values);
    std::ofstream out(std::filesystem::path(opts.out_dir) / "antenna_sweep.csv");
    out << "tx_antennas,wse_q_joules,pfe_q_joules";
    for (int k = 1; k <= base.num_ers(); ++k)
        out << ",wse_xi_" << k << ",wse_e" << k << "_joules,pfe_xi_" << k << ",pfe_e" << k
            << "_joules";
    out << '\n';
    bool all_converged = true;
    for (const auto& row : rows) {
        all_converged = all_converged && row.pfe.converged;
        out << row.tx_antennas << ',' << g17(row.wse.allocation.training_energy) << ','
            << g17(row.pfe.allocation.training_energy);
        for (int k = 0; k < base.num_ers(); ++k) {
            const auto idx = static_cast<std::size_t>(k);
            out << ',' << g17(row.wse.allocation.xi[idx]) << ','
                << g17(row.wse.per_er_energy[idx]) << ',' << g17(row.pfe.allocation.xi[idx])
                << ',' << g17(row.pfe.per_er_energy[idx]);
        }
        out << '\n';
    }
    write_manifest(opts, "antenna-sweep", {"antenna_sweep.csv"});
    std::cout << "wrote antenna_sweep.csv (" << rows.size() << " rows)\n";
    return all_converged ? kExitOk : kExitNoConvergence;
}

int run_validate_mc(const CommonOptions& opts) {
    const Scenario base = load_scenario(opts.scenario_path);
    if (base.num_ers() < 2)
        throw std::invalid_argument("validate-mc requires a scenario with at least 2 ERs");

    std::ofstream out(std::filesystem::path(opts.out_dir) / "validate_mc.csv");
    out << "k,m,q_joules,er,mc_mean,mc_stderr,exact,abs_gap,pass\n";
    int violations = 0;
    int point_index = 0;
    for (int k_count : {1, 2}) {
        for (int m : {2, 4, 8}) {
            for (double frac : {0.01, 0.05, 0.1}) {
                std::vector<std::vector<double>> weight_sets;
                if (k_count == 1) {
                    weight_sets.push_back({1.0});
                } else {
                    weight_sets.push_back({0.5, 0.5});
                    weight_sets.push_back({0.3, 0.7});
                }
                for (const auto& xi : weight_sets) {
                    Scenario sc = base;
                    sc.tx_antennas = m;
                    sc.ers.resize(static_cast<std::size_t>(k_count));
                    const double q = frac * sc.frame_energy();
                    McConfig mc;
                    mc.runs = opts.runs;
                    mc.seed = opts.seed + static_cast<std::uint64_t>(point_index);
                    mc.threads = opts.threads;
                    mc.ce_plan = CePlan::for_training_energy(sc, q, opts.pilot_reps);
                    const auto estimate = simulate_energy(sc, Allocation{q, xi}, mc);
                    const auto exact = energy_exact(sc, q, xi);
                    for (int er = 0; er < k_count; ++er) {
                        const auto idx = static_cast<std::size_t>(er);
                        const double gap = std::abs(estimate.mean[idx] - exact[idx]);
                        const bool ok = gap <= 3.0 * estimate.std_error[idx];
                        if (!ok) ++violations;
                        out << k_count << ',' << m << ',' << g17(q) << ',' << er + 1 << ','
                            << g17(estimate.mean[idx]) << ',' << g17(estimate.std_error[idx])
                            << ',' << g17(exact[idx]) << ',' << g17(gap) << ',' << (ok ? 1 : 0)
                            << '\n';
                    }
                    ++point_index;
                }
            }
        }
    }
    write_manifest(opts, "validate-mc", {"validate_mc.csv"});
    if (violations > 0) {
        std::cerr << violations << " point(s) outside 3 standard errors\n";
        return kExitValidation;
    }
    std::cout << "all " << point_index << " points within 3 standard errors\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wireless energy transfer simulator/optimizer for backscatter devices"};
    app.require_subcommand(1);

    CommonOptions opts;
    std::string q_grid_spec;
    std::vector<double> xi;
    std::vector<int> m_values{2, 4, 6, 8};
    double epsilon = 1e-9;
    double q0 = -1.0;
    int max_iterations = 1000;

    auto add_common = [&](CLI::App* cmd, bool needs_mc) {
        cmd->add_option("--scenario", opts.scenario_path, "Scenario file")
            ->required()
            ->check(CLI::ExistingFile);
        cmd->add_option("--out", opts.out_dir, "Output directory")->capture_default_str();
        if (needs_mc) {
            cmd->add_option("--seed", opts.seed, "Monte Carlo seed")->capture_default_str();
            cmd->add_option("--runs", opts.runs, "Monte Carlo runs")
                ->capture_default_str()
                ->check(CLI::PositiveNumber);
            cmd->add_option("--pilot-reps", opts.pilot_reps, "Pilot repetitions per CE slot")
                ->capture_default_str()
                ->check(CLI::PositiveNumber);
            cmd->add_option("--threads", opts.threads, "Worker threads (0 = auto)")
                ->capture_default_str();
        }
    };

    auto* sweep = app.add_subcommand("sweep", "Simulated and analytic energy vs training energy");
    add_common(sweep, true);
    sweep->add_option("--q-grid", q_grid_spec, "Training energy grid start:stop:step")
        ->required();
    sweep->add_option("--xi", xi, "Beam energy weights (default: uniform)");

    auto* single = app.add_subcommand("optimize-single", "Single-ER training energy optimum");
    add_common(single, false);

    auto* wse = app.add_subcommand("optimize-wse", "Weighted-sum-energy optimum");
    add_common(wse, false);

    auto* pfe = app.add_subcommand("optimize-pfe", "Proportional-fair optimum via descent");
    add_common(pfe, false);
    pfe->add_option("--epsilon", epsilon, "Utility convergence tolerance")
        ->capture_default_str();
    pfe->add_option("--q0", q0, "Initial training energy (< 0: 5% of frame energy)")
        ->capture_default_str();
    pfe->add_option("--max-iters", max_iterations, "Iteration cap")->capture_default_str();

    auto* table1 = app.add_subcommand(
        "table1", "Proportional-fair solutions for ER-2 distances 4..8 m, with MC columns");
    add_common(table1, true);
    table1->add_option("--epsilon", epsilon, "Utility convergence tolerance")
        ->capture_default_str();

    auto* antenna = app.add_subcommand("antenna-sweep", "WSE/PFE solutions vs antenna count");
    add_common(antenna, false);
    antenna->add_option("--m-values", m_values, "Antenna counts")->capture_default_str();

    auto* validate = app.add_subcommand("validate-mc",
                                        "Monte Carlo vs closed-form oracle battery");
    add_common(validate, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& error) {
        const int code = app.exit(error);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        std::filesystem::create_directories(opts.out_dir);
        if (sweep->parsed()) return run_sweep(opts, q_grid_spec, xi);
        if (single->parsed()) return run_optimize_single(opts);
        if (wse->parsed()) return run_optimize_wse(opts);
        if (pfe->parsed()) return run_optimize_pfe(opts, epsilon, q0, max_iterations);
        if (table1->parsed()) return run_table1(opts, epsilon);
        if (antenna->parsed()) return run_antenna_sweep(opts, m_values);
        if (validate->parsed()) return run_validate_mc(opts);
    } catch (const std::invalid_argument& error) {
        std::cerr << "error: " << error.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << '\n';
        return kExitConfig;
    }
    return kExitConfig;
}
