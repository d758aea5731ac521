// qdgas: command-line front end for Grover adaptive search simulation.
//
//   qdgas solve problem.json [--seed N] [--lambda L] [--patience P] [--max-iters I]
//                            [--value-qubits M] [--encoder phase|ry] [--out-dir DIR]
//   qdgas resources problem.json [--value-qubits M]
//   qdgas brute problem.json
//   qdgas fejer --a 2.5 --m 4
//
// Exit codes: 0 ok, 2 parse error, 3 value-register overflow, 4 infeasible.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qdgas/fejer.hpp"
#include "qdgas/oracle.hpp"
#include "qdgas/problem_io.hpp"
#include "qdgas/search.hpp"
#include "qdgas/verify.hpp"

namespace fs = std::filesystem;
using namespace qdgas;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitOverflow = 3;
constexpr int kExitInfeasible = 4;

struct SolveArgs {
    std::string problem;
    std::uint64_t seed = 0;
    double lambda = 8.0 / 7.0;
    int patience = 3;
    int max_iters = 100;
    std::optional<int> value_qubits;
    std::string encoder = "phase";
    std::string out_dir = "gas-output";
};

int cmd_solve(const SolveArgs& args) {
    const ProblemFile file = load_problem(args.problem);
    GasConfig config;
    config.seed = args.seed;
    config.lambda = args.lambda;
    config.patience = args.patience;
    config.max_iterations = args.max_iters;
    config.value_qubits = args.value_qubits;
    config.encoder = args.encoder == "ry" ? Encoder::Ry : Encoder::Phase;
    config.record_histograms = true;

    const GasTrace trace = run_gas(file.problem, config);
    const int n = trace.num_vars;

    fs::create_directories(args.out_dir);
    {
        std::ofstream out(fs::path(args.out_dir) / "trace.json");
        out << trace_to_json(trace, file.variables, config).dump(2) << '\n';
    }
    for (const auto& it : trace.iterations) {
        std::ofstream out(fs::path(args.out_dir) / ("histogram_iter_" + std::to_string(it.index) + ".csv"));
        write_histogram_csv(out, it, n, trace.value_qubits, file.variables);
    }

    std::cout << "iter  threshold  r  key   value  accepted\n";
    for (const auto& it : trace.iterations) {
        std::cout << std::setw(4) << it.index << std::setw(11) << it.threshold << std::setw(3) << it.rotations
                  << "  " << key_bits(it.key, n) << std::setw(7) << it.objective << "  "
                  << (it.accepted ? "yes" : "no") << '\n';
    }
    std::cout << "best key: " << key_bits(trace.best_key, n) << " (" << assignment_string(trace.best_key, file.variables)
              << ")\nbest value: " << trace.best_value << "\nvalue qubits: " << trace.value_qubits
              << "\ngrover applications: " << trace.total_grover_applications << "\noutput: " << args.out_dir << '\n';
    return 0;
}

int cmd_resources(const std::string& path, std::optional<int> value_qubits) {
    const ProblemFile file = load_problem(path);
    const RegisterLayout layout = make_layout(file.problem, value_qubits);
    const ResourceEstimate est = estimate_resources(file.problem.objective, layout);
    std::cout << "n = " << layout.num_keys() << ", m = " << layout.value_qubits() << "\n";
    std::cout << std::left << std::setw(24) << "gate" << "count\n";
    std::cout << std::setw(24) << "H (value register)" << est.value_h << '\n';
    std::cout << std::setw(24) << "H (key register)" << est.key_h << '\n';
    std::cout << std::setw(24) << "R" << est.r << '\n';
    for (const auto& [k, count] : est.controlled_r) {
        std::cout << std::setw(24) << (std::to_string(k) + "-controlled R") << count << '\n';
    }
    std::cout << std::setw(24) << "inverse QFT" << est.inverse_qft << '\n';
    return 0;
}

int cmd_brute(const std::string& path) {
    const ProblemFile file = load_problem(path);
    const BruteForceResult r = brute_force_min(file.problem);
    const int n = file.problem.num_vars();
    std::cout << "minimum: " << r.value << '\n';
    for (auto key : r.argmins) std::cout << key_bits(key, n) << "  " << assignment_string(key, file.variables) << '\n';
    return 0;
}

int cmd_fejer(double a, int m) {
    const FejerDistribution d = fejer_distribution(a, m);
    write_fejer_csv(std::cout, d.probabilities, m);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Grover adaptive search over quantum-dictionary oracles (exact simulation)"};
    app.require_subcommand(1);

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "run Grover adaptive search on a problem file");
    solve_cmd->add_option("problem", solve.problem, "problem JSON file")->required();
    solve_cmd->add_option("--seed", solve.seed, "RNG seed");
    solve_cmd->add_option("--lambda", solve.lambda, "rotation-scale growth factor (> 1)");
    solve_cmd->add_option("--patience", solve.patience, "stop after this many consecutive misses");
    solve_cmd->add_option("--max-iters", solve.max_iters, "iteration cap");
    solve_cmd->add_option("--value-qubits", solve.value_qubits, "value register width");
    solve_cmd->add_option("--encoder", solve.encoder, "phase or ry")->check(CLI::IsMember({"phase", "ry"}));
    solve_cmd->add_option("--out-dir", solve.out_dir, "directory for trace.json and histograms");

    std::string res_path;
    std::optional<int> res_m;
    auto* res_cmd = app.add_subcommand("resources", "gate counts for the state preparation A");
    res_cmd->add_option("problem", res_path, "problem JSON file")->required();
    res_cmd->add_option("--value-qubits", res_m, "value register width");

    std::string brute_path;
    auto* brute_cmd = app.add_subcommand("brute", "exhaustive minimum over feasible assignments");
    brute_cmd->add_option("problem", brute_path, "problem JSON file")->required();

    double fejer_a = 0.0;
    int fejer_m = 4;
    auto* fejer_cmd = app.add_subcommand("fejer", "outcome distribution of a phase-encoded real value (CSV)");
    fejer_cmd->add_option("--a", fejer_a, "target value in [-2^(m-1), 2^(m-1))")->required();
    fejer_cmd->add_option("--m", fejer_m, "register width");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitParse;
    }

    try {
        if (*solve_cmd) return cmd_solve(solve);
        if (*res_cmd) return cmd_resources(res_path, res_m);
        if (*brute_cmd) return cmd_brute(brute_path);
        if (*fejer_cmd) return cmd_fejer(fejer_a, fejer_m);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const OverflowError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitOverflow;
    } catch (const InfeasibleError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
