#include "qdgas/search.hpp"

#include <cmath>
#include <numbers>

namespace qdgas {

void GasConfig::validate() const {
    if (!(lambda > 1.0)) throw std::invalid_argument("lambda must be > 1");
    if (patience < 1) throw std::invalid_argument("patience must be >= 1");
    if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
    if (value_qubits && *value_qubits < 2) throw std::invalid_argument("value register needs at least 2 qubits");
}

int optimal_rotations(std::uint64_t num_items, std::uint64_t num_marked) {
    if (num_items < 1) throw std::invalid_argument("search space must be non-empty");
    if (num_marked == 0 || num_marked > num_items) throw std::invalid_argument("marked count must be in [1, N]");
    const double ratio = static_cast<double>(num_items) / static_cast<double>(num_marked);
    return static_cast<int>(std::floor(std::numbers::pi / 4.0 * std::sqrt(ratio)));
}

int sample_rotation_count(double k, std::mt19937_64& rng) {
    if (!(k >= 1.0)) throw std::invalid_argument("rotation scale k must be >= 1");
    const auto upper = static_cast<int>(std::ceil(k - 1.0));
    return std::uniform_int_distribution<int>(0, upper)(rng);
}

GasTrace run_gas(const CpboProblem& problem, const GasConfig& config) {
    config.validate();
    problem.validate();
    const int n = problem.num_vars();
    if (n > 24) throw std::invalid_argument("too many variables to simulate");

    LayoutOptions options;
    options.global_flag = config.global_flag;
    options.ancilla = config.encoder == Encoder::Ry;
    const RegisterLayout layout = make_layout(problem, config.value_qubits, options);
    const int m = layout.value_qubits();

    std::mt19937_64 rng(config.seed);
    std::uniform_int_distribution<std::uint64_t> uniform_key(0, (std::uint64_t{1} << n) - 1);

    GasTrace trace;
    trace.num_vars = n;
    trace.value_qubits = m;

    bool found = false;
    for (int attempt = 0; attempt < kInitialSampleAttempts && !found; ++attempt) {
        const auto key = uniform_key(rng);
        if (is_feasible_index(problem, key)) {
            trace.initial_key = key;
            found = true;
        }
    }
    if (!found) {
        throw InfeasibleError("no feasible assignment in " + std::to_string(kInitialSampleAttempts) +
                              " uniform samples");
    }
    trace.initial_value = problem.objective.evaluate_index(trace.initial_key);
    trace.best_key = trace.initial_key;
    trace.best_value = trace.initial_value;

    const Circuit oracle = build_oracle(problem, layout);
    const Circuit diffusion = build_diffusion(layout);

    double k = 1.0;
    int misses = 0;
    for (int i = 1; i <= config.max_iterations && misses < config.patience; ++i) {
        GasIteration it;
        it.index = i;
        it.threshold = trace.best_value;
        it.k = k;
        it.rotations = sample_rotation_count(k, rng);

        OracleSet set;
        set.a_y = config.encoder == Encoder::Phase ? build_a(problem.objective, it.threshold, layout)
                                                   : build_ry_encoder(problem.objective, it.threshold, layout);
        set.oracle = oracle;
        set.diffusion = diffusion;
        set.grover_iterate = Circuit(layout.num_qubits());
        set.grover_iterate.append(oracle).append(adjoint(set.a_y)).append(diffusion).append(set.a_y);

        const StateVector state = run_grover(set, it.rotations);
        if (config.record_histograms) it.histogram = key_value_distribution(state, layout);

        const std::uint64_t outcome = measure_all(state, rng);
        it.key = layout.key().extract(outcome);
        it.raw_value = layout.value().extract(outcome);
        it.register_value = decode_value(it.raw_value, m);
        it.objective = problem.objective.evaluate_index(it.key);
        it.feasible = is_feasible_index(problem, it.key);
        it.accepted = it.feasible && it.objective < it.threshold;

        trace.total_grover_applications += it.rotations;
        if (it.accepted) {
            trace.best_key = it.key;
            trace.best_value = it.objective;
            k = 1.0;
            misses = 0;
        } else {
            k *= config.lambda;
            ++misses;
        }
        trace.iterations.push_back(std::move(it));
    }
    return trace;
}

}  // namespace qdgas
