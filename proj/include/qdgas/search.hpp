#pragma once

// Grover adaptive search driven by exact simulation.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "qdgas/oracle.hpp"
#include "qdgas/polynomial.hpp"

namespace qdgas {

inline constexpr int kInitialSampleAttempts = 1000;

struct GasConfig {
    double lambda = 8.0 / 7.0;
    int patience = 3;
    int max_iterations = 100;
    std::uint64_t seed = 0;
    std::optional<int> value_qubits;
    Encoder encoder = Encoder::Phase;
    bool global_flag = false;
    /// Keep the key/value distribution of every iteration in the trace.
    bool record_histograms = false;

    void validate() const;
};

struct GasIteration {
    int index = 0;                  // 1-based
    std::int64_t threshold = 0;     // y_i
    double k = 1.0;
    int rotations = 0;              // r_i
    std::uint64_t key = 0;          // measured key, bit i = variable i
    std::uint64_t raw_value = 0;    // measured value register
    std::int64_t register_value = 0;  // two's-complement decode of raw_value, i.e. f(x) - y_i
    std::int64_t objective = 0;     // f(key) recomputed classically
    bool feasible = false;
    bool accepted = false;
    std::vector<double> histogram;  // over key | value << n, when recorded
};

struct GasTrace {
    int num_vars = 0;
    int value_qubits = 0;
    std::uint64_t initial_key = 0;
    std::int64_t initial_value = 0;
    std::vector<GasIteration> iterations;
    std::uint64_t best_key = 0;
    std::int64_t best_value = 0;
    long total_grover_applications = 0;
};

/// floor(pi/4 * sqrt(N/s)).
int optimal_rotations(std::uint64_t num_items, std::uint64_t num_marked);

/// Uniform draw from {0, 1, ..., ceil(k - 1)}.
int sample_rotation_count(double k, std::mt19937_64& rng);

/// Runs Grover adaptive search. Every acceptance decision is taken on the
/// classically recomputed objective and feasibility of the measured key; the
/// value register only steers the amplitudes.
GasTrace run_gas(const CpboProblem& problem, const GasConfig& config);

}  // namespace qdgas
