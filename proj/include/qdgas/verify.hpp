#pragma once

// Classical reference oracles. Nothing here depends on the circuit builders,
// so a disagreement with the simulated path points at the circuits.

#include <cstdint>
#include <map>
#include <vector>

#include "qdgas/polynomial.hpp"

namespace qdgas {

struct BruteForceResult {
    std::int64_t value = 0;
    std::vector<std::uint64_t> argmins;  // keys, bit i = variable i, ascending
};

/// Exhaustive minimum over feasible assignments; throws InfeasibleError when
/// there are none.
BruteForceResult brute_force_min(const CpboProblem& problem);

/// Keys x with f(x) < threshold that satisfy every constraint.
std::vector<std::uint64_t> marked_keys(const CpboProblem& problem, std::int64_t threshold);

/// Success probability sin^2((2r + 1) asin(sqrt(s / N))).
double amplified_mass(std::uint64_t num_items, std::uint64_t num_marked, int rotations);

/// Predicted key/value distribution after r Grover iterations at `threshold`
/// with an m-qubit value register, indexed by key | value << n. Marked pairs
/// share the amplified mass uniformly, the rest share the remainder.
std::map<std::uint64_t, double> predict_distribution(const CpboProblem& problem, std::int64_t threshold,
                                                     int rotations, int value_qubits);

}  // namespace qdgas
