#include "qdgas/verify.hpp"

#include <cmath>
#include <stdexcept>

namespace qdgas {

namespace {

void check_size(const CpboProblem& problem) {
    problem.validate();
    if (problem.num_vars() > 24) throw std::invalid_argument("brute force limited to 24 variables");
}

}  // namespace

BruteForceResult brute_force_min(const CpboProblem& problem) {
    check_size(problem);
    BruteForceResult result;
    bool any = false;
    const std::uint64_t count = std::uint64_t{1} << problem.num_vars();
    for (std::uint64_t key = 0; key < count; ++key) {
        if (!is_feasible_index(problem, key)) continue;
        const auto v = problem.objective.evaluate_index(key);
        if (!any || v < result.value) {
            result.value = v;
            result.argmins.clear();
            any = true;
        }
        if (v == result.value) result.argmins.push_back(key);
    }
    if (!any) throw InfeasibleError("no feasible assignment");
    return result;
}

std::vector<std::uint64_t> marked_keys(const CpboProblem& problem, std::int64_t threshold) {
    check_size(problem);
    std::vector<std::uint64_t> keys;
    const std::uint64_t count = std::uint64_t{1} << problem.num_vars();
    for (std::uint64_t key = 0; key < count; ++key) {
        if (problem.objective.evaluate_index(key) < threshold && is_feasible_index(problem, key)) keys.push_back(key);
    }
    return keys;
}

double amplified_mass(std::uint64_t num_items, std::uint64_t num_marked, int rotations) {
    if (num_items == 0 || num_marked > num_items) throw std::invalid_argument("need 0 <= s <= N, N >= 1");
    const double angle = std::asin(std::sqrt(static_cast<double>(num_marked) / static_cast<double>(num_items)));
    const double s = std::sin((2.0 * rotations + 1.0) * angle);
    return s * s;
}

std::map<std::uint64_t, double> predict_distribution(const CpboProblem& problem, std::int64_t threshold,
                                                     int rotations, int value_qubits) {
    check_size(problem);
    if (rotations < 0) throw std::invalid_argument("negative rotation count");
    const int n = problem.num_vars();
    const std::uint64_t count = std::uint64_t{1} << n;
    const std::int64_t modulus = std::int64_t{1} << value_qubits;

    const auto marked = marked_keys(problem, threshold);
    const std::uint64_t s = marked.size();
    const double hit = s == 0 ? 0.0 : amplified_mass(count, s, rotations);
    const double per_marked = s == 0 ? 0.0 : hit / static_cast<double>(s);
    const double per_other = s == count ? 0.0 : (1.0 - hit) / static_cast<double>(count - s);

    std::map<std::uint64_t, double> dist;
    std::size_t next_marked = 0;
    for (std::uint64_t key = 0; key < count; ++key) {
        const std::int64_t shifted = problem.objective.evaluate_index(key) - threshold;
        const auto raw = static_cast<std::uint64_t>(((shifted % modulus) + modulus) % modulus);
        const bool is_marked = next_marked < marked.size() && marked[next_marked] == key;
        if (is_marked) ++next_marked;
        // s == 0 leaves the oracle inert: the state stays uniform over keys.
        const double p = s == 0 ? 1.0 / static_cast<double>(count) : (is_marked ? per_marked : per_other);
        dist[key | (raw << n)] = p;
    }
    return dist;
}

}  // namespace qdgas
