#include <array>
#include <cmath>

#include "doctest.h"
#include "qdgas/search.hpp"
#include "qdgas/verify.hpp"

using namespace qdgas;

namespace {

BinaryPolynomial two_var_example() {
    BinaryPolynomial p(2);
    p.add_term({}, -2).add_term({0}, 1).add_term({1}, 1);
    return p;
}

BinaryPolynomial portfolio_objective() {
    BinaryPolynomial p(3);
    p.add_term({0, 2}, -2).add_term({1, 2}, -1).add_term({0}, -1).add_term({1}, 2).add_term({2}, -3);
    return p;
}

CpboProblem constrained_portfolio() {
    BinaryPolynomial c(3);
    c.add_term({0}, 1).add_term({1}, 1).add_term({2}, 1).add_term({}, -2);
    return {portfolio_objective(), {{c, Relation::LessThanZero}}};
}

void check_trace_invariants(const CpboProblem& problem, const GasTrace& trace) {
    std::int64_t y = trace.initial_value;
    for (const auto& it : trace.iterations) {
        CHECK(it.threshold == y);
        CHECK(it.objective == problem.objective.evaluate_index(it.key));
        CHECK(it.register_value == decode_value(it.raw_value, trace.value_qubits));
        if (it.accepted) {
            CHECK(it.feasible);
            CHECK(it.objective < y);
            y = it.objective;
        }
        CHECK(it.rotations >= 0);
        CHECK(it.rotations <= static_cast<int>(std::ceil(it.k - 1.0)));
    }
    CHECK(trace.best_value == y);
    CHECK(is_feasible_index(problem, trace.best_key));
    CHECK(problem.objective.evaluate_index(trace.best_key) == trace.best_value);
}

}  // namespace

TEST_CASE("optimal_rotations") {
    CHECK(optimal_rotations(4, 1) == 1);
    CHECK(optimal_rotations(8, 1) == 2);
    CHECK(optimal_rotations(16, 16) == 0);
    CHECK_THROWS_AS(optimal_rotations(4, 0), std::invalid_argument);
}

TEST_CASE("sample_rotation_count") {
    std::mt19937_64 rng(1);
    SUBCASE("k=1 always draws 0") {
        for (int i = 0; i < 100; ++i) CHECK(sample_rotation_count(1.0, rng) == 0);
    }
    SUBCASE("k=2 draws 0 and 1 evenly") {
        int ones = 0;
        const int draws = 100000;
        for (int i = 0; i < draws; ++i) {
            const int r = sample_rotation_count(2.0, rng);
            REQUIRE((r == 0 || r == 1));
            ones += r;
        }
        CHECK(static_cast<double>(ones) / draws == doctest::Approx(0.5).epsilon(0.02));
    }
    SUBCASE("k=3.4 draws from {0..3}") {
        std::array<int, 4> seen{};
        for (int i = 0; i < 2000; ++i) {
            const int r = sample_rotation_count(3.4, rng);
            REQUIRE(r >= 0);
            REQUIRE(r <= 3);
            ++seen[r];
        }
        for (int c : seen) CHECK(c > 0);
    }
    SUBCASE("k < 1") { CHECK_THROWS_AS(sample_rotation_count(0.5, rng), std::invalid_argument); }
}

TEST_CASE("run_gas on -2 + x0 + x1") {
    const CpboProblem problem{two_var_example(), {}};
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        GasConfig config;
        config.seed = seed;
        config.patience = 10;
        const auto trace = run_gas(problem, config);
        CHECK(trace.best_value == -2);
        CHECK(trace.best_key == 0);
        check_trace_invariants(problem, trace);
    }
}

TEST_CASE("run_gas on the portfolio instances") {
    SUBCASE("unconstrained") {
        const CpboProblem problem{portfolio_objective(), {}};
        GasConfig config;
        config.seed = 7;
        config.patience = 10;
        const auto trace = run_gas(problem, config);
        CHECK(trace.best_value == -6);
        CHECK(trace.best_key == 0b101);
        check_trace_invariants(problem, trace);
    }
    SUBCASE("Hamming weight below two") {
        const auto problem = constrained_portfolio();
        GasConfig config;
        config.seed = 7;
        config.patience = 10;
        const auto trace = run_gas(problem, config);
        CHECK(trace.best_value == -3);
        CHECK(trace.best_key == 0b100);
        check_trace_invariants(problem, trace);
    }
}

TEST_CASE("run_gas invariants across seeds and encoders") {
    const auto problem = constrained_portfolio();
    for (auto encoder : {Encoder::Phase, Encoder::Ry}) {
        for (std::uint64_t seed = 100; seed < 120; ++seed) {
            GasConfig config;
            config.seed = seed;
            config.encoder = encoder;
            check_trace_invariants(problem, run_gas(problem, config));
        }
    }
}

TEST_CASE("run_gas is deterministic") {
    const CpboProblem problem{portfolio_objective(), {}};
    GasConfig config;
    config.seed = 31;
    config.record_histograms = true;
    const auto a = run_gas(problem, config);
    const auto b = run_gas(problem, config);
    REQUIRE(a.iterations.size() == b.iterations.size());
    for (std::size_t i = 0; i < a.iterations.size(); ++i) {
        CHECK(a.iterations[i].key == b.iterations[i].key);
        CHECK(a.iterations[i].raw_value == b.iterations[i].raw_value);
        CHECK(a.iterations[i].rotations == b.iterations[i].rotations);
        CHECK(a.iterations[i].histogram == b.iterations[i].histogram);
    }
    CHECK(a.best_key == b.best_key);
}

TEST_CASE("stopping rules") {
    const CpboProblem problem{portfolio_objective(), {}};
    GasConfig config;
    config.seed = 3;
    config.patience = 2;
    const auto trace = run_gas(problem, config);
    int tail = 0;
    for (auto it = trace.iterations.rbegin(); it != trace.iterations.rend() && !it->accepted; ++it) ++tail;
    CHECK(tail == 2);

    config.max_iterations = 1;
    CHECK(run_gas(problem, config).iterations.size() == 1);
}

TEST_CASE("with r chosen optimally, measured keys lie in the marked set") {
    // k stays at 1 here, so we check the degenerate sampling behaviour directly:
    // at r = optimal_rotations on an s = 1 instance the marked key dominates.
    const CpboProblem problem{two_var_example(), {}};
    const RegisterLayout layout = make_layout(problem);
    const auto marked = marked_keys(problem, -1);
    REQUIRE(marked.size() == 1);
    const int r = optimal_rotations(4, marked.size());
    const auto state = run_grover(build_constrained_oracle(problem, -1, layout), r);
    std::mt19937_64 rng(9);
    for (int i = 0; i < 200; ++i) CHECK(layout.key().extract(measure_all(state, rng)) == marked[0]);
}

TEST_CASE("run_gas errors") {
    BinaryPolynomial never(2);
    never.add_term({}, 1);
    const CpboProblem infeasible{two_var_example(), {{never, Relation::LessThanZero}}};
    CHECK_THROWS_AS(run_gas(infeasible, GasConfig{}), InfeasibleError);

    GasConfig tiny;
    tiny.value_qubits = 2;
    const CpboProblem problem{portfolio_objective(), {}};
    CHECK_THROWS_AS(run_gas(problem, tiny), ValueOverflowError);

    GasConfig bad;
    bad.lambda = 1.0;
    CHECK_THROWS_AS(run_gas(problem, bad), std::invalid_argument);
}
