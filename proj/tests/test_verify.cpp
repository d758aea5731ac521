#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "qdgas/oracle.hpp"
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

BinaryPolynomial hamming_below_two() {
    BinaryPolynomial c(3);
    c.add_term({0}, 1).add_term({1}, 1).add_term({2}, 1).add_term({}, -2);
    return c;
}

}  // namespace

TEST_CASE("brute_force_min") {
    SUBCASE("portfolio") {
        const auto r = brute_force_min({portfolio_objective(), {}});
        CHECK(r.value == -6);
        CHECK(r.argmins == std::vector<std::uint64_t>{0b101});
    }
    SUBCASE("portfolio with Hamming weight below two") {
        const auto r = brute_force_min({portfolio_objective(), {{hamming_below_two(), Relation::LessThanZero}}});
        CHECK(r.value == -3);
        CHECK(r.argmins == std::vector<std::uint64_t>{0b100});
    }
    SUBCASE("-2 + x0 + x1") {
        const auto r = brute_force_min({two_var_example(), {}});
        CHECK(r.value == -2);
        CHECK(r.argmins == std::vector<std::uint64_t>{0});
    }
    SUBCASE("ties return every minimizer") {
        BinaryPolynomial f(2);
        f.add_term({0}, 1).add_term({1}, 1).add_term({0, 1}, -2);
        CHECK(brute_force_min({f, {}}).argmins == std::vector<std::uint64_t>{0b00, 0b11});
    }
    SUBCASE("no feasible assignment") {
        BinaryPolynomial never(2);
        never.add_term({}, 1);
        CHECK_THROWS_AS(brute_force_min({two_var_example(), {{never, Relation::EqualsZero}}}), InfeasibleError);
    }
}

TEST_CASE("predict_distribution") {
    const CpboProblem problem{two_var_example(), {}};
    SUBCASE("y=-1, r=1 puts all mass on key 00") {
        const auto d = predict_distribution(problem, -1, 1, 3);
        double p00 = 0;
        for (const auto& [idx, p] : d) {
            if ((idx & 0b11) == 0) p00 += p;
        }
        CHECK(p00 == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("r=0 is uniform over keys") {
        for (const auto& [idx, p] : predict_distribution(problem, 0, 0, 3)) CHECK(p == doctest::Approx(0.25));
    }
    SUBCASE("s=0 matches r=0") {
        const auto a = predict_distribution(problem, -2, 3, 3);
        const auto b = predict_distribution(problem, -2, 0, 3);
        CHECK(a == b);
    }
}

TEST_CASE("predicted and simulated distributions agree") {
    const std::vector<CpboProblem> problems{
        {two_var_example(), {}},
        {portfolio_objective(), {}},
        {portfolio_objective(), {{hamming_below_two(), Relation::LessThanZero}}},
    };
    for (const auto& problem : problems) {
        const RegisterLayout layout = make_layout(problem);
        const auto range = brute_force_min(problem);
        std::int64_t hi = range.value;
        for (std::uint64_t key = 0; key < (std::uint64_t{1} << problem.num_vars()); ++key) {
            hi = std::max(hi, problem.objective.evaluate_index(key));
        }
        for (std::int64_t y = range.value; y <= hi; ++y) {
            const OracleSet set = build_constrained_oracle(problem, y, layout);
            for (int r = 0; r <= 5; ++r) {
                const auto simulated = key_value_distribution(run_grover(set, r), layout);
                const auto predicted = predict_distribution(problem, y, r, layout.value_qubits());
                double tv = 0;
                for (std::size_t idx = 0; idx < simulated.size(); ++idx) {
                    auto it = predicted.find(idx);
                    tv += std::abs(simulated[idx] - (it == predicted.end() ? 0.0 : it->second));
                }
                REQUIRE(tv / 2 < 1e-9);
            }
        }
    }
}

TEST_CASE("run_gas agrees with brute force") {
    const std::vector<CpboProblem> problems{
        {two_var_example(), {}},
        {portfolio_objective(), {}},
        {portfolio_objective(), {{hamming_below_two(), Relation::LessThanZero}}},
    };
    for (const auto& problem : problems) {
        const auto expected = brute_force_min(problem);
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            GasConfig config;
            config.seed = seed;
            config.patience = 12;
            CHECK(run_gas(problem, config).best_value == expected.value);
        }
    }
}
