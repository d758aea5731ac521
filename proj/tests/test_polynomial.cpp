#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "doctest.h"
#include "qdgas/polynomial.hpp"

using namespace qdgas;

namespace {

// f = -2 x1 x3 - x2 x3 - x1 + 2 x2 - 3 x3 with x1..x3 -> variables 0..2.
BinaryPolynomial portfolio_objective() {
    BinaryPolynomial p(3);
    p.add_term({0, 2}, -2).add_term({1, 2}, -1).add_term({0}, -1).add_term({1}, 2).add_term({2}, -3);
    return p;
}

std::int64_t brute_penalty(int n, std::uint64_t key, std::int64_t target, std::int64_t lambda) {
    std::int64_t sum = 0;
    for (int i = 0; i < n; ++i) sum += (key >> i) & 1U;
    return lambda * (sum - target) * (sum - target);
}

}  // namespace

TEST_CASE("canonical terms") {
    BinaryPolynomial p(3);
    p.add_term({2, 0, 2}, 3);
    CHECK(p.coefficient({0, 2}) == 3);
    p.add_term({0, 2}, -3);
    CHECK(p.terms().empty());
    CHECK_THROWS_AS(p.add_term({3}, 1), std::out_of_range);
}

TEST_CASE("evaluate") {
    const auto f = portfolio_objective();
    SUBCASE("portfolio objective at (1,0,1)") {
        const Assignment x{1, 0, 1};
        CHECK(f.evaluate(x) == -6);
    }
    SUBCASE("all zeros gives the free term") {
        BinaryPolynomial g(2);
        g.add_term({}, 7).add_term({0, 1}, 5);
        CHECK(g.evaluate(Assignment{0, 0}) == 7);
    }
    SUBCASE("-2 + x0 + x1 at (1,1)") {
        BinaryPolynomial g(2);
        g.add_term({}, -2).add_term({0}, 1).add_term({1}, 1);
        CHECK(g.evaluate(Assignment{1, 1}) == 0);
    }
    SUBCASE("bad assignments") {
        CHECK_THROWS_AS(f.evaluate(Assignment{1, 0}), std::invalid_argument);
        CHECK_THROWS_AS(f.evaluate(Assignment{1, 2, 0}), std::invalid_argument);
    }
    SUBCASE("overflow is an error") {
        BinaryPolynomial g(2);
        g.add_term({0}, std::numeric_limits<std::int64_t>::max()).add_term({1}, 1);
        CHECK_THROWS_AS(g.evaluate(Assignment{1, 1}), OverflowError);
    }
    SUBCASE("index form agrees with the vector form") {
        for (std::uint64_t key = 0; key < 8; ++key) {
            CHECK(f.evaluate_index(key) == f.evaluate(assignment_from_index(key, 3)));
        }
    }
}

TEST_CASE("qubo_to_polynomial") {
    SUBCASE("diagonal merges with the linear term") {
        QuboProblem q{{{2, 0}, {0, 0}}, {-1, 0}, 0};
        const auto p = qubo_to_polynomial(q);
        CHECK(p.terms().size() == 1);
        CHECK(p.coefficient({0}) == 1);
    }
    SUBCASE("constant only") {
        QuboProblem q{{{0, 0}, {0, 0}}, {0, 0}, 5};
        const auto p = qubo_to_polynomial(q);
        CHECK(p.terms().size() == 1);
        CHECK(p.constant() == 5);
    }
    SUBCASE("non-integer entries are rejected") {
        QuboProblem q{{{0.5}}, {0}, 0};
        CHECK_THROWS_AS(qubo_to_polynomial(q), std::invalid_argument);
    }
    SUBCASE("exhaustive agreement with x^T Q x + b^T x + c") {
        std::mt19937_64 rng(17);
        std::uniform_int_distribution<int> coeff(-9, 9);
        for (int n : {1, 4, 8, 12}) {
            QuboProblem q;
            q.Q.assign(n, std::vector<double>(n));
            q.b.resize(n);
            for (auto& row : q.Q) {
                for (auto& v : row) v = coeff(rng);
            }
            for (auto& v : q.b) v = coeff(rng);
            q.c = coeff(rng);
            const auto p = qubo_to_polynomial(q);
            for (std::uint64_t key = 0; key < (std::uint64_t{1} << n); ++key) {
                const auto x = assignment_from_index(key, n);
                REQUIRE(static_cast<double>(p.evaluate(x)) == q.evaluate(x));
            }
        }
    }
}

TEST_CASE("portfolio data does not expand to the printed objective") {
    const std::vector<double> mu{1, -2, 3};
    const std::vector<std::vector<double>> sigma{{2, 0, -4}, {0, 4, -2}, {-4, -2, 10}};
    const auto expanded = qubo_to_polynomial(portfolio_qubo(mu, sigma, 0.5));
    // 0.5 x^T Sigma x - mu^T x = -4 x1x3 - 2 x2x3 + 4 x2 + 2 x3
    BinaryPolynomial expected(3);
    expected.add_term({0, 2}, -4).add_term({1, 2}, -2).add_term({1}, 4).add_term({2}, 2);
    CHECK(expanded == expected);
    const auto diff = compare_polynomials(expanded, portfolio_objective());
    CHECK_FALSE(diff.empty());
    CHECK(diff.size() == 7);
}

TEST_CASE("equality_to_penalty") {
    SUBCASE("n=2, B=1, lambda=10") {
        const auto p = equality_to_penalty(2, 1, 10);
        BinaryPolynomial expected(2);
        expected.add_term({}, 10).add_term({0}, -10).add_term({1}, -10).add_term({0, 1}, 20);
        CHECK(p == expected);
    }
    SUBCASE("B=0 is the square of the sum") {
        const auto p = equality_to_penalty(3, 0, 1);
        for (int i = 0; i < 3; ++i) CHECK(p.coefficient({i}) == 1);
        CHECK(p.coefficient({0, 1}) == 2);
        CHECK(p.coefficient({1, 2}) == 2);
        CHECK(p.constant() == 0);
    }
    SUBCASE("n=1, B=1") {
        const auto p = equality_to_penalty(1, 1, 1);
        BinaryPolynomial expected(1);
        expected.add_term({}, 1).add_term({0}, -1);
        CHECK(p == expected);
    }
    SUBCASE("non-positive weight") { CHECK_THROWS_AS(equality_to_penalty(2, 1, 0), std::invalid_argument); }
    SUBCASE("zero exactly on satisfying keys, >= lambda elsewhere") {
        for (int n : {1, 5, 9, 12}) {
            for (std::int64_t target : {std::int64_t{0}, std::int64_t{n / 2}, std::int64_t{n}}) {
                const std::int64_t lambda = 3;
                const auto p = equality_to_penalty(n, target, lambda);
                for (std::uint64_t key = 0; key < (std::uint64_t{1} << n); ++key) {
                    const auto v = p.evaluate_index(key);
                    REQUIRE(v == brute_penalty(n, key, target, lambda));
                    const bool satisfied = std::popcount(key) == target;
                    REQUIRE((satisfied ? v == 0 : v >= lambda));
                }
            }
        }
    }
}

TEST_CASE("quantize") {
    SUBCASE("worked example: returns vector, m=5") {
        RealPolynomial mu{3, {}};
        mu.add_term({0}, -3.77e-3);
        mu.add_term({1}, 1.09e-3);
        mu.add_term({2}, 2.41e-3);
        const auto r = quantize(mu, 5);
        CHECK(r.quantized.coefficient({0}) == -16);
        CHECK(r.quantized.coefficient({1}) == 5);
        CHECK(r.quantized.coefficient({2}) == 10);
        CHECK(r.scale == doctest::Approx(16 / 3.77e-3));
        // true max |v*16/max - round(.)| / 16
        const double e1 = std::abs(1.09 / 3.77 * 16 - 5) / 16;
        const double e2 = std::abs(2.41 / 3.77 * 16 - 10) / 16;
        CHECK(r.max_abs_error == doctest::Approx(std::max(e1, e2)));
    }
    SUBCASE("integers already on the grid are unchanged") {
        RealPolynomial p{2, {}};
        p.add_term({0}, -8);
        p.add_term({1}, 3);
        p.add_term({0, 1}, 7);
        const auto r = quantize(p, 4);
        CHECK(r.quantized.coefficient({0}) == -8);
        CHECK(r.quantized.coefficient({1}) == 3);
        CHECK(r.quantized.coefficient({0, 1}) == 7);
        CHECK(r.max_abs_error == 0.0);
    }
    SUBCASE("(-1.0, 0.5), m=4") {
        RealPolynomial p{2, {}};
        p.add_term({0}, -1.0);
        p.add_term({1}, 0.5);
        const auto r = quantize(p, 4);
        CHECK(r.quantized.coefficient({0}) == -8);
        CHECK(r.quantized.coefficient({1}) == 4);
    }
    SUBCASE("positive maximum is clamped") {
        RealPolynomial p{1, {}};
        p.add_term({0}, 2.0);
        const auto r = quantize(p, 3);
        CHECK(r.quantized.coefficient({0}) == 3);
        CHECK(r.max_abs_error == doctest::Approx(0.25));
    }
    SUBCASE("half rounds away from zero") {
        RealPolynomial p{2, {}};
        p.add_term({0}, -1.0);
        p.add_term({1}, -0.0625);  // -0.5 on the m=4 grid
        CHECK(quantize(p, 4).quantized.coefficient({1}) == -1);
    }
    SUBCASE("errors") {
        RealPolynomial zero{2, {}};
        CHECK_THROWS_AS(quantize(zero, 4), std::invalid_argument);
        RealPolynomial p{1, {}};
        p.add_term({0}, 1.0);
        CHECK_THROWS_AS(quantize(p, 1), std::invalid_argument);
    }
}

TEST_CASE("quantization preserves the argmin when the error budget is below half the gap") {
    std::mt19937_64 rng(123);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    int checked = 0;
    for (int trial = 0; trial < 400 && checked < 25; ++trial) {
        const int n = 4;
        const int m = 10;
        RealPolynomial p{n, {}};
        for (int i = 0; i < n; ++i) {
            p.add_term({i}, coeff(rng));
            for (int j = i + 1; j < n; ++j) p.add_term({i, j}, coeff(rng));
        }
        double max_abs = 0;
        for (const auto& [v, c] : p.terms) max_abs = std::max(max_abs, std::abs(c));
        std::vector<double> exact;
        for (std::uint64_t key = 0; key < 16; ++key) exact.push_back(p.evaluate(assignment_from_index(key, n)) / max_abs);
        std::vector<double> sorted = exact;
        std::sort(sorted.begin(), sorted.end());
        double min_gap = std::numeric_limits<double>::infinity();
        for (std::size_t i = 1; i < sorted.size(); ++i) {
            if (sorted[i] > sorted[i - 1]) min_gap = std::min(min_gap, sorted[i] - sorted[i - 1]);
        }
        const auto r = quantize(p, m);
        if (!(r.max_abs_error * static_cast<double>(p.terms.size()) < min_gap / 2)) continue;
        ++checked;
        const auto exact_arg = std::min_element(exact.begin(), exact.end()) - exact.begin();
        std::int64_t best = std::numeric_limits<std::int64_t>::max();
        std::set<std::uint64_t> quant_args;
        for (std::uint64_t key = 0; key < 16; ++key) {
            const auto v = r.quantized.evaluate_index(key);
            if (v < best) {
                best = v;
                quant_args = {key};
            } else if (v == best) {
                quant_args.insert(key);
            }
        }
        CHECK(quant_args.count(static_cast<std::uint64_t>(exact_arg)) == 1);
        CHECK(quant_args.size() == 1);
    }
    CHECK(checked >= 5);
}

TEST_CASE("is_feasible") {
    BinaryPolynomial hamming(3);
    hamming.add_term({0}, 1).add_term({1}, 1).add_term({2}, 1).add_term({}, -2);
    CpboProblem problem{portfolio_objective(), {{hamming, Relation::LessThanZero}}};
    CHECK(is_feasible(problem, Assignment{1, 0, 0}));
    CHECK_FALSE(is_feasible(problem, Assignment{1, 1, 0}));
    CpboProblem unconstrained{portfolio_objective(), {}};
    for (std::uint64_t key = 0; key < 8; ++key) CHECK(is_feasible_index(unconstrained, key));

    BinaryPolynomial one_hot(3);
    one_hot.add_term({0}, 1).add_term({1}, 1).add_term({2}, 1).add_term({}, -1);
    CpboProblem eq{portfolio_objective(), {{one_hot, Relation::EqualsZero}}};
    CHECK(is_feasible(eq, Assignment{0, 1, 0}));
    CHECK_FALSE(is_feasible(eq, Assignment{0, 0, 0}));
}
