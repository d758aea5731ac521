#include "qdgas/fejer.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qdgas/oracle.hpp"
#include "qdgas/qsim.hpp"

namespace qdgas {

namespace {

void check_args(double a, int m) {
    if (m < 2 || m > 20) throw std::invalid_argument("Fejer encoding needs 2 <= m <= 20");
    const double half = std::ldexp(1.0, m - 1);
    if (!(a >= -half && a < half)) {
        throw std::out_of_range("target " + std::to_string(a) + " outside [-2^(m-1), 2^(m-1))");
    }
}

}  // namespace

std::vector<double> fejer_closed_form(double a, int m) {
    check_args(a, m);
    const double size = std::ldexp(1.0, m);
    std::vector<double> p(static_cast<std::size_t>(size));
    for (std::size_t j = 0; j < p.size(); ++j) {
        // delta = theta - 2 pi j / 2^m = 2 pi (a - j) / 2^m
        const double half_delta = std::numbers::pi * (a - static_cast<double>(j)) / size;
        const double den = std::sin(half_delta);
        if (std::abs(den) < 1e-15) {
            p[j] = 1.0;
        } else {
            const double num = std::sin(size * half_delta);
            p[j] = (num * num) / (size * size * den * den);
        }
    }
    return p;
}

std::vector<double> fejer_simulated(double a, int m) {
    check_args(a, m);
    const QubitRange reg{0, m};
    StateVector state(m);
    for (int q = 0; q < m; ++q) apply_gate(state, Gate::h(q));
    apply_circuit(state, build_ug(2.0 * std::numbers::pi * std::ldexp(a, -m), reg, m));
    apply_circuit(state, inverse_qft(m, 0, m));
    return probabilities(state);
}

FejerDistribution fejer_distribution(double a, int m) {
    FejerDistribution d;
    d.m = m;
    d.a = a;
    d.probabilities = fejer_closed_form(a, m);
    const auto simulated = fejer_simulated(a, m);
    for (std::size_t j = 0; j < simulated.size(); ++j) {
        d.route_discrepancy = std::max(d.route_discrepancy, std::abs(simulated[j] - d.probabilities[j]));
    }
    if (d.route_discrepancy > kStateTolerance) {
        throw std::logic_error("closed-form and simulated Fejer distributions disagree by " +
                               std::to_string(d.route_discrepancy));
    }
    return d;
}

double two_nearest_mass(const FejerDistribution& d) {
    const auto size = static_cast<std::int64_t>(d.probabilities.size());
    auto at = [&](std::int64_t v) { return d.probabilities[static_cast<std::size_t>(((v % size) + size) % size)]; };
    const auto lo = static_cast<std::int64_t>(std::floor(d.a));
    if (static_cast<double>(lo) == d.a) return at(lo);
    return at(lo) + at(lo + 1);
}

}  // namespace qdgas
