#include "qdgas/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qdgas {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kExhaustiveRangeLimit = 20;

std::pair<std::int64_t, std::int64_t> value_range(const BinaryPolynomial& poly) {
    if (poly.num_vars() > kExhaustiveRangeLimit) return {poly.lower_bound(), poly.upper_bound()};
    std::int64_t lo = poly.evaluate_index(0);
    std::int64_t hi = lo;
    const std::uint64_t count = std::uint64_t{1} << poly.num_vars();
    for (std::uint64_t key = 1; key < count; ++key) {
        const auto v = poly.evaluate_index(key);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return {lo, hi};
}

Circuit value_encoder(const BinaryPolynomial& poly, std::int64_t shift, const QubitRange& key,
                      const QubitRange& value, int num_qubits) {
    Circuit c(num_qubits);
    for (int q : value.qubits()) c.add(Gate::h(q));
    c.append(build_phase_blocks(poly, shift, key, value, num_qubits));
    c.append(inverse_qft(num_qubits, value.first, value.width));
    return c;
}

Circuit indicator_block(const CpboProblem& problem, const RegisterLayout& layout) {
    const int nq = layout.num_qubits();
    Circuit c(nq);
    for (std::size_t i = 0; i < problem.constraints.size(); ++i) {
        const auto& constraint = problem.constraints[i];
        const QubitRange& reg = layout.constraint(i);
        const Circuit compute = value_encoder(constraint.polynomial, 0, layout.key(), reg, nq);
        c.append(compute);
        if (constraint.relation == Relation::LessThanZero) {
            c.add(Gate::x(layout.flag(i), {reg.msb()}));
        } else {
            for (int q : reg.qubits()) c.add(Gate::x(q));
            c.add(Gate::x(layout.flag(i), reg.qubits()));
            for (int q : reg.qubits()) c.add(Gate::x(q));
        }
        c.append(adjoint(compute));
    }
    return c;
}

}  // namespace

std::vector<int> QubitRange::qubits() const {
    std::vector<int> out(width);
    for (int i = 0; i < width; ++i) out[i] = first + i;
    return out;
}

std::uint64_t QubitRange::extract(std::uint64_t basis_index) const {
    return (basis_index >> first) & ((std::uint64_t{1} << width) - 1);
}

RegisterLayout::RegisterLayout(int num_keys, int value_qubits,
                               std::vector<std::pair<std::string, int>> constraint_registers,
                               LayoutOptions options) {
    if (num_keys < 0) throw std::invalid_argument("negative key register width");
    if (value_qubits < 2) throw std::invalid_argument("value register needs at least 2 qubits");
    int next = 0;
    key_ = {next, num_keys};
    next += num_keys;
    value_ = {next, value_qubits};
    next += value_qubits;
    for (auto& [name, width] : constraint_registers) {
        if (width < 2) throw std::invalid_argument("constraint register '" + name + "' needs at least 2 qubits");
        constraints_.emplace_back(std::move(name), QubitRange{next, width});
        next += width;
    }
    for (std::size_t i = 0; i < constraints_.size(); ++i) flags_.push_back(next++);
    if (options.global_flag) global_flag_ = next++;
    if (options.ancilla) ancilla_ = next++;
    total_ = next;
}

std::uint64_t RegisterLayout::key_value_index(std::uint64_t basis_index) const {
    return key_.extract(basis_index) | (value_.extract(basis_index) << key_.width);
}

int twos_complement_width(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw std::invalid_argument("empty range");
    int m = 2;
    while (m < 63) {
        const std::int64_t half = std::int64_t{1} << (m - 1);
        if (lo >= -half && hi < half) return m;
        ++m;
    }
    throw OverflowError("value range too wide for a 62-qubit register");
}

int default_value_qubits(const BinaryPolynomial& objective) {
    const auto span = static_cast<std::uint64_t>(objective.upper_bound() - objective.lower_bound()) + 1;
    const int magnitude_bits = span <= 1 ? 0 : std::bit_width(span - 1);
    return std::max(2, magnitude_bits + 1);
}

RegisterLayout make_layout(const CpboProblem& problem, std::optional<int> value_qubits, LayoutOptions options) {
    problem.validate();
    const int m = value_qubits.value_or(default_value_qubits(problem.objective));
    std::vector<std::pair<std::string, int>> registers;
    for (std::size_t i = 0; i < problem.constraints.size(); ++i) {
        const auto [lo, hi] = value_range(problem.constraints[i].polynomial);
        registers.emplace_back("c" + std::to_string(i), twos_complement_width(lo, hi));
    }
    return RegisterLayout(problem.num_vars(), m, std::move(registers), options);
}

std::uint64_t encode_twos_complement(std::int64_t k, int m) {
    if (m < 1 || m > 62) throw std::invalid_argument("register width out of range");
    const std::int64_t half = std::int64_t{1} << (m - 1);
    if (k < -half || k >= half) throw std::out_of_range("value does not fit the register");
    return static_cast<std::uint64_t>(k) & ((std::uint64_t{1} << m) - 1);
}

std::int64_t decode_value(std::uint64_t raw, int m) {
    if (m < 1 || m > 62) throw std::invalid_argument("register width out of range");
    const std::uint64_t size = std::uint64_t{1} << m;
    if (raw >= size) throw std::out_of_range("raw register value out of range");
    return raw < size / 2 ? static_cast<std::int64_t>(raw) : static_cast<std::int64_t>(raw) - static_cast<std::int64_t>(size);
}

void check_value_range(const BinaryPolynomial& poly, std::int64_t shift, int m) {
    const auto [lo, hi] = value_range(poly);
    const std::int64_t half = std::int64_t{1} << (m - 1);
    const std::int64_t shifted_lo = lo - shift;
    const std::int64_t shifted_hi = hi - shift;
    if (shifted_lo < -half || shifted_hi >= half) {
        const int need = twos_complement_width(shifted_lo, shifted_hi);
        throw ValueOverflowError("values in [" + std::to_string(shifted_lo) + ", " + std::to_string(shifted_hi) +
                                     "] need " + std::to_string(need) + " value qubits, have " + std::to_string(m),
                                 need);
    }
}

Circuit build_ug(double theta, const QubitRange& value, int num_qubits, const std::vector<int>& controls) {
    if (value.width < 1) throw std::invalid_argument("U_G needs at least one qubit");
    Circuit c(num_qubits);
    for (int bit = value.width - 1; bit >= 0; --bit) {
        c.add(Gate::phase(value.qubit(bit), std::ldexp(theta, bit), controls));
    }
    return c;
}

Circuit build_controlled_monomial(const Monomial& vars, std::int64_t coeff, const RegisterLayout& layout) {
    std::vector<int> controls;
    for (int v : canonical_monomial(vars)) {
        if (v < 0 || v >= layout.num_keys()) throw std::out_of_range("monomial variable out of range");
        controls.push_back(layout.key().qubit(v));
    }
    const double theta = kTwoPi * std::ldexp(static_cast<double>(coeff), -layout.value_qubits());
    return build_ug(theta, layout.value(), layout.num_qubits(), controls);
}

Circuit build_phase_blocks(const BinaryPolynomial& poly, std::int64_t shift, const QubitRange& key,
                           const QubitRange& value, int num_qubits) {
    Circuit c(num_qubits);
    auto block = [&](const Monomial& vars, std::int64_t coeff) {
        if (coeff == 0) return;
        std::vector<int> controls;
        for (int v : vars) controls.push_back(key.qubit(v));
        c.append(build_ug(kTwoPi * std::ldexp(static_cast<double>(coeff), -value.width), value, num_qubits, controls));
    };
    // Free term first, then monomials in canonical order.
    block({}, poly.constant() - shift);
    for (const auto& [vars, coeff] : poly.terms()) {
        if (!vars.empty()) block(vars, coeff);
    }
    return c;
}

std::string to_string(Encoder e) { return e == Encoder::Phase ? "phase" : "ry"; }

Circuit build_a(const BinaryPolynomial& poly, std::int64_t threshold, const RegisterLayout& layout) {
    if (poly.num_vars() != layout.num_keys()) throw std::invalid_argument("polynomial/key register size mismatch");
    check_value_range(poly, threshold, layout.value_qubits());
    Circuit c(layout.num_qubits());
    for (int q : layout.key().qubits()) c.add(Gate::h(q));
    c.append(value_encoder(poly, threshold, layout.key(), layout.value(), layout.num_qubits()));
    return c;
}

Circuit build_ry_eigenstate_prep(int qubit, int num_qubits) {
    Circuit c(num_qubits);
    c.add(Gate::rx(qubit, std::numbers::pi / 2));
    c.add(Gate::z(qubit));
    c.add(Gate::x(qubit));
    return c;
}

Circuit build_ry_encoder(const BinaryPolynomial& poly, std::int64_t threshold, const RegisterLayout& layout) {
    if (!layout.ancilla()) throw std::invalid_argument("R_y encoder needs an ancilla qubit in the layout");
    if (poly.num_vars() != layout.num_keys()) throw std::invalid_argument("polynomial/key register size mismatch");
    check_value_range(poly, threshold, layout.value_qubits());
    const int nq = layout.num_qubits();
    const int anc = *layout.ancilla();

    Circuit c(nq);
    for (int q : layout.key().qubits()) c.add(Gate::h(q));
    for (int q : layout.value().qubits()) c.add(Gate::h(q));
    const Circuit prep = build_ry_eigenstate_prep(anc, nq);
    c.append(prep);
    const Circuit phases = build_phase_blocks(poly, threshold, layout.key(), layout.value(), nq);
    for (const Gate& g : phases.gates()) {
        std::vector<int> controls = g.controls;
        controls.push_back(g.targets[0]);
        c.add(Gate::ry(anc, 2.0 * g.angle, std::move(controls)));
    }
    c.append(adjoint(prep));
    c.append(inverse_qft(nq, layout.value().first, layout.value_qubits()));
    return c;
}

Circuit build_sign_oracle(const RegisterLayout& layout) {
    Circuit c(layout.num_qubits());
    c.add(Gate::z(layout.value().msb()));
    return c;
}

Circuit build_diffusion(const RegisterLayout& layout) {
    const int nq = layout.num_qubits();
    Circuit c(nq);
    for (int q = 0; q < nq; ++q) c.add(Gate::x(q));
    std::vector<int> controls;
    for (int q = 1; q < nq; ++q) controls.push_back(q);
    c.add(Gate::z(0, std::move(controls)));
    for (int q = 0; q < nq; ++q) c.add(Gate::x(q));
    return c;
}

Circuit build_oracle(const CpboProblem& problem, const RegisterLayout& layout) {
    problem.validate();
    if (problem.constraints.size() != layout.num_constraints()) {
        throw std::invalid_argument("layout has " + std::to_string(layout.num_constraints()) +
                                    " constraint registers, problem has " + std::to_string(problem.constraints.size()));
    }
    if (problem.constraints.empty()) return build_sign_oracle(layout);

    for (std::size_t i = 0; i < problem.constraints.size(); ++i) {
        check_value_range(problem.constraints[i].polynomial, 0, layout.constraint(i).width);
    }

    const int nq = layout.num_qubits();
    const int sign = layout.value().msb();
    std::vector<int> flags;
    for (std::size_t i = 0; i < layout.num_constraints(); ++i) flags.push_back(layout.flag(i));

    const Circuit indicators = indicator_block(problem, layout);
    Circuit c(nq);
    c.append(indicators);
    if (auto global = layout.global_flag()) {
        std::vector<int> all = flags;
        all.push_back(sign);
        c.add(Gate::x(*global, all));
        c.add(Gate::z(*global));
        c.add(Gate::x(*global, all));
    } else {
        c.add(Gate::z(sign, flags));
    }
    c.append(adjoint(indicators));
    return c;
}

OracleSet build_constrained_oracle(const CpboProblem& problem, std::int64_t threshold,
                                   const RegisterLayout& layout, Encoder encoder) {
    OracleSet set;
    set.a_y = encoder == Encoder::Phase ? build_a(problem.objective, threshold, layout)
                                        : build_ry_encoder(problem.objective, threshold, layout);
    set.oracle = build_oracle(problem, layout);
    set.diffusion = build_diffusion(layout);
    set.grover_iterate = Circuit(layout.num_qubits());
    set.grover_iterate.append(set.oracle).append(adjoint(set.a_y)).append(set.diffusion).append(set.a_y);
    return set;
}

StateVector run_grover(const OracleSet& oracles, int rotations) {
    if (rotations < 0) throw std::invalid_argument("negative rotation count");
    StateVector state(oracles.a_y.num_qubits());
    apply_circuit(state, oracles.a_y);
    for (int r = 0; r < rotations; ++r) apply_circuit(state, oracles.grover_iterate);
    return state;
}

std::vector<double> key_value_distribution(const StateVector& state, const RegisterLayout& layout) {
    if (state.num_qubits() != layout.num_qubits()) throw std::invalid_argument("state/layout size mismatch");
    std::vector<double> dist(std::size_t{1} << (layout.num_keys() + layout.value_qubits()), 0.0);
    const auto amps = state.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) dist[layout.key_value_index(i)] += std::norm(amps[i]);
    return dist;
}

double work_register_mass(const StateVector& state, const RegisterLayout& layout) {
    const int kv = layout.num_keys() + layout.value_qubits();
    double mass = 0.0;
    const auto amps = state.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if (i >> kv) mass += std::norm(amps[i]);
    }
    return mass;
}

ResourceEstimate estimate_resources(const BinaryPolynomial& poly, const RegisterLayout& layout) {
    const int m = layout.value_qubits();
    ResourceEstimate est;
    est.value_h = m;
    est.key_h = layout.num_keys();
    est.inverse_qft = 1;
    for (const auto& [vars, coeff] : poly.terms()) {
        if (vars.empty()) est.r += m;
        else est.controlled_r[static_cast<int>(vars.size())] += m;
    }
    return est;
}

ResourceEstimate dense_qubo_resources(int num_keys, int value_qubits) {
    ResourceEstimate est;
    est.value_h = value_qubits;
    est.key_h = num_keys;
    est.r = value_qubits;
    if (num_keys >= 1) est.controlled_r[1] = value_qubits * num_keys;
    if (num_keys >= 2) est.controlled_r[2] = value_qubits * num_keys * (num_keys - 1) / 2;
    est.inverse_qft = 1;
    return est;
}

ResourceEstimate count_circuit_resources(const Circuit& a, const RegisterLayout& layout) {
    const Circuit tail = inverse_qft(layout.num_qubits(), layout.value().first, layout.value_qubits());
    const auto& gates = a.gates();
    std::size_t body_end = gates.size();
    ResourceEstimate est;
    if (gates.size() >= tail.size() && std::equal(tail.gates().begin(), tail.gates().end(), gates.end() - tail.size())) {
        body_end -= tail.size();
        est.inverse_qft = 1;
    }
    const QubitRange& key = layout.key();
    for (std::size_t i = 0; i < body_end; ++i) {
        const Gate& g = gates[i];
        const int t = g.targets[0];
        if (g.kind == GateKind::H) {
            if (t >= key.first && t < key.first + key.width) ++est.key_h;
            else ++est.value_h;
        } else if (g.kind == GateKind::Phase) {
            if (g.controls.empty()) ++est.r;
            else ++est.controlled_r[static_cast<int>(g.controls.size())];
        }
    }
    return est;
}

}  // namespace qdgas
