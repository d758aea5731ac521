#include "qdgas/qsim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace qdgas {

namespace {

using Matrix2 = std::array<Amplitude, 4>;  // row-major

Matrix2 gate_matrix(const Gate& gate) {
    // Rotations have period 4*pi; reducing mod 2*pi would flip their sign.
    const double half = std::fmod(gate.angle, 4.0 * std::numbers::pi) / 2;
    const double s = 1.0 / std::numbers::sqrt2;
    const Amplitude i{0.0, 1.0};
    switch (gate.kind) {
    case GateKind::H:
        return {s, s, s, -s};
    case GateKind::X:
        return {0.0, 1.0, 1.0, 0.0};
    case GateKind::RX:
        return {std::cos(half), -i * std::sin(half), -i * std::sin(half), std::cos(half)};
    case GateKind::RY:
        return {std::cos(half), -std::sin(half), std::sin(half), std::cos(half)};
    default:
        throw std::logic_error("gate_matrix: not a dense single-qubit gate");
    }
}

std::uint64_t mask_of(const std::vector<int>& qubits) {
    std::uint64_t mask = 0;
    for (int q : qubits) mask |= std::uint64_t{1} << q;
    return mask;
}

}  // namespace

std::string to_string(GateKind kind) {
    switch (kind) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::Z: return "Z";
    case GateKind::Phase: return "Phase";
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::Swap: return "Swap";
    }
    return "?";
}

Gate Gate::h(int q, std::vector<int> controls) { return {GateKind::H, {q}, std::move(controls), 0.0}; }
Gate Gate::x(int q, std::vector<int> controls) { return {GateKind::X, {q}, std::move(controls), 0.0}; }
Gate Gate::z(int q, std::vector<int> controls) { return {GateKind::Z, {q}, std::move(controls), 0.0}; }
Gate Gate::phase(int q, double theta, std::vector<int> controls) {
    return {GateKind::Phase, {q}, std::move(controls), theta};
}
Gate Gate::rx(int q, double theta, std::vector<int> controls) {
    return {GateKind::RX, {q}, std::move(controls), theta};
}
Gate Gate::ry(int q, double theta, std::vector<int> controls) {
    return {GateKind::RY, {q}, std::move(controls), theta};
}
Gate Gate::swap(int a, int b, std::vector<int> controls) {
    return {GateKind::Swap, {a, b}, std::move(controls), 0.0};
}

Gate Gate::adjoint() const {
    Gate g = *this;
    if (g.has_angle()) g.angle = -g.angle;
    return g;
}

void validate_gate(const Gate& gate, int num_qubits) {
    const std::size_t expected_targets = gate.kind == GateKind::Swap ? 2 : 1;
    if (gate.targets.size() != expected_targets) {
        throw std::invalid_argument(to_string(gate.kind) + ": wrong number of targets");
    }
    auto in_range = [num_qubits](int q) { return q >= 0 && q < num_qubits; };
    for (int q : gate.targets) {
        if (!in_range(q)) throw std::out_of_range("gate target " + std::to_string(q) + " out of range");
    }
    for (int q : gate.controls) {
        if (!in_range(q)) throw std::out_of_range("gate control " + std::to_string(q) + " out of range");
    }
    if (gate.kind == GateKind::Swap && gate.targets[0] == gate.targets[1]) {
        throw std::invalid_argument("Swap targets must differ");
    }
    std::vector<int> controls = gate.controls;
    std::sort(controls.begin(), controls.end());
    if (std::adjacent_find(controls.begin(), controls.end()) != controls.end()) {
        throw std::invalid_argument("duplicate control qubit");
    }
    for (int t : gate.targets) {
        if (std::binary_search(controls.begin(), controls.end(), t)) {
            throw std::invalid_argument("control overlaps target qubit " + std::to_string(t));
        }
    }
}

Circuit::Circuit(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 0) throw std::invalid_argument("negative qubit count");
}

Circuit& Circuit::add(Gate gate) {
    validate_gate(gate, num_qubits_);
    gates_.push_back(std::move(gate));
    return *this;
}

Circuit& Circuit::append(const Circuit& other) {
    if (other.num_qubits_ > num_qubits_) {
        throw std::invalid_argument("appended circuit is wider than target circuit");
    }
    gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
    return *this;
}

Circuit adjoint(const Circuit& circuit) {
    Circuit out(circuit.num_qubits());
    const auto& gates = circuit.gates();
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) out.add(it->adjoint());
    return out;
}

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 0 || num_qubits > 30) throw std::invalid_argument("unsupported qubit count");
    amps_.assign(std::size_t{1} << num_qubits, Amplitude{0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector::StateVector(int num_qubits, std::vector<Amplitude> amplitudes)
    : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {
    if (num_qubits < 0 || num_qubits > 30) throw std::invalid_argument("unsupported qubit count");
    if (amps_.size() != (std::size_t{1} << num_qubits)) {
        throw std::invalid_argument("amplitude count must be 2^num_qubits");
    }
}

StateVector StateVector::basis(int num_qubits, std::uint64_t index) {
    StateVector s(num_qubits);
    if (index >= s.dimension()) throw std::out_of_range("basis index out of range");
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
}

double StateVector::norm() const {
    double sum = 0.0;
    for (const auto& a : amps_) sum += std::norm(a);
    return std::sqrt(sum);
}

void apply_gate(StateVector& state, const Gate& gate) {
    validate_gate(gate, state.num_qubits());
    auto amps = state.amplitudes();
    const std::uint64_t dim = amps.size();
    const std::uint64_t cmask = mask_of(gate.controls);
    const std::uint64_t tbit = std::uint64_t{1} << gate.targets[0];

    switch (gate.kind) {
    case GateKind::Z:
    case GateKind::Phase: {
        const Amplitude factor = gate.kind == GateKind::Z
                                     ? Amplitude{-1.0, 0.0}
                                     : std::polar(1.0, std::fmod(gate.angle, 2.0 * std::numbers::pi));
        const std::uint64_t need = cmask | tbit;
        for (std::uint64_t i = 0; i < dim; ++i) {
            if ((i & need) == need) amps[i] *= factor;
        }
        return;
    }
    case GateKind::Swap: {
        const std::uint64_t abit = tbit;
        const std::uint64_t bbit = std::uint64_t{1} << gate.targets[1];
        for (std::uint64_t i = 0; i < dim; ++i) {
            if ((i & cmask) == cmask && (i & abit) && !(i & bbit)) {
                std::swap(amps[i], amps[i ^ abit ^ bbit]);
            }
        }
        return;
    }
    case GateKind::X: {
        for (std::uint64_t i = 0; i < dim; ++i) {
            if ((i & cmask) == cmask && !(i & tbit)) std::swap(amps[i], amps[i | tbit]);
        }
        return;
    }
    default: {
        const Matrix2 m = gate_matrix(gate);
        for (std::uint64_t i = 0; i < dim; ++i) {
            if ((i & cmask) != cmask || (i & tbit)) continue;
            const Amplitude a0 = amps[i];
            const Amplitude a1 = amps[i | tbit];
            amps[i] = m[0] * a0 + m[1] * a1;
            amps[i | tbit] = m[2] * a0 + m[3] * a1;
        }
        return;
    }
    }
}

void apply_circuit(StateVector& state, const Circuit& circuit) {
    if (circuit.num_qubits() != state.num_qubits()) {
        throw std::invalid_argument("circuit has " + std::to_string(circuit.num_qubits()) +
                                    " qubits, state has " + std::to_string(state.num_qubits()));
    }
    for (const auto& gate : circuit.gates()) apply_gate(state, gate);
}

std::vector<double> probabilities(const StateVector& state) {
    std::vector<double> p(state.dimension());
    const auto amps = state.amplitudes();
    std::transform(amps.begin(), amps.end(), p.begin(), [](const Amplitude& a) { return std::norm(a); });
    return p;
}

std::uint64_t measure_all(const StateVector& state, std::mt19937_64& rng) {
    const double n = state.norm();
    if (std::abs(n - 1.0) > kMeasureNormGuard) {
        throw std::invalid_argument("cannot measure an unnormalized state (norm " + std::to_string(n) + ")");
    }
    const auto p = probabilities(state);
    const double u = std::uniform_real_distribution<double>(0.0, n * n)(rng);
    double acc = 0.0;
    std::uint64_t last_nonzero = 0;
    for (std::uint64_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0.0) continue;
        acc += p[i];
        last_nonzero = i;
        if (u < acc) return i;
    }
    return last_nonzero;
}

std::uint64_t measure_all(const StateVector& state, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return measure_all(state, rng);
}

Circuit qft(int num_qubits, int first, int width) {
    if (width < 1 || first < 0 || first + width > num_qubits) {
        throw std::out_of_range("QFT register out of range");
    }
    Circuit c(num_qubits);
    for (int j = width - 1; j >= 0; --j) {
        c.add(Gate::h(first + j));
        for (int k = j - 1; k >= 0; --k) {
            c.add(Gate::phase(first + j, std::numbers::pi / std::ldexp(1.0, j - k), {first + k}));
        }
    }
    for (int i = 0; i < width / 2; ++i) c.add(Gate::swap(first + i, first + width - 1 - i));
    return c;
}

Circuit inverse_qft(int num_qubits, int first, int width) {
    return adjoint(qft(num_qubits, first, width));
}

}  // namespace qdgas
