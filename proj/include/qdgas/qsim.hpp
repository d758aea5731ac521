#pragma once

// Exact statevector simulation over a small closed gate set.
//
// Qubit 0 is the least-significant bit of the basis-state index. Every
// register decoder in the library follows this convention.

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace qdgas {

using Amplitude = std::complex<double>;

/// Tolerance for norm and unitarity checks on simulated states.
inline constexpr double kStateTolerance = 1e-9;
/// Maximum norm deviation accepted before sampling from a state.
inline constexpr double kMeasureNormGuard = 1e-6;

enum class GateKind { H, X, Z, Phase, RX, RY, Swap };

std::string to_string(GateKind kind);

struct Gate {
    GateKind kind = GateKind::H;
    std::vector<int> targets;   // one qubit, two for Swap
    std::vector<int> controls;  // any size, possibly empty
    double angle = 0.0;         // radians; stored as given, reduced mod 2*pi on application

    static Gate h(int q, std::vector<int> controls = {});
    static Gate x(int q, std::vector<int> controls = {});
    static Gate z(int q, std::vector<int> controls = {});
    static Gate phase(int q, double theta, std::vector<int> controls = {});
    static Gate rx(int q, double theta, std::vector<int> controls = {});
    static Gate ry(int q, double theta, std::vector<int> controls = {});
    static Gate swap(int a, int b, std::vector<int> controls = {});

    bool has_angle() const noexcept {
        return kind == GateKind::Phase || kind == GateKind::RX || kind == GateKind::RY;
    }
    Gate adjoint() const;

    friend bool operator==(const Gate&, const Gate&) = default;
};

class Circuit {
public:
    Circuit() = default;
    explicit Circuit(int num_qubits);

    int num_qubits() const noexcept { return num_qubits_; }
    const std::vector<Gate>& gates() const noexcept { return gates_; }
    std::size_t size() const noexcept { return gates_.size(); }
    bool empty() const noexcept { return gates_.empty(); }

    /// Appends a gate after validating its indices against the circuit width.
    Circuit& add(Gate gate);
    /// Appends every gate of `other`, which must not be wider than this circuit.
    Circuit& append(const Circuit& other);

    friend bool operator==(const Circuit&, const Circuit&) = default;

private:
    int num_qubits_ = 0;
    std::vector<Gate> gates_;
};

/// Reversed gate order with every rotation angle negated.
Circuit adjoint(const Circuit& circuit);

/// Throws std::out_of_range / std::invalid_argument when a gate cannot act on
/// `num_qubits` qubits.
void validate_gate(const Gate& gate, int num_qubits);

class StateVector {
public:
    /// |0...0> on `num_qubits` qubits.
    explicit StateVector(int num_qubits);
    StateVector(int num_qubits, std::vector<Amplitude> amplitudes);

    static StateVector basis(int num_qubits, std::uint64_t index);

    int num_qubits() const noexcept { return num_qubits_; }
    std::size_t dimension() const noexcept { return amps_.size(); }

    std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
    std::span<Amplitude> amplitudes() noexcept { return amps_; }
    const Amplitude& operator[](std::size_t i) const { return amps_[i]; }
    Amplitude& operator[](std::size_t i) { return amps_[i]; }

    double norm() const;

private:
    int num_qubits_;
    std::vector<Amplitude> amps_;
};

void apply_gate(StateVector& state, const Gate& gate);
void apply_circuit(StateVector& state, const Circuit& circuit);

/// Elementwise |amplitude|^2.
std::vector<double> probabilities(const StateVector& state);

/// Draws one basis index from the Born distribution.
std::uint64_t measure_all(const StateVector& state, std::mt19937_64& rng);
std::uint64_t measure_all(const StateVector& state, std::uint64_t seed);

/// Textbook inverse QFT on the contiguous range [first, first + width), built
/// from H, controlled Phase and Swap. Maps sum_k e^{2 pi i j k / 2^w} |k> / sqrt(2^w)
/// to |j>, with register bit 0 at qubit `first`.
Circuit inverse_qft(int num_qubits, int first, int width);
Circuit qft(int num_qubits, int first, int width);

}  // namespace qdgas
