#pragma once

// Quantum-dictionary circuits for Grover adaptive search: state preparation
// A_y, the sign and constraint oracles, diffusion and the Grover iterate.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qdgas/polynomial.hpp"
#include "qdgas/qsim.hpp"

namespace qdgas {

/// Raised when f(x) - y does not fit the value register; carries the width
/// that would fit.
class ValueOverflowError : public OverflowError {
public:
    ValueOverflowError(const std::string& what, int required_qubits)
        : OverflowError(what), required_qubits_(required_qubits) {}
    int required_qubits() const noexcept { return required_qubits_; }

private:
    int required_qubits_;
};

/// Contiguous qubit range; register bit i lives on qubit first + i.
struct QubitRange {
    int first = 0;
    int width = 0;

    int qubit(int bit) const { return first + bit; }
    int msb() const { return first + width - 1; }
    std::vector<int> qubits() const;
    std::uint64_t extract(std::uint64_t basis_index) const;
};

struct LayoutOptions {
    bool global_flag = false;  ///< AND the indicators into one extra qubit before the phase flip
    bool ancilla = false;      ///< one extra qubit for the R_y eigenstate encoder
};

/// Qubit map: key [0, n), value [n, n + m), then one register per constraint,
/// one indicator per constraint, the optional global flag and the optional
/// R_y ancilla.
class RegisterLayout {
public:
    RegisterLayout(int num_keys, int value_qubits,
                   std::vector<std::pair<std::string, int>> constraint_registers = {},
                   LayoutOptions options = {});

    const QubitRange& key() const noexcept { return key_; }
    const QubitRange& value() const noexcept { return value_; }
    int num_keys() const noexcept { return key_.width; }
    int value_qubits() const noexcept { return value_.width; }

    std::size_t num_constraints() const noexcept { return constraints_.size(); }
    const std::string& constraint_name(std::size_t i) const { return constraints_.at(i).first; }
    const QubitRange& constraint(std::size_t i) const { return constraints_.at(i).second; }
    int flag(std::size_t i) const { return flags_.at(i); }
    std::optional<int> global_flag() const noexcept { return global_flag_; }
    std::optional<int> ancilla() const noexcept { return ancilla_; }

    int num_qubits() const noexcept { return total_; }

    /// Index into the joint key/value space: key | value << n.
    std::uint64_t key_value_index(std::uint64_t basis_index) const;

private:
    QubitRange key_;
    QubitRange value_;
    std::vector<std::pair<std::string, QubitRange>> constraints_;
    std::vector<int> flags_;
    std::optional<int> global_flag_;
    std::optional<int> ancilla_;
    int total_ = 0;
};

/// Smallest two's-complement width (>= 2) holding every integer in [lo, hi].
int twos_complement_width(std::int64_t lo, std::int64_t hi);

/// Default value-register width: ceil(log2(U - L + 1)) + 1 with L, U the sums
/// of negative and positive coefficients. Keeps f(x) - y in range for every
/// threshold y in [L, U].
int default_value_qubits(const BinaryPolynomial& objective);

/// Builds the layout for a problem. Constraint registers get the minimal
/// width for their value range.
RegisterLayout make_layout(const CpboProblem& problem, std::optional<int> value_qubits = std::nullopt,
                           LayoutOptions options = {});

std::uint64_t encode_twos_complement(std::int64_t k, int m);
/// raw if raw < 2^{m-1}, else raw - 2^m.
std::int64_t decode_value(std::uint64_t raw, int m);

/// Throws ValueOverflowError unless every f(x) - shift fits in m qubits.
/// Exhaustive for n <= 20, coefficient bounds otherwise.
void check_value_range(const BinaryPolynomial& poly, std::int64_t shift, int m);

/// Geometric-sequence operator U_G(theta): R(2^j theta) on register bit j,
/// emitted from the most significant bit down. Every gate carries `controls`.
Circuit build_ug(double theta, const QubitRange& value, int num_qubits, const std::vector<int>& controls = {});

/// C^J(U_G(2 pi a / 2^m)) controlled on the key qubits named by J.
Circuit build_controlled_monomial(const Monomial& vars, std::int64_t coeff, const RegisterLayout& layout);

/// Phase blocks for every monomial of `poly`, with the free term shifted by
/// -shift, targeting `value` and controlled by `key`. No H or QFT.
Circuit build_phase_blocks(const BinaryPolynomial& poly, std::int64_t shift, const QubitRange& key,
                           const QubitRange& value, int num_qubits);

enum class Encoder { Phase, Ry };

std::string to_string(Encoder e);

/// A_y: H on key and value registers, one controlled U_G per monomial (free
/// term a_0 - y), inverse QFT on the value register.
Circuit build_a(const BinaryPolynomial& poly, std::int64_t threshold, const RegisterLayout& layout);

/// Same joint key/value state as build_a, with every phase rotation realised
/// as a controlled R_y(2 phi) kicked back from an ancilla in the eigenstate
/// (i|0> + |1>)/sqrt(2).
Circuit build_ry_encoder(const BinaryPolynomial& poly, std::int64_t threshold, const RegisterLayout& layout);

/// Prepares (i|0> + |1>)/sqrt(2) from |0> on `qubit`: R_x(pi/2), Z, X.
Circuit build_ry_eigenstate_prep(int qubit, int num_qubits);

/// Z on the value register's sign qubit.
Circuit build_sign_oracle(const RegisterLayout& layout);

/// Reflection about |0...0> of the whole layout.
Circuit build_diffusion(const RegisterLayout& layout);

/// Threshold-independent phase oracle. Flags states whose value register is
/// negative and whose key satisfies every constraint; constraint registers
/// and indicators are restored to |0>.
Circuit build_oracle(const CpboProblem& problem, const RegisterLayout& layout);

struct OracleSet {
    Circuit a_y;
    Circuit oracle;
    Circuit diffusion;
    Circuit grover_iterate;  ///< G = A D A^dagger O (O applied first)
};

OracleSet build_constrained_oracle(const CpboProblem& problem, std::int64_t threshold,
                                   const RegisterLayout& layout, Encoder encoder = Encoder::Phase);

/// G^r A |0>.
StateVector run_grover(const OracleSet& oracles, int rotations);

/// Marginal distribution over key | value << n.
std::vector<double> key_value_distribution(const StateVector& state, const RegisterLayout& layout);

/// Probability mass on basis states where any qubit outside the key and
/// value registers is 1.
double work_register_mass(const StateVector& state, const RegisterLayout& layout);

/// Gate counts for A, by class.
struct ResourceEstimate {
    int value_h = 0;            ///< H on the value register
    int key_h = 0;              ///< H on the key register, reported separately
    int r = 0;                  ///< uncontrolled phase gates (free term)
    std::map<int, int> controlled_r;  ///< control count -> controlled phase gates
    int inverse_qft = 0;

    int controlled(int k) const {
        auto it = controlled_r.find(k);
        return it == controlled_r.end() ? 0 : it->second;
    }
    friend bool operator==(const ResourceEstimate&, const ResourceEstimate&) = default;
};

ResourceEstimate estimate_resources(const BinaryPolynomial& poly, const RegisterLayout& layout);

/// Closed-form counts for a dense QUBO with non-zero offset.
ResourceEstimate dense_qubo_resources(int num_keys, int value_qubits);

/// Gate counts read off a built A circuit (H split by register, phase gates
/// by control count; the inverse QFT tail is recognised and counted once).
ResourceEstimate count_circuit_resources(const Circuit& a, const RegisterLayout& layout);

}  // namespace qdgas
