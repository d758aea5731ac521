#pragma once

// Problem model: multilinear polynomials over binary variables, QUBO data,
// constraints and real-coefficient quantization.

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdgas {

/// Sorted, duplicate-free set of variable indices. The empty monomial is the
/// free term.
using Monomial = std::vector<int>;

/// One binary assignment; element i is the value of variable i.
using Assignment = std::vector<std::uint8_t>;

class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Integer-coefficient multilinear polynomial sum_J a_J prod_{j in J} x_j.
///
/// Terms are kept canonical: monomials sorted and duplicate-free, zero
/// coefficients removed. Products of a variable with itself collapse since
/// x^2 = x on binary inputs.
class BinaryPolynomial {
public:
    BinaryPolynomial() = default;
    explicit BinaryPolynomial(int num_vars);

    int num_vars() const noexcept { return num_vars_; }
    const std::map<Monomial, std::int64_t>& terms() const noexcept { return terms_; }

    /// Adds `coeff` to the coefficient of the monomial over `vars`. Repeated
    /// indices are merged.
    BinaryPolynomial& add_term(Monomial vars, std::int64_t coeff);
    BinaryPolynomial& operator+=(const BinaryPolynomial& other);
    BinaryPolynomial operator*(const BinaryPolynomial& other) const;
    BinaryPolynomial scaled(std::int64_t factor) const;

    std::int64_t coefficient(const Monomial& vars) const;
    std::int64_t constant() const { return coefficient({}); }
    int degree() const;
    bool is_zero() const noexcept { return terms_.empty(); }

    /// Exact value at `x`; throws OverflowError instead of wrapping.
    std::int64_t evaluate(std::span<const std::uint8_t> x) const;
    /// Value at the assignment whose bit i is variable i.
    std::int64_t evaluate_index(std::uint64_t key) const;

    /// Sum of negative / positive coefficients, i.e. coarse value bounds.
    std::int64_t lower_bound() const;
    std::int64_t upper_bound() const;

    std::string to_string() const;

    friend bool operator==(const BinaryPolynomial&, const BinaryPolynomial&) = default;

private:
    int num_vars_ = 0;
    std::map<Monomial, std::int64_t> terms_;
};

Monomial canonical_monomial(Monomial vars);

/// Assignment with bit i of `key` as variable i.
Assignment assignment_from_index(std::uint64_t key, int num_vars);
std::uint64_t index_from_assignment(std::span<const std::uint8_t> x);

struct RealPolynomial {
    int num_vars = 0;
    std::map<Monomial, double> terms;

    void add_term(Monomial vars, double coeff);
    double evaluate(std::span<const std::uint8_t> x) const;
};

/// min_x x^T Q x + b^T x + c.
struct QuboProblem {
    std::vector<std::vector<double>> Q;
    std::vector<double> b;
    double c = 0.0;

    int num_vars() const { return static_cast<int>(b.size()); }
    void validate() const;
    double evaluate(std::span<const std::uint8_t> x) const;
};

/// Exact conversion; every entry of Q, b and c must be an integer.
BinaryPolynomial qubo_to_polynomial(const QuboProblem& q);
/// Real-coefficient conversion, suitable as input to quantize().
RealPolynomial qubo_to_real_polynomial(const QuboProblem& q);

/// QUBO for min_x risk * x^T Sigma x - mu^T x.
QuboProblem portfolio_qubo(std::span<const double> mu, const std::vector<std::vector<double>>& sigma,
                           double risk);

/// Assignments (as indices) on which two polynomials disagree.
std::vector<std::uint64_t> compare_polynomials(const BinaryPolynomial& a, const BinaryPolynomial& b);

enum class Relation { LessThanZero, EqualsZero };

std::string to_string(Relation r);

struct Constraint {
    BinaryPolynomial polynomial;
    Relation relation = Relation::LessThanZero;

    bool satisfied(std::span<const std::uint8_t> x) const;
};

struct CpboProblem {
    BinaryPolynomial objective;
    std::vector<Constraint> constraints;

    int num_vars() const noexcept { return objective.num_vars(); }
    void validate() const;
};

bool is_feasible(const CpboProblem& problem, std::span<const std::uint8_t> x);
bool is_feasible_index(const CpboProblem& problem, std::uint64_t key);

/// lambda * (sum_i x_i - target)^2 expanded over n binary variables.
BinaryPolynomial equality_to_penalty(int num_vars, std::int64_t target, std::int64_t lambda);

struct QuantizationReport {
    /// Factor mapping real coefficients onto the integer grid (2^{m-1} / max|v|).
    double scale = 0.0;
    BinaryPolynomial quantized;
    double max_abs_error = 0.0;
};

/// Rounds every coefficient to round(v / max|v| * 2^{m-1}), half away from
/// zero, clamping a positive maximum to 2^{m-1} - 1.
QuantizationReport quantize(const RealPolynomial& poly, int m);

}  // namespace qdgas
