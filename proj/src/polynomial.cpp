#include "qdgas/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qdgas {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_add_overflow(a, b, &out)) throw OverflowError("integer overflow in polynomial arithmetic");
    return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("integer overflow in polynomial arithmetic");
    return out;
}

bool is_integer(double v) { return std::isfinite(v) && std::nearbyint(v) == v; }

std::int64_t to_integer(double v, const char* what) {
    if (!is_integer(v) || std::abs(v) > 9.0e15) {
        throw std::invalid_argument(std::string(what) + " must be an integer (quantize first)");
    }
    return static_cast<std::int64_t>(v);
}

}  // namespace

Monomial canonical_monomial(Monomial vars) {
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
}

BinaryPolynomial::BinaryPolynomial(int num_vars) : num_vars_(num_vars) {
    if (num_vars < 0) throw std::invalid_argument("negative variable count");
}

BinaryPolynomial& BinaryPolynomial::add_term(Monomial vars, std::int64_t coeff) {
    vars = canonical_monomial(std::move(vars));
    for (int v : vars) {
        if (v < 0 || v >= num_vars_) {
            throw std::out_of_range("variable index " + std::to_string(v) + " out of range");
        }
    }
    if (coeff == 0) return *this;
    auto [it, inserted] = terms_.try_emplace(std::move(vars), 0);
    it->second = checked_add(it->second, coeff);
    if (it->second == 0) terms_.erase(it);
    return *this;
}

BinaryPolynomial& BinaryPolynomial::operator+=(const BinaryPolynomial& other) {
    if (other.num_vars_ != num_vars_) throw std::invalid_argument("variable count mismatch");
    for (const auto& [vars, coeff] : other.terms_) add_term(vars, coeff);
    return *this;
}

BinaryPolynomial BinaryPolynomial::operator*(const BinaryPolynomial& other) const {
    if (other.num_vars_ != num_vars_) throw std::invalid_argument("variable count mismatch");
    BinaryPolynomial out(num_vars_);
    for (const auto& [va, ca] : terms_) {
        for (const auto& [vb, cb] : other.terms_) {
            Monomial merged = va;
            merged.insert(merged.end(), vb.begin(), vb.end());
            out.add_term(std::move(merged), checked_mul(ca, cb));
        }
    }
    return out;
}

BinaryPolynomial BinaryPolynomial::scaled(std::int64_t factor) const {
    BinaryPolynomial out(num_vars_);
    for (const auto& [vars, coeff] : terms_) out.add_term(vars, checked_mul(coeff, factor));
    return out;
}

std::int64_t BinaryPolynomial::coefficient(const Monomial& vars) const {
    auto it = terms_.find(canonical_monomial(vars));
    return it == terms_.end() ? 0 : it->second;
}

int BinaryPolynomial::degree() const {
    int d = 0;
    for (const auto& [vars, coeff] : terms_) d = std::max(d, static_cast<int>(vars.size()));
    return d;
}

std::int64_t BinaryPolynomial::evaluate(std::span<const std::uint8_t> x) const {
    if (static_cast<int>(x.size()) != num_vars_) {
        throw std::invalid_argument("assignment has " + std::to_string(x.size()) + " entries, expected " +
                                    std::to_string(num_vars_));
    }
    for (auto v : x) {
        if (v > 1) throw std::invalid_argument("assignment entries must be 0 or 1");
    }
    std::int64_t sum = 0;
    for (const auto& [vars, coeff] : terms_) {
        if (std::all_of(vars.begin(), vars.end(), [&](int j) { return x[j] == 1; })) {
            sum = checked_add(sum, coeff);
        }
    }
    return sum;
}

std::int64_t BinaryPolynomial::evaluate_index(std::uint64_t key) const {
    std::int64_t sum = 0;
    for (const auto& [vars, coeff] : terms_) {
        if (std::all_of(vars.begin(), vars.end(), [&](int j) { return (key >> j) & 1U; })) {
            sum = checked_add(sum, coeff);
        }
    }
    return sum;
}

std::int64_t BinaryPolynomial::lower_bound() const {
    std::int64_t sum = 0;
    for (const auto& [vars, coeff] : terms_) {
        if (coeff < 0) sum = checked_add(sum, coeff);
    }
    return sum;
}

std::int64_t BinaryPolynomial::upper_bound() const {
    std::int64_t sum = 0;
    for (const auto& [vars, coeff] : terms_) {
        if (coeff > 0) sum = checked_add(sum, coeff);
    }
    return sum;
}

std::string BinaryPolynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [vars, coeff] : terms_) {
        if (!first) os << (coeff < 0 ? " - " : " + ");
        else if (coeff < 0) os << "-";
        first = false;
        const std::int64_t mag = coeff < 0 ? -coeff : coeff;
        if (vars.empty() || mag != 1) os << mag;
        for (int v : vars) os << "x" << v;
    }
    return os.str();
}

Assignment assignment_from_index(std::uint64_t key, int num_vars) {
    Assignment x(num_vars);
    for (int i = 0; i < num_vars; ++i) x[i] = static_cast<std::uint8_t>((key >> i) & 1U);
    return x;
}

std::uint64_t index_from_assignment(std::span<const std::uint8_t> x) {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i]) key |= std::uint64_t{1} << i;
    }
    return key;
}

void RealPolynomial::add_term(Monomial vars, double coeff) {
    vars = canonical_monomial(std::move(vars));
    for (int v : vars) {
        if (v < 0 || v >= num_vars) throw std::out_of_range("variable index out of range");
    }
    terms[vars] += coeff;
    if (terms[vars] == 0.0) terms.erase(vars);
}

double RealPolynomial::evaluate(std::span<const std::uint8_t> x) const {
    double sum = 0.0;
    for (const auto& [vars, coeff] : terms) {
        if (std::all_of(vars.begin(), vars.end(), [&](int j) { return x[j] == 1; })) sum += coeff;
    }
    return sum;
}

void QuboProblem::validate() const {
    const std::size_t n = b.size();
    if (Q.size() != n) throw std::invalid_argument("Q must be n x n with n = len(b)");
    for (const auto& row : Q) {
        if (row.size() != n) throw std::invalid_argument("Q must be square");
    }
}

double QuboProblem::evaluate(std::span<const std::uint8_t> x) const {
    validate();
    double v = c;
    for (std::size_t i = 0; i < b.size(); ++i) {
        v += b[i] * x[i];
        for (std::size_t j = 0; j < b.size(); ++j) v += Q[i][j] * x[i] * x[j];
    }
    return v;
}

BinaryPolynomial qubo_to_polynomial(const QuboProblem& q) {
    q.validate();
    const int n = q.num_vars();
    BinaryPolynomial p(n);
    p.add_term({}, to_integer(q.c, "c"));
    for (int i = 0; i < n; ++i) {
        p.add_term({i}, to_integer(q.b[i], "b entry"));
        for (int j = 0; j < n; ++j) p.add_term({i, j}, to_integer(q.Q[i][j], "Q entry"));
    }
    return p;
}

RealPolynomial qubo_to_real_polynomial(const QuboProblem& q) {
    q.validate();
    RealPolynomial p{q.num_vars(), {}};
    p.add_term({}, q.c);
    for (int i = 0; i < p.num_vars; ++i) {
        p.add_term({i}, q.b[i]);
        for (int j = 0; j < p.num_vars; ++j) p.add_term({i, j}, q.Q[i][j]);
    }
    return p;
}

QuboProblem portfolio_qubo(std::span<const double> mu, const std::vector<std::vector<double>>& sigma,
                           double risk) {
    QuboProblem q;
    q.b.assign(mu.begin(), mu.end());
    for (auto& v : q.b) v = -v;
    q.Q = sigma;
    for (auto& row : q.Q) {
        for (auto& v : row) v *= risk;
    }
    q.validate();
    return q;
}

std::vector<std::uint64_t> compare_polynomials(const BinaryPolynomial& a, const BinaryPolynomial& b) {
    if (a.num_vars() != b.num_vars()) throw std::invalid_argument("variable count mismatch");
    if (a.num_vars() > 24) throw std::invalid_argument("too many variables to compare exhaustively");
    std::vector<std::uint64_t> diff;
    const std::uint64_t count = std::uint64_t{1} << a.num_vars();
    for (std::uint64_t key = 0; key < count; ++key) {
        if (a.evaluate_index(key) != b.evaluate_index(key)) diff.push_back(key);
    }
    return diff;
}

std::string to_string(Relation r) { return r == Relation::LessThanZero ? "<0" : "==0"; }

bool Constraint::satisfied(std::span<const std::uint8_t> x) const {
    const auto v = polynomial.evaluate(x);
    return relation == Relation::LessThanZero ? v < 0 : v == 0;
}

void CpboProblem::validate() const {
    for (std::size_t i = 0; i < constraints.size(); ++i) {
        if (constraints[i].polynomial.num_vars() != objective.num_vars()) {
            throw std::invalid_argument("constraint " + std::to_string(i) + " has a different variable count");
        }
    }
}

bool is_feasible(const CpboProblem& problem, std::span<const std::uint8_t> x) {
    return std::all_of(problem.constraints.begin(), problem.constraints.end(),
                       [&](const Constraint& c) { return c.satisfied(x); });
}

bool is_feasible_index(const CpboProblem& problem, std::uint64_t key) {
    return std::all_of(problem.constraints.begin(), problem.constraints.end(), [&](const Constraint& c) {
        const auto v = c.polynomial.evaluate_index(key);
        return c.relation == Relation::LessThanZero ? v < 0 : v == 0;
    });
}

BinaryPolynomial equality_to_penalty(int num_vars, std::int64_t target, std::int64_t lambda) {
    if (lambda <= 0) throw std::invalid_argument("penalty weight must be positive");
    BinaryPolynomial residual(num_vars);
    for (int i = 0; i < num_vars; ++i) residual.add_term({i}, 1);
    residual.add_term({}, -target);
    return (residual * residual).scaled(lambda);
}

QuantizationReport quantize(const RealPolynomial& poly, int m) {
    if (m < 2) throw std::invalid_argument("quantization needs m >= 2");
    if (m > 62) throw std::invalid_argument("quantization width too large");
    double max_abs = 0.0;
    for (const auto& [vars, v] : poly.terms) max_abs = std::max(max_abs, std::abs(v));
    if (max_abs == 0.0) throw std::invalid_argument("cannot quantize an all-zero polynomial");

    const double half_range = std::ldexp(1.0, m - 1);
    const auto hi = static_cast<std::int64_t>(half_range) - 1;
    QuantizationReport report;
    report.scale = half_range / max_abs;
    report.quantized = BinaryPolynomial(poly.num_vars);
    for (const auto& [vars, v] : poly.terms) {
        const double scaled = v / max_abs * half_range;
        auto q = static_cast<std::int64_t>(std::round(scaled));  // half away from zero
        q = std::min(q, hi);
        report.max_abs_error = std::max(report.max_abs_error, std::abs(scaled - static_cast<double>(q)) / half_range);
        report.quantized.add_term(vars, q);
    }
    return report;
}

}  // namespace qdgas
