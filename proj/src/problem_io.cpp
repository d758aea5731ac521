#include "qdgas/problem_io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include "qdgas/oracle.hpp"

namespace qdgas {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& message) {
    throw ParseError(field + ": " + message);
}

const json& require(const json& obj, const char* key, const std::string& path) {
    if (!obj.is_object()) fail(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(path + "." + key, "missing required field");
    return *it;
}

double number_at(const json& v, const std::string& field) {
    if (!v.is_number()) fail(field, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(field, "expected a finite number");
    return d;
}

class VariableIndex {
public:
    explicit VariableIndex(const std::vector<std::string>& names) {
        for (std::size_t i = 0; i < names.size(); ++i) index_[names[i]] = static_cast<int>(i);
    }

    Monomial monomial(const json& vars, const std::string& field) const {
        if (!vars.is_array()) fail(field, "expected an array of variable names");
        Monomial out;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            const std::string f = field + "[" + std::to_string(i) + "]";
            if (!vars[i].is_string()) fail(f, "expected a variable name");
            auto it = index_.find(vars[i].get<std::string>());
            if (it == index_.end()) fail(f, "unknown variable '" + vars[i].get<std::string>() + "'");
            out.push_back(it->second);
        }
        return out;
    }

private:
    std::map<std::string, int> index_;
};

struct RealTerm {
    Monomial vars;
    double coeff;
};

std::vector<RealTerm> parse_terms(const json& terms, const VariableIndex& index, const std::string& field) {
    if (!terms.is_array()) fail(field, "expected an array of terms");
    std::vector<RealTerm> out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string f = field + "[" + std::to_string(i) + "]";
        out.push_back({index.monomial(require(terms[i], "vars", f), f + ".vars"),
                       number_at(require(terms[i], "coeff", f), f + ".coeff")});
    }
    return out;
}

bool is_integral(double v) { return std::nearbyint(v) == v && std::abs(v) < 9.0e15; }

std::vector<std::vector<double>> parse_matrix(const json& q, std::size_t n, const std::string& field) {
    if (!q.is_array() || q.size() != n) fail(field, "expected " + std::to_string(n) + " rows");
    std::vector<std::vector<double>> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::string row = field + "[" + std::to_string(i) + "]";
        if (!q[i].is_array() || q[i].size() != n) fail(row, "expected " + std::to_string(n) + " entries");
        for (std::size_t j = 0; j < n; ++j) out[i].push_back(number_at(q[i][j], row + "[" + std::to_string(j) + "]"));
    }
    return out;
}

}  // namespace

ProblemFile parse_problem(const json& doc) {
    if (!doc.is_object()) fail("<root>", "expected a JSON object");
    ProblemFile file;

    const json& vars = require(doc, "variables", "<root>");
    if (!vars.is_array() || vars.empty()) fail("variables", "expected a non-empty array of names");
    std::set<std::string> seen;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        const std::string f = "variables[" + std::to_string(i) + "]";
        if (!vars[i].is_string()) fail(f, "expected a string");
        const auto name = vars[i].get<std::string>();
        if (!seen.insert(name).second) fail(f, "duplicate variable name '" + name + "'");
        file.variables.push_back(name);
    }
    if (file.variables.size() > 24) fail("variables", "at most 24 variables are supported");
    const int n = static_cast<int>(file.variables.size());
    const VariableIndex index(file.variables);

    const bool has_objective = doc.contains("objective");
    const bool has_qubo = doc.contains("qubo");
    if (has_objective == has_qubo) fail("objective", "exactly one of 'objective' or 'qubo' is required");

    std::optional<int> quant_m;
    if (doc.contains("quantization")) {
        const json& m = require(doc["quantization"], "m", "quantization");
        if (!m.is_number_integer() || m.get<int>() < 2 || m.get<int>() > 30) {
            fail("quantization.m", "expected an integer in [2, 30]");
        }
        quant_m = m.get<int>();
    }

    RealPolynomial real{n, {}};
    if (has_objective) {
        for (const auto& t : parse_terms(doc["objective"], index, "objective")) real.add_term(t.vars, t.coeff);
    } else {
        const json& q = doc["qubo"];
        QuboProblem qubo;
        const json& b = require(q, "b", "qubo");
        if (!b.is_array() || b.size() != static_cast<std::size_t>(n)) {
            fail("qubo.b", "expected " + std::to_string(n) + " entries");
        }
        for (std::size_t i = 0; i < b.size(); ++i) qubo.b.push_back(number_at(b[i], "qubo.b[" + std::to_string(i) + "]"));
        qubo.Q = parse_matrix(require(q, "Q", "qubo"), static_cast<std::size_t>(n), "qubo.Q");
        qubo.c = q.contains("c") ? number_at(q["c"], "qubo.c") : 0.0;
        real = qubo_to_real_polynomial(qubo);
    }

    bool integral = true;
    for (const auto& [m, v] : real.terms) integral = integral && is_integral(v);
    if (quant_m) {
        if (real.terms.empty()) fail("objective", "cannot quantize an all-zero objective");
        file.quantization = quantize(real, *quant_m);
        file.problem.objective = file.quantization->quantized;
    } else {
        if (!integral) {
            fail(has_objective ? "objective" : "qubo",
                 "non-integer coefficients require a 'quantization' block with m");
        }
        file.problem.objective = BinaryPolynomial(n);
        for (const auto& [m, v] : real.terms) file.problem.objective.add_term(m, static_cast<std::int64_t>(v));
    }

    if (doc.contains("constraints")) {
        const json& cs = doc["constraints"];
        if (!cs.is_array()) fail("constraints", "expected an array");
        for (std::size_t i = 0; i < cs.size(); ++i) {
            const std::string f = "constraints[" + std::to_string(i) + "]";
            Constraint c{BinaryPolynomial(n), Relation::LessThanZero};
            for (const auto& t : parse_terms(require(cs[i], "terms", f), index, f + ".terms")) {
                if (!is_integral(t.coeff)) fail(f + ".terms", "constraint coefficients must be integers");
                c.polynomial.add_term(t.vars, static_cast<std::int64_t>(t.coeff));
            }
            const json& rel = require(cs[i], "relation", f);
            if (!rel.is_string()) fail(f + ".relation", "expected \"<0\" or \"==0\"");
            const auto r = rel.get<std::string>();
            if (r == "<0") c.relation = Relation::LessThanZero;
            else if (r == "==0") c.relation = Relation::EqualsZero;
            else fail(f + ".relation", "expected \"<0\" or \"==0\", got \"" + r + "\"");
            file.problem.constraints.push_back(std::move(c));
        }
    }
    return file;
}

ProblemFile parse_problem_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("<document>: invalid JSON: ") + e.what());
    }
    return parse_problem(doc);
}

ProblemFile load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_problem_text(buf.str());
}

std::string key_bits(std::uint64_t key, int num_vars) {
    std::string s;
    for (int i = 0; i < num_vars; ++i) s.push_back(((key >> i) & 1U) ? '1' : '0');
    return s;
}

std::string assignment_string(std::uint64_t key, const std::vector<std::string>& variables) {
    std::string s;
    for (std::size_t i = 0; i < variables.size(); ++i) {
        if (i) s += ';';
        s += variables[i] + "=" + (((key >> i) & 1U) ? "1" : "0");
    }
    return s;
}

namespace {

json assignment_json(std::uint64_t key, const std::vector<std::string>& variables) {
    json a = json::object();
    for (std::size_t i = 0; i < variables.size(); ++i) a[variables[i]] = static_cast<int>((key >> i) & 1U);
    return a;
}

std::uint64_t key_from_bits(const std::string& bits) {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') key |= std::uint64_t{1} << i;
        else if (bits[i] != '0') throw ParseError("key_bits: expected only '0' and '1'");
    }
    return key;
}

}  // namespace

json trace_to_json(const GasTrace& trace, const std::vector<std::string>& variables, const GasConfig& config) {
    const int n = trace.num_vars;
    json doc;
    doc["variables"] = variables;
    doc["value_qubits"] = trace.value_qubits;
    doc["config"] = {{"seed", config.seed},
                     {"lambda", config.lambda},
                     {"patience", config.patience},
                     {"max_iterations", config.max_iterations},
                     {"encoder", to_string(config.encoder)}};
    doc["initial"] = {{"key_bits", key_bits(trace.initial_key, n)},
                      {"assignment", assignment_json(trace.initial_key, variables)},
                      {"value", trace.initial_value}};
    json its = json::array();
    for (const auto& it : trace.iterations) {
        its.push_back({{"index", it.index},
                       {"threshold", it.threshold},
                       {"k", it.k},
                       {"rotations", it.rotations},
                       {"key_bits", key_bits(it.key, n)},
                       {"assignment", assignment_json(it.key, variables)},
                       {"raw_value", it.raw_value},
                       {"register_value", it.register_value},
                       {"objective", it.objective},
                       {"feasible", it.feasible},
                       {"accepted", it.accepted}});
    }
    doc["iterations"] = std::move(its);
    doc["best"] = {{"key_bits", key_bits(trace.best_key, n)},
                   {"assignment", assignment_json(trace.best_key, variables)},
                   {"value", trace.best_value}};
    doc["total_grover_applications"] = trace.total_grover_applications;
    return doc;
}

GasTrace trace_from_json(const json& doc) {
    try {
        GasTrace trace;
        trace.num_vars = static_cast<int>(doc.at("variables").size());
        trace.value_qubits = doc.at("value_qubits").get<int>();
        trace.initial_key = key_from_bits(doc.at("initial").at("key_bits").get<std::string>());
        trace.initial_value = doc.at("initial").at("value").get<std::int64_t>();
        for (const auto& j : doc.at("iterations")) {
            GasIteration it;
            it.index = j.at("index").get<int>();
            it.threshold = j.at("threshold").get<std::int64_t>();
            it.k = j.at("k").get<double>();
            it.rotations = j.at("rotations").get<int>();
            it.key = key_from_bits(j.at("key_bits").get<std::string>());
            it.raw_value = j.at("raw_value").get<std::uint64_t>();
            it.register_value = j.at("register_value").get<std::int64_t>();
            it.objective = j.at("objective").get<std::int64_t>();
            it.feasible = j.at("feasible").get<bool>();
            it.accepted = j.at("accepted").get<bool>();
            trace.iterations.push_back(std::move(it));
        }
        trace.best_key = key_from_bits(doc.at("best").at("key_bits").get<std::string>());
        trace.best_value = doc.at("best").at("value").get<std::int64_t>();
        trace.total_grover_applications = doc.at("total_grover_applications").get<long>();
        return trace;
    } catch (const json::exception& e) {
        throw ParseError(std::string("trace: ") + e.what());
    }
}

TraceSummary summarize(const GasTrace& trace) {
    TraceSummary s;
    s.best_key = trace.best_key;
    s.best_value = trace.best_value;
    s.iterations = trace.iterations.size();
    s.total_grover_applications = trace.total_grover_applications;
    for (const auto& it : trace.iterations) {
        if (it.accepted) {
            ++s.accepted;
            s.accepted_thresholds.push_back(it.objective);
        }
    }
    return s;
}

void write_histogram_csv(std::ostream& out, const GasIteration& iteration, int num_vars, int value_qubits,
                         const std::vector<std::string>& variables) {
    out << "basis_state,key_bits,decoded_value,probability,assignment\n";
    const std::uint64_t key_mask = (std::uint64_t{1} << num_vars) - 1;
    out << std::setprecision(17);
    for (std::uint64_t idx = 0; idx < iteration.histogram.size(); ++idx) {
        const std::uint64_t key = idx & key_mask;
        const std::uint64_t raw = idx >> num_vars;
        const std::int64_t decoded = decode_value(raw, value_qubits) + iteration.threshold;
        out << idx << ',' << key_bits(key, num_vars) << ',' << decoded << ',' << iteration.histogram[idx] << ','
            << assignment_string(key, variables) << '\n';
    }
}

void write_fejer_csv(std::ostream& out, const std::vector<double>& probabilities, int m) {
    out << "value,signed_value,probability\n" << std::setprecision(17);
    for (std::uint64_t j = 0; j < probabilities.size(); ++j) {
        out << j << ',' << decode_value(j, m) << ',' << probabilities[j] << '\n';
    }
}

}  // namespace qdgas
