#pragma once

// JSON problem files, JSON traces and CSV histograms.
//
// Problem file:
//   {
//     "variables":   ["x1", "x2", "x3"],
//     "objective":   [{"vars": ["x1", "x3"], "coeff": -2}, {"vars": [], "coeff": 4}],
//     "qubo":        {"Q": [[...]], "b": [...], "c": 0},          // instead of "objective"
//     "constraints": [{"terms": [{"vars": ["x1"], "coeff": 1}], "relation": "<0"}],
//     "quantization": {"m": 5}
//   }

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "qdgas/polynomial.hpp"
#include "qdgas/search.hpp"

namespace qdgas {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ProblemFile {
    std::vector<std::string> variables;
    CpboProblem problem;
    std::optional<QuantizationReport> quantization;
};

ProblemFile parse_problem(const nlohmann::json& doc);
ProblemFile parse_problem_text(const std::string& text);
ProblemFile load_problem(const std::string& path);

/// Key as a bit string with variable 0 leftmost.
std::string key_bits(std::uint64_t key, int num_vars);
/// "x1=1;x2=0;x3=1".
std::string assignment_string(std::uint64_t key, const std::vector<std::string>& variables);

nlohmann::json trace_to_json(const GasTrace& trace, const std::vector<std::string>& variables,
                             const GasConfig& config);
GasTrace trace_from_json(const nlohmann::json& doc);

struct TraceSummary {
    std::uint64_t best_key = 0;
    std::int64_t best_value = 0;
    std::size_t iterations = 0;
    std::size_t accepted = 0;
    long total_grover_applications = 0;
    std::vector<std::int64_t> accepted_thresholds;

    friend bool operator==(const TraceSummary&, const TraceSummary&) = default;
};

TraceSummary summarize(const GasTrace& trace);

/// Rows basis_state,key_bits,decoded_value,probability,assignment for one
/// iteration's key/value distribution. decoded_value is the objective value
/// the register encodes: two's-complement decode plus the threshold.
void write_histogram_csv(std::ostream& out, const GasIteration& iteration, int num_vars, int value_qubits,
                         const std::vector<std::string>& variables);

void write_fejer_csv(std::ostream& out, const std::vector<double>& probabilities, int m);

}  // namespace qdgas
