#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qdgas/fejer.hpp"
#include "qdgas/oracle.hpp"
#include "qdgas/problem_io.hpp"
#include "qdgas/search.hpp"
#include "qdgas/verify.hpp"

namespace py = pybind11;
using namespace qdgas;

namespace {

using TermList = std::vector<std::pair<Monomial, std::int64_t>>;

BinaryPolynomial make_polynomial(int num_vars, const TermList& terms) {
    BinaryPolynomial p(num_vars);
    for (const auto& [vars, coeff] : terms) p.add_term(vars, coeff);
    return p;
}

Relation parse_relation(const std::string& r) {
    if (r == "<0") return Relation::LessThanZero;
    if (r == "==0") return Relation::EqualsZero;
    throw py::value_error("relation must be \"<0\" or \"==0\"");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Grover adaptive search over quantum-dictionary oracles, simulated exactly";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<InfeasibleError>(m, "InfeasibleError", PyExc_RuntimeError);
    py::register_exception<OverflowError>(m, "OverflowError", PyExc_OverflowError);

    py::class_<BinaryPolynomial>(m, "Polynomial")
        .def(py::init(&make_polynomial), py::arg("num_vars"), py::arg("terms") = TermList{})
        .def_property_readonly("num_vars", &BinaryPolynomial::num_vars)
        .def_property_readonly("terms", &BinaryPolynomial::terms)
        .def("coefficient", &BinaryPolynomial::coefficient, py::arg("vars"))
        .def("evaluate_index", &BinaryPolynomial::evaluate_index, py::arg("key"))
        .def("evaluate",
             [](const BinaryPolynomial& p, const Assignment& x) { return p.evaluate(x); }, py::arg("x"))
        .def("__str__", &BinaryPolynomial::to_string);

    py::class_<CpboProblem>(m, "Problem")
        .def(py::init([](const BinaryPolynomial& objective,
                         const std::vector<std::pair<BinaryPolynomial, std::string>>& constraints) {
                 CpboProblem p{objective, {}};
                 for (const auto& [poly, rel] : constraints) p.constraints.push_back({poly, parse_relation(rel)});
                 p.validate();
                 return p;
             }),
             py::arg("objective"), py::arg("constraints") = std::vector<std::pair<BinaryPolynomial, std::string>>{})
        .def_readonly("objective", &CpboProblem::objective)
        .def_property_readonly("num_vars", &CpboProblem::num_vars)
        .def("is_feasible", [](const CpboProblem& p, std::uint64_t key) { return is_feasible_index(p, key); });

    m.def(
        "load_problem",
        [](const std::string& path) {
            ProblemFile f = load_problem(path);
            return py::make_tuple(f.variables, f.problem);
        },
        py::arg("path"), "Returns (variable names, Problem).");

    m.def(
        "brute_force_min",
        [](const CpboProblem& p) {
            const auto r = brute_force_min(p);
            return py::make_tuple(r.value, r.argmins);
        },
        py::arg("problem"), "Returns (minimum, sorted list of minimizing keys).");

    py::class_<GasConfig>(m, "GasConfig")
        .def(py::init<>())
        .def_readwrite("lam", &GasConfig::lambda)
        .def_readwrite("patience", &GasConfig::patience)
        .def_readwrite("max_iterations", &GasConfig::max_iterations)
        .def_readwrite("seed", &GasConfig::seed)
        .def_readwrite("value_qubits", &GasConfig::value_qubits)
        .def_property(
            "encoder", [](const GasConfig& c) { return to_string(c.encoder); },
            [](GasConfig& c, const std::string& e) {
                if (e == "phase") c.encoder = Encoder::Phase;
                else if (e == "ry") c.encoder = Encoder::Ry;
                else throw py::value_error("encoder must be 'phase' or 'ry'");
            });

    py::class_<GasIteration>(m, "GasIteration")
        .def_readonly("index", &GasIteration::index)
        .def_readonly("threshold", &GasIteration::threshold)
        .def_readonly("k", &GasIteration::k)
        .def_readonly("rotations", &GasIteration::rotations)
        .def_readonly("key", &GasIteration::key)
        .def_readonly("objective", &GasIteration::objective)
        .def_readonly("feasible", &GasIteration::feasible)
        .def_readonly("accepted", &GasIteration::accepted);

    py::class_<GasTrace>(m, "GasTrace")
        .def_readonly("value_qubits", &GasTrace::value_qubits)
        .def_readonly("initial_key", &GasTrace::initial_key)
        .def_readonly("initial_value", &GasTrace::initial_value)
        .def_readonly("iterations", &GasTrace::iterations)
        .def_readonly("best_key", &GasTrace::best_key)
        .def_readonly("best_value", &GasTrace::best_value)
        .def_readonly("total_grover_applications", &GasTrace::total_grover_applications);

    m.def("run_gas", &run_gas, py::arg("problem"), py::arg("config") = GasConfig{},
          py::call_guard<py::gil_scoped_release>());

    m.def("default_value_qubits", &default_value_qubits, py::arg("objective"));

    m.def(
        "quantize",
        [](int num_vars, const std::vector<std::pair<Monomial, double>>& terms, int bits) {
            RealPolynomial p{num_vars, {}};
            for (const auto& [vars, coeff] : terms) p.add_term(vars, coeff);
            return quantize(p, bits).quantized;
        },
        py::arg("num_vars"), py::arg("terms"), py::arg("m"));

    m.def(
        "fejer_distribution", [](double a, int bits) { return fejer_distribution(a, bits).probabilities; },
        py::arg("a"), py::arg("m"));
}
