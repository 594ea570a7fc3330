// Python bindings: thin wrappers returning plain dicts and lists.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qsample/bounds.hpp"
#include "qsample/classical_error.hpp"
#include "qsample/entropy.hpp"
#include "qsample/hashing.hpp"
#include "qsample/privacy_amplification.hpp"
#include "qsample/qkd.hpp"
#include "qsample/qot.hpp"
#include "qsample/security_bounds.hpp"

namespace py = pybind11;
using namespace qsample;

namespace {

SamplingStrategy strategy(const std::string& kind, int n, int k, double p) {
    return make_strategy(parse_strategy_kind(kind), {n, k, p});
}

py::dict report_dict(const SecurityReport& r) {
    py::list terms;
    for (const auto& t : r.bound_terms) terms.append(py::make_tuple(t.label, t.value));
    py::dict d;
    d["bound_terms"] = terms;
    d["total_bound"] = r.total_bound;
    d["delta_used"] = r.delta_used;
    d["eps_used"] = r.eps_used ? py::object(py::float_(*r.eps_used)) : py::object(py::none());
    d["exact_distance"] = r.exact_distance ? py::object(py::float_(*r.exact_distance)) : py::object(py::none());
    d["transcript_digest"] = r.transcript_digest;
    return d;
}

AdversaryModel adversary(const std::string& kind, const std::string& basis_policy, int probe_qubits, double probe_angle) {
    AdversaryModel a;
    a.kind = parse_adversary_kind(kind);
    a.basis_policy = parse_basis_policy(basis_policy);
    a.probe_qubits = probe_qubits;
    a.probe_angle = probe_angle;
    return a;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Sampling-based security analysis core";
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<BudgetError>(m, "BudgetError", PyExc_RuntimeError);

    m.def(
        "eps_class_exact",
        [](const std::string& kind, int n, int k, double delta, double p) {
            const auto e = eps_class_exact(strategy(kind, n, k, p), delta);
            return py::make_tuple(e.value, e.worst_case_string ? e.worst_case_string->to_string() : std::string());
        },
        py::arg("kind"), py::arg("n"), py::arg("k") = 0, py::arg("delta") = 0.3, py::arg("p") = 0.5,
        "Worst-case failure probability and a maximizing string.");
    m.def(
        "applicable_bounds",
        [](const std::string& kind, int n, int k, double delta, double p) {
            std::vector<std::pair<std::string, double>> out;
            for (const auto& b : applicable_bounds(strategy(kind, n, k, p), delta)) out.emplace_back(to_string(b.kind), b.value);
            return out;
        },
        py::arg("kind"), py::arg("n"), py::arg("k") = 0, py::arg("delta") = 0.3, py::arg("p") = 0.5);

    m.def("binary_entropy", &binary_entropy, py::arg("p"));
    m.def("hamming_ball_log_count", &hamming_ball_log_count, py::arg("beta"), py::arg("delta"), py::arg("n"));
    m.def("hamming_ball_log_bound", &hamming_ball_log_bound, py::arg("beta"), py::arg("delta"), py::arg("n"));
    m.def("privacy_amplification_bound", &privacy_amplification_bound, py::arg("hmin"), py::arg("l"));
    m.def(
        "hash_eval",
        [](int input_bits, int output_bits, const Bits& seed, const Bits& x) { return HashFamily(input_bits, output_bits).eval(seed, x); },
        py::arg("input_bits"), py::arg("output_bits"), py::arg("seed"), py::arg("x"));

    m.def("qkd_bound", [](int n, int k, int mm, int l, double beta, double delta) { return report_dict(qkd_bound(n, k, mm, l, beta, delta)); },
          py::arg("n"), py::arg("k"), py::arg("m"), py::arg("l"), py::arg("beta"), py::arg("delta"));
    m.def("qot_bound", [](int n, int k, int l, double eps, double delta) { return report_dict(qot_bound(n, k, l, eps, delta)); },
          py::arg("n"), py::arg("k"), py::arg("l"), py::arg("eps"), py::arg("delta"));
    m.def(
        "qkd_max_len",
        [](int n, int k, int mm, double beta, double eps) {
            const auto plan = qkd_max_len(n, k, mm, beta, eps);
            return py::make_tuple(plan.length, plan.delta ? py::object(py::float_(*plan.delta)) : py::object(py::none()));
        },
        py::arg("n"), py::arg("k"), py::arg("m"), py::arg("beta"), py::arg("eps"));
    m.def("qkd_protocol_cap", &qkd_protocol_cap, py::arg("n"), py::arg("k"), py::arg("m"), py::arg("beta"));
    m.def("asymptotic_qkd_rate", &asymptotic_qkd_rate, py::arg("phi"));
    m.def("qkd_rate_threshold", &qkd_rate_threshold);

    m.def(
        "simulate_qkd",
        [](int n, int k, int seed, const std::string& kind, double noise, bool exact, int probe_qubits, double probe_angle,
           const std::string& basis_policy) {
            QkdParams p;
            p.n = n;
            p.k = k;
            p.noise_flip = noise;
            p.exact = exact;
            const auto r = simulate_qkd(p, adversary(kind, basis_policy, probe_qubits, probe_angle), static_cast<std::uint64_t>(seed));
            py::dict d;
            d["beta"] = r.beta;
            d["key_length"] = r.key_length;
            d["alice_key"] = bits_to_string(r.alice_key);
            d["bob_key"] = bits_to_string(r.bob_key);
            d["report"] = report_dict(r.report);
            return d;
        },
        py::arg("n"), py::arg("k"), py::arg("seed") = 1, py::arg("adversary") = "none", py::arg("noise") = 0.0,
        py::arg("exact") = false, py::arg("probe_qubits") = 0, py::arg("probe_angle") = 0.5, py::arg("basis_policy") = "random");
    m.def(
        "simulate_qot",
        [](int n, int k, int l, int choice, int seed, std::vector<int> lie_positions, bool commit_guesses) {
            QotParams p{n, k, l, choice};
            AdversaryModel bob;
            bob.lie_positions = std::move(lie_positions);
            bob.commit_guesses = commit_guesses;
            const auto r = simulate_qot(p, bob, static_cast<std::uint64_t>(seed));
            py::dict d;
            d["aborted"] = r.aborted;
            d["abort_probability"] = r.abort_probability;
            d["key0"] = bits_to_string(r.key0);
            d["key1"] = bits_to_string(r.key1);
            d["bob_key"] = bits_to_string(r.bob_key);
            d["bob_key_correct"] = r.bob_key_correct;
            d["report"] = report_dict(r.report);
            return d;
        },
        py::arg("n"), py::arg("k"), py::arg("l"), py::arg("choice") = 0, py::arg("seed") = 1,
        py::arg("lie_positions") = std::vector<int>{}, py::arg("commit_guesses") = false);
}
