#include "commands.hpp"

#include <cmath>
#include <sstream>

#include "json_io.hpp"
#include "qsample/adversary.hpp"
#include "qsample/bounds.hpp"
#include "qsample/qkd.hpp"
#include "qsample/qot.hpp"

namespace qsample::cli {

namespace {

using io::to_json;

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw PreconditionError("'" + item + "' is not an integer");
        }
    }
    return out;
}

std::uint64_t seed_of(const json& c) { return c.at("seed").get<std::uint64_t>(); }

Dims qubit_dims(int n, int env) {
    Dims dims(static_cast<std::size_t>(n), 2);
    dims.push_back(env);
    return dims;
}

PermutationGroup group_named(const std::string& name, int n) {
    if (name == "symmetric") return PermutationGroup::symmetric(n);
    if (name == "trivial") return PermutationGroup::trivial(n);
    if (name == "pairwise") {
        require(n % 2 == 0, "the pairwise group needs an even universe");
        return PermutationGroup::pairwise(n / 2);
    }
    throw PreconditionError("unknown group '" + name + "' (symmetric, pairwise, trivial)");
}

CommandResult eps_class(const json& c) {
    const auto strategy = io::strategy_from_json(c);
    const double delta = c.at("delta").get<double>();
    CommandResult out;
    out.result["strategy"] = io::strategy_to_json(c);
    out.result["delta"] = delta;
    if (c.at("mc").get<bool>()) {
        const auto text = c.at("string").get<std::string>();
        require(!text.empty(), "Monte Carlo mode needs --string");
        out.result["estimate"] = to_json(eps_class_mc(strategy, SymbolString::parse(text, strategy.alphabet()), delta,
                                                      c.at("trials").get<std::uint64_t>(), seed_of(c)));
    } else {
        out.result["estimate"] = to_json(eps_class_exact(strategy, delta));
    }
    out.result["value"] = out.result["estimate"]["value"];
    return out;
}

CommandResult eps_quant(const json& c) {
    const auto strategy = io::strategy_from_json(c);
    const double delta = c.at("delta").get<double>();
    Rng rng(seed_of(c));
    const PureState state = c.at("state").is_null() ? random_pure_state(qubit_dims(strategy.universe(), c.at("env").get<int>()), rng)
                                                    : io::state_from_json(c.at("state"));
    const auto report = check_sqrt_bound(state, strategy, delta);
    CommandResult out;
    out.result = to_json(report);
    out.result["strategy"] = io::strategy_to_json(c);
    out.result["delta"] = delta;
    out.property_holds = report.holds;
    return out;
}

CommandResult bounds(const json& c) {
    const double delta = c.at("delta").get<double>();
    CommandResult out;
    out.result["delta"] = delta;
    const auto name = c.at("bound").get<std::string>();
    if (!name.empty()) {
        BoundParams params{c.at("n").get<int>(), c.at("k").get<int>(), c.at("p").get<double>(), std::nullopt, std::nullopt};
        if (c.at("eps").get<double>() >= 0) params.eps = c.at("eps").get<double>();
        if (c.at("beta").get<double>() >= 0) params.beta = c.at("beta").get<double>();
        out.result["bound"] = name;
        out.result["value"] = analytic_bound(parse_bound_kind(name), params, delta);
        return out;
    }
    const auto strategy = io::strategy_from_json(c);
    out.result["strategy"] = io::strategy_to_json(c);
    json list = json::array();
    for (const auto& b : applicable_bounds(strategy, delta)) list.push_back({{"bound", to_string(b.kind)}, {"value", b.value}});
    out.result["bounds"] = list;
    if (c.at("with_exact").get<bool>()) {
        const double exact = eps_class_exact(strategy, delta).value;
        out.result["exact"] = exact;
        for (const auto& b : list) out.property_holds = out.property_holds && exact <= b["value"].get<double>() + 1e-12;
    }
    return out;
}

CommandResult tightness(const json& c) {
    const auto strategy = io::strategy_from_json(c);
    const double delta = c.at("delta").get<double>();
    const auto group = group_named(c.at("group").get<std::string>(), strategy.universe());
    const auto state = symmetric_worst_state(strategy, group, delta);
    const double distance = ideal_distance(state, strategy, delta);
    const double root = std::sqrt(eps_class_exact(strategy, delta).value);
    CommandResult out;
    out.result = {{"strategy", io::strategy_to_json(c)}, {"delta", delta}, {"ideal_distance", distance},
                  {"sqrt_eps_class", root}, {"gap", root - distance}};
    out.property_holds = std::abs(root - distance) <= 1e-9;
    return out;
}

CommandResult lemma2(const json& c) {
    Rng rng(seed_of(c));
    const int n = c.at("n").get<int>();
    const int env = c.at("env").get<int>();
    require(n >= 1 && n <= 10, "lemma2 needs 1 <= n <= 10");
    require(env >= 1, "environment dimension must be positive");
    std::vector<std::uint64_t> support;
    for (int i : parse_int_list(c.at("support").get<std::string>())) {
        require(i >= 0, "support indices must be non-negative");
        support.push_back(static_cast<std::uint64_t>(i));
    }
    if (support.empty())
        for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i)
            if (rng.coin()) support.push_back(i);
    if (support.empty()) support.push_back(0);
    const auto basis_text = c.at("basis").get<std::string>();
    const BasisSpec basis = basis_text.empty() ? BasisSpec(rng.random_bits(n)) : BasisSpec::parse(basis_text);
    PureState phi = PureState::basis(qubit_dims(n, env), 0);
    if (!c.at("state").is_null()) {
        phi = io::state_from_json(c.at("state"));
    } else {
        Vector v = Vector::Zero(static_cast<Eigen::Index>(phi.dimension()));
        for (auto i : support) {
            require(i < (std::uint64_t{1} << n), "support index out of range");
            for (int e = 0; e < env; ++e) v[static_cast<Eigen::Index>(i) * env + e] = Complex(rng.normal(), rng.normal());
        }
        phi = PureState(v / v.norm(), phi.dims());
    }
    const auto report = lemma2_operator_check(phi, support, basis);
    CommandResult out;
    out.result = {{"support_size", support.size()}, {"basis", bits_to_string(basis.theta())}, {"min_eig", report.min_eig},
                  {"holds", report.holds}};
    out.property_holds = report.holds;
    return out;
}

CommandResult pa_check(const json& c) {
    const int n = c.at("n").get<int>();
    const int l = c.at("l").get<int>();
    const int env = c.at("env").get<int>();
    require(n >= 1 && n <= 16, "pa-check needs 1 <= n <= 16");
    require(env >= 1, "environment dimension must be positive");
    const auto input = c.at("input").get<std::string>();
    const auto variant_name = c.at("variant").get<std::string>();
    require(variant_name == "extended" || variant_name == "plain", "variant must be 'extended' or 'plain'");
    const auto variant = variant_name == "plain" ? ToeplitzVariant::Plain : ToeplitzVariant::IdentityExtended;
    Rng rng(seed_of(c));
    std::vector<CqEntry> entries;
    const std::uint64_t values = std::uint64_t{1} << n;
    if (input == "uniform") {
        for (std::uint64_t x = 0; x < values; ++x)
            entries.push_back({x, 1.0 / static_cast<double>(values), DensityMatrix::maximally_mixed({env})});
    } else {
        require(input == "random", "input must be 'random' or 'uniform'");
        std::vector<double> joint(values * static_cast<std::size_t>(env));
        double total = 0.0;
        for (auto& p : joint) total += (p = std::pow(rng.uniform(), 3.0));
        for (std::uint64_t x = 0; x < values; ++x) {
            double px = 0.0;
            Matrix d = Matrix::Zero(env, env);
            for (int e = 0; e < env; ++e) px += joint[x * static_cast<std::size_t>(env) + static_cast<std::size_t>(e)] / total;
            for (int e = 0; e < env; ++e) d(e, e) = joint[x * static_cast<std::size_t>(env) + static_cast<std::size_t>(e)] / total / px;
            entries.push_back({x, px, DensityMatrix(d, {env})});
        }
    }
    double sum = 0.0;
    for (const auto& e : entries) sum += e.probability;
    entries.back().probability += 1.0 - sum;
    const auto report = pa_exact_check(CqState(std::move(entries), env), HashFamily(n, l, variant));
    CommandResult out;
    out.result = to_json(report);
    out.property_holds = report.holds;
    return out;
}

CommandResult qkd_plan(const json& c) {
    const int n = c.at("n").get<int>();
    const int k = c.at("k").get<int>();
    const int m = c.at("m").get<int>();
    const double beta = c.at("beta").get<double>();
    const double eps = c.at("eps").get<double>();
    require(n >= 1 && k >= 0 && 2 * k <= n, "need 0 <= k <= n/2");
    require(m >= 0, "m must be non-negative");
    CommandResult out;
    if (c.at("csv").get<bool>()) {
        std::ostringstream csv;
        csv.precision(17);
        csv << "beta,asymptotic_rate,key_length,delta\n";
        for (int i = 0; i < 50; ++i) {
            const double b = 0.01 * i;
            const auto plan = qkd_max_len(n, k, m, b, eps);
            csv << b << ',' << asymptotic_qkd_rate(b) << ',' << plan.length << ',';
            if (plan.delta) csv << *plan.delta;
            csv << '\n';
        }
        out.csv = csv.str();
        return out;
    }
    const auto plan = qkd_max_len(n, k, m, beta, eps);
    out.result["key_length"] = plan.length;
    out.result["delta"] = plan.delta ? json(*plan.delta) : json(nullptr);
    out.result["protocol_cap"] = qkd_protocol_cap(n, k, m, beta);
    if (plan.delta) out.result["report"] = to_json(qkd_bound(n, k, m, plan.length, beta, *plan.delta));
    out.result["asymptotic_rate"] = asymptotic_qkd_rate(beta);
    return out;
}

AdversaryModel adversary_from(const json& c) {
    AdversaryModel a;
    a.kind = parse_adversary_kind(c.at("adversary").get<std::string>());
    a.basis_policy = parse_basis_policy(c.at("basis_policy").get<std::string>());
    a.probe_qubits = c.at("probe_qubits").get<int>();
    a.probe_angle = c.at("probe_angle").get<double>();
    if (a.kind == AdversaryKind::CustomUnitary) {
        require(!c.at("unitary").is_null(), "custom-unitary needs --unitary FILE");
        a.unitary = io::matrix_from_json(c.at("unitary"));
    }
    return a;
}

CommandResult qkd_sim(const json& c) {
    QkdParams p;
    p.n = c.at("n").get<int>();
    p.k = c.at("k").get<int>();
    p.syndrome_bits = c.at("m").get<int>();
    p.correction_radius = c.at("radius").get<double>();
    p.noise_flip = c.at("noise").get<double>();
    p.exact = c.at("exact").get<bool>();
    if (c.at("key_length").get<int>() >= 0) p.key_length = c.at("key_length").get<int>();
    const auto r = simulate_qkd(p, adversary_from(c), seed_of(c));
    CommandResult out;
    out.result = {{"transcript", to_json(r.transcript)},
                  {"theta", io::bits_json(r.theta)},
                  {"test_subset", r.test_subset.to_string()},
                  {"beta", r.beta},
                  {"key_length", r.key_length},
                  {"decoding_model", r.decoding_model},
                  {"decoding_succeeded", r.decoding_succeeded},
                  {"alice_key", io::bits_json(r.alice_key)},
                  {"bob_key", io::bits_json(r.bob_key)},
                  {"keys_equal", r.alice_key == r.bob_key},
                  {"report", to_json(r.report)}};
    return out;
}

CommandResult qot_sim(const json& c) {
    QotParams p;
    p.n = c.at("n").get<int>();
    p.k = c.at("k").get<int>();
    p.l = c.at("l").get<int>();
    p.choice = c.at("choice").get<int>();
    AdversaryModel bob;
    bob.basis_policy = parse_basis_policy(c.at("basis_policy").get<std::string>());
    bob.commit_guesses = c.at("commit_guesses").get<bool>();
    bob.lie_positions = parse_int_list(c.at("lie").get<std::string>());
    const auto r = simulate_qot(p, bob, seed_of(c));
    CommandResult out;
    out.result = {{"transcript", to_json(r.transcript)},
                  {"aborted", r.aborted},
                  {"abort_probability", r.abort_probability},
                  {"test_subset", r.test_subset.to_string()},
                  {"index_sets", {r.index_sets[0].to_string(), r.index_sets[1].to_string()}},
                  {"key0", io::bits_json(r.key0)},
                  {"key1", io::bits_json(r.key1)},
                  {"bob_key", io::bits_json(r.bob_key)},
                  {"bob_key_correct", r.bob_key_correct},
                  {"realized_choice", r.realized_choice},
                  {"report", to_json(r.report)}};
    return out;
}

json strategy_defaults(int n, int k) {
    return {{"kind", "example1"}, {"n", n}, {"k", k}, {"p", 0.5}};
}

json with(json base, const json& extra) {
    base.update(extra);
    return base;
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"eps-class", "eps-quant", "bounds", "tightness", "lemma2",
                                                "pa-check",  "qkd-plan",  "qkd-sim", "qot-sim",  "verify"};
    return names;
}

json default_config(const std::string& command) {
    const std::uint64_t seed = 1;
    if (command == "eps-class")
        return with(strategy_defaults(4, 2), {{"delta", 0.3}, {"mc", false}, {"trials", 100000}, {"string", ""}, {"seed", seed}});
    if (command == "eps-quant") return with(strategy_defaults(3, 1), {{"delta", 0.3}, {"env", 2}, {"seed", seed}, {"state", nullptr}});
    if (command == "bounds")
        return with(strategy_defaults(10, 5), {{"delta", 0.3}, {"bound", ""}, {"eps", -1.0}, {"beta", -1.0}, {"with_exact", false}});
    if (command == "tightness") return with(strategy_defaults(4, 2), {{"delta", 0.3}, {"group", "symmetric"}});
    if (command == "lemma2")
        return {{"n", 3}, {"env", 2}, {"support", ""}, {"basis", ""}, {"seed", seed}, {"state", nullptr}};
    if (command == "pa-check")
        return {{"n", 4}, {"l", 2}, {"env", 4}, {"input", "random"}, {"variant", "extended"}, {"seed", seed}};
    if (command == "qkd-plan") return {{"n", 100000}, {"k", 10000}, {"m", 22500}, {"beta", 0.03}, {"eps", 1e-9}, {"csv", false}};
    if (command == "qkd-sim")
        return {{"n", 8},          {"k", 2},          {"m", 0},
                {"radius", 0.0},   {"noise", 0.0},    {"key_length", -1},
                {"exact", false},  {"adversary", "none"}, {"basis_policy", "random"},
                {"probe_qubits", 0}, {"probe_angle", 0.5}, {"unitary", nullptr},
                {"seed", seed}};
    if (command == "qot-sim")
        return {{"n", 16}, {"k", 4}, {"l", 2}, {"choice", 0}, {"basis_policy", "random"}, {"commit_guesses", false},
                {"lie", ""}, {"seed", seed}};
    if (command == "verify") return {{"quick", false}};
    throw PreconditionError("unknown command '" + command + "'");
}

std::string describe(const std::string& command) {
    if (command == "eps-class") return "Classical error probability of a sampling strategy (exact or Monte Carlo)";
    if (command == "eps-quant") return "Ideal-state distance of a quantum state against sqrt(eps_class)";
    if (command == "bounds") return "Closed-form error bounds, all applicable ones or a named one";
    if (command == "tightness") return "Orbit state of the worst-case string for a symmetric strategy";
    if (command == "lemma2") return "Operator inequality for a measured superposition";
    if (command == "pa-check") return "Exact privacy amplification distance against the bound";
    if (command == "qkd-plan") return "Largest QKD key length for a security target";
    if (command == "qkd-sim") return "Simulate the entanglement-based QKD protocol";
    if (command == "qot-sim") return "Simulate the oblivious transfer protocol";
    if (command == "verify") return "Run the property suite";
    return "";
}

CommandResult run_command(const std::string& command, const json& c) {
    if (command == "eps-class") return eps_class(c);
    if (command == "eps-quant") return eps_quant(c);
    if (command == "bounds") return bounds(c);
    if (command == "tightness") return tightness(c);
    if (command == "lemma2") return lemma2(c);
    if (command == "pa-check") return pa_check(c);
    if (command == "qkd-plan") return qkd_plan(c);
    if (command == "qkd-sim") return qkd_sim(c);
    if (command == "qot-sim") return qot_sim(c);
    if (command == "verify") return run_verify(c.at("quick").get<bool>());
    throw PreconditionError("unknown command '" + command + "'");
}

}  // namespace qsample::cli
