#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "commands.hpp"
#include "qsample/classical_error.hpp"
#include "qsample/entropy.hpp"
#include "qsample/privacy_amplification.hpp"
#include "qsample/qkd.hpp"
#include "qsample/qot.hpp"
#include "qsample/quantum_sampling.hpp"
#include "qsample/security_bounds.hpp"

namespace qsample::cli {

namespace {

struct Check {
    bool pass = true;
    std::string detail;
};

std::string num(double v) {
    std::ostringstream out;
    out << v;
    return out.str();
}

Dims qubit_dims(int n, int env) {
    Dims dims(static_cast<std::size_t>(n), 2);
    dims.push_back(env);
    return dims;
}

Check sqrt_sweep(bool quick) {
    Rng rng(7001);
    Check c;
    int states = 0;
    const int max_n = quick ? 4 : 5;
    const int per = quick ? 4 : 12;
    for (auto kind : {StrategyKind::Example1WithoutReplacement, StrategyKind::Example3UniformSubset, StrategyKind::Example4PartOfSample})
        for (int n = 3; n <= max_n; ++n)
            for (int k = 1; k <= 2; ++k) {
                if (kind == StrategyKind::Example3UniformSubset && k == 2) continue;
                const auto s = make_strategy(kind, {n, kind == StrategyKind::Example3UniformSubset ? 0 : k});
                for (double delta : {0.2, 0.3, 0.4}) {
                    const AcceptTable table(s, delta);
                    const double eps = eps_class_exact(s, delta).value;
                    for (int i = 0; i < per; ++i) {
                        const auto psi = random_pure_state(qubit_dims(n, 1 + static_cast<int>(rng.below(4))), rng);
                        c.pass = c.pass && check_sqrt_bound(psi, table, eps).holds;
                        ++states;
                    }
                }
            }
    c.detail = std::to_string(states) + " random states";
    return c;
}

Check tightness_sweep(bool quick) {
    Check c;
    double worst = 0.0;
    for (int n = 3; n <= (quick ? 4 : 6); ++n)
        for (int k = 1; k <= 3 && k < n; ++k)
            for (double delta : {0.2, 0.3, 0.4}) {
                const auto s = make_strategy(StrategyKind::Example1WithoutReplacement, {n, k});
                const auto psi = symmetric_worst_state(s, PermutationGroup::symmetric(n), delta);
                worst = std::max(worst, std::abs(ideal_distance(psi, s, delta) - std::sqrt(eps_class_exact(s, delta).value)));
            }
    c.pass = worst <= 1e-9;
    c.detail = "max gap " + num(worst);
    return c;
}

Check lemma2_batch(bool quick) {
    Rng rng(7002);
    Check c;
    double lowest = 1.0;
    const int count = quick ? 50 : 200;
    for (int trial = 0; trial < count; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(4));
        const int env = 1 + static_cast<int>(rng.below(4));
        std::vector<std::uint64_t> support;
        for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i)
            if (rng.coin()) support.push_back(i);
        if (support.empty()) support.push_back(0);
        Vector v = Vector::Zero(static_cast<Eigen::Index>((std::size_t{1} << n) * static_cast<std::size_t>(env)));
        for (auto i : support)
            for (int e = 0; e < env; ++e) v[static_cast<Eigen::Index>(i) * env + e] = Complex(rng.normal(), rng.normal());
        const auto report = lemma2_operator_check(PureState(v / v.norm(), qubit_dims(n, env)), support, BasisSpec(rng.random_bits(n)));
        lowest = std::min(lowest, report.min_eig);
        c.pass = c.pass && report.holds;
    }
    c.detail = std::to_string(count) + " instances, min eigenvalue " + num(lowest);
    return c;
}

Check pa_batch(bool quick) {
    Rng rng(7003);
    Check c;
    const int count = quick ? 20 : 100;
    for (int trial = 0; trial < count; ++trial) {
        std::vector<CqEntry> entries;
        std::vector<double> weights(64);
        double total = 0.0;
        for (auto& w : weights) total += (w = std::pow(rng.uniform(), 3.0));
        for (std::uint64_t x = 0; x < 16; ++x) {
            Matrix d = Matrix::Zero(4, 4);
            double px = 0.0;
            for (int e = 0; e < 4; ++e) px += weights[x * 4 + static_cast<std::size_t>(e)] / total;
            for (int e = 0; e < 4; ++e) d(e, e) = weights[x * 4 + static_cast<std::size_t>(e)] / total / px;
            entries.push_back({x, px, DensityMatrix(d, {4})});
        }
        double sum = 0.0;
        for (const auto& e : entries) sum += e.probability;
        entries.back().probability += 1.0 - sum;
        c.pass = c.pass && pa_exact_check(CqState(std::move(entries), 4), HashFamily(4, 1 + trial % 2)).holds;
    }
    std::vector<CqEntry> uniform;
    for (std::uint64_t x = 0; x < 16; ++x) uniform.push_back({x, 1.0 / 16, DensityMatrix::maximally_mixed({2})});
    c.pass = c.pass && pa_exact_check(CqState(std::move(uniform), 2), HashFamily(4, 2)).distance == 0.0;
    c.detail = std::to_string(count) + " instances plus a uniform input";
    return c;
}

Check protocol_completeness(bool quick) {
    Check c;
    const int seeds = quick ? 20 : 100;
    for (int seed = 0; seed < seeds; ++seed) {
        QkdParams p;
        p.n = 40;
        p.k = 10;
        const auto r = simulate_qkd(p, AdversaryModel{}, static_cast<std::uint64_t>(seed));
        c.pass = c.pass && r.beta == 0.0 && r.alice_key == r.bob_key;
        QotParams q;
        q.choice = seed % 2;
        const auto o = simulate_qot(q, AdversaryModel{}, static_cast<std::uint64_t>(seed));
        c.pass = c.pass && !o.aborted && o.bob_key_correct;
    }
    AdversaryModel probe;
    probe.kind = AdversaryKind::EntanglingProbe;
    probe.probe_angle = 0.7;
    for (int n = 1; n <= (quick ? 2 : 3); ++n) c.pass = c.pass && qkd_sampling_view(attacked_epr_state(n, probe, {})).equivalent;
    QkdParams exact;
    exact.n = quick ? 3 : 5;
    exact.k = quick ? 1 : 2;
    exact.exact = true;
    c.pass = c.pass && std::abs(*simulate_qkd(exact, AdversaryModel{}, 1).report.exact_distance) <= 1e-9;
    c.detail = std::to_string(seeds) + " honest QKD and QOT runs, experiment equivalence, exact honest distance";
    return c;
}

Check anchors(bool) {
    Check c;
    const double root = qkd_rate_threshold();
    c.pass = std::abs(root - 0.110) <= 0.001;
    for (int n = 1; n <= 20; ++n)
        for (int i = 0; i <= 50; ++i)
            c.pass = c.pass && hamming_ball_log_count(0.01 * i, 0.0, n) <= hamming_ball_log_bound(0.01 * i, 0.0, n) + 1e-12;
    c.detail = "rate threshold " + num(root) + ", Hamming-ball counts";
    return c;
}

}  // namespace

CommandResult run_verify(bool quick) {
    const std::vector<std::pair<std::string, std::function<Check(bool)>>> checks{
        {"sqrt-bound", sqrt_sweep},         {"tightness", tightness_sweep}, {"lemma2", lemma2_batch},
        {"privacy-amplification", pa_batch}, {"protocols", protocol_completeness}, {"anchors", anchors},
    };
    CommandResult out;
    json list = json::array();
    for (const auto& [name, check] : checks) {
        Check c;
        try {
            c = check(quick);
        } catch (const std::exception& e) {
            c = {false, std::string("exception: ") + e.what()};
        }
        out.property_holds = out.property_holds && c.pass;
        list.push_back({{"name", name}, {"pass", c.pass}, {"detail", c.detail}});
    }
    out.result = {{"checks", list}, {"pass", out.property_holds}};
    return out;
}

}  // namespace qsample::cli
