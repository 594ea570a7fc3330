// One line per acceptance criterion; exits non-zero if any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "qsample/bounds.hpp"
#include "qsample/classical_error.hpp"
#include "qsample/entropy.hpp"
#include "qsample/privacy_amplification.hpp"
#include "qsample/qkd.hpp"
#include "qsample/qot.hpp"
#include "qsample/quantum_sampling.hpp"
#include "qsample/security_bounds.hpp"

using namespace qsample;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    void expect(bool ok, const std::string& what) {
        if (!ok && pass) detail << "first failure: " << what << "; ";
        pass = pass && ok;
    }
};

Dims qubit_dims(int n, int env) {
    Dims dims(static_cast<std::size_t>(n), 2);
    dims.push_back(env);
    return dims;
}

SamplingStrategy strategy(StrategyKind kind, int n, int k) {
    return make_strategy(kind, {n, kind == StrategyKind::Example3UniformSubset ? 0 : k});
}

double choose(int n, int k) {
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

void sqrt_bound(Outcome& out) {
    Rng rng(1001);
    int states = 0;
    double worst_gap = 1.0;
    const StrategyKind kinds[] = {StrategyKind::Example1WithoutReplacement, StrategyKind::Example3UniformSubset,
                                  StrategyKind::Example4PartOfSample};
    for (auto kind : kinds)
        for (int n = 3; n <= 5; ++n)
            for (int k = 1; k <= 2; ++k) {
                if (kind == StrategyKind::Example3UniformSubset && k == 2) continue;
                const auto s = strategy(kind, n, k);
                for (double delta : {0.2, 0.3, 0.4}) {
                    const AcceptTable table(s, delta);
                    const double eps = eps_class_exact(s, delta).value;
                    for (int i = 0; i < 12; ++i) {
                        const auto psi = random_pure_state(qubit_dims(n, 1 + static_cast<int>(rng.below(4))), rng);
                        const double d = ideal_distance(psi, table);
                        worst_gap = std::min(worst_gap, std::sqrt(eps) - d);
                        out.expect(d <= std::sqrt(eps) + 1e-9, "ideal distance above sqrt(eps)");
                        ++states;
                    }
                }
            }
    out.expect(states >= 500, "fewer than 500 states");
    out.detail << states << " states, min slack " << worst_gap;
}

void tightness(Outcome& out) {
    double worst = 0.0;
    int cases = 0;
    for (int n = 3; n <= 6; ++n)
        for (int k = 1; k <= 3 && k < n; ++k)
            for (double delta : {0.1, 0.2, 0.3, 0.4, 0.5}) {
                const auto s = strategy(StrategyKind::Example1WithoutReplacement, n, k);
                const auto psi = symmetric_worst_state(s, PermutationGroup::symmetric(n), delta);
                const double gap = std::abs(ideal_distance(psi, s, delta) - std::sqrt(eps_class_exact(s, delta).value));
                worst = std::max(worst, gap);
                out.expect(gap <= 1e-9, "symmetric state misses sqrt(eps)");
                ++cases;
            }
    out.detail << cases << " cases, max |gap| " << worst;
}

void classical_bounds(Outcome& out) {
    int checks = 0;
    for (int n = 2; n <= 10; ++n)
        for (int i = 1; i < 50; ++i) {
            const double delta = i / 50.0;
            std::vector<SamplingStrategy> strategies{strategy(StrategyKind::Example3UniformSubset, n, 0)};
            for (int k = 1; k < n; ++k) strategies.push_back(strategy(StrategyKind::Example1WithoutReplacement, n, k));
            for (int k = 1; 2 * k <= n; ++k) strategies.push_back(strategy(StrategyKind::Example4PartOfSample, n, k));
            for (const auto& s : strategies) {
                const double exact = eps_class_exact(s, delta).value;
                for (const auto& b : applicable_bounds(s, delta)) {
                    out.expect(exact <= b.value + 1e-12, "exact error above " + to_string(b.kind));
                    ++checks;
                }
            }
            for (int k = 1; k < n; ++k) {
                // Independent brute force for the plain k-subset strategy.
                if (n <= 8)
                    out.expect(std::abs(eps_class_exact(strategy(StrategyKind::Example1WithoutReplacement, n, k), delta).value -
                                        oracle::example1_eps(n, k, delta)) <= 1e-12,
                               "exact error disagrees with the brute-force oracle");
                const double serf = analytic_bound(BoundKind::WithoutReplacementSerfling, {n, k}, delta);
                const double hoef = analytic_bound(BoundKind::WithoutReplacementAnyK, {n, k}, delta);
                out.expect(serf <= hoef + 1e-15, "Serfling form above Hoeffding form");
                out.expect(analytic_bound(BoundKind::SerflingSample, {n, k}, delta) <=
                               analytic_bound(BoundKind::HoeffdingSample, {n, k}, delta) + 1e-15,
                           "Serfling sample form above Hoeffding sample form");
                checks += 2;
            }
        }
    out.detail << checks << " comparisons";
}

void lemma2(Outcome& out) {
    Rng rng(1004);
    double lowest = 1.0;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(4));
        const int env = 1 + static_cast<int>(rng.below(4));
        const std::uint64_t states = std::uint64_t{1} << n;
        std::vector<std::uint64_t> support;
        for (std::uint64_t i = 0; i < states; ++i)
            if (rng.coin()) support.push_back(i);
        if (support.empty()) support.push_back(rng.below(states));
        Vector v = Vector::Zero(static_cast<Eigen::Index>(states) * env);
        for (auto i : support)
            for (int e = 0; e < env; ++e) v[static_cast<Eigen::Index>(i) * env + e] = Complex(rng.normal(), rng.normal());
        const PureState phi(v / v.norm(), qubit_dims(n, env));
        const auto report = lemma2_operator_check(phi, support, BasisSpec(rng.random_bits(n)));
        lowest = std::min(lowest, report.min_eig);
        out.expect(report.min_eig >= -1e-9, "negative eigenvalue");
    }
    out.detail << "200 instances, min eigenvalue " << lowest;
}

void privacy_amplification(Outcome& out) {
    Rng rng(1005);
    double worst = -1.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int l = 1 + trial % 2;
        std::vector<std::vector<double>> joint(16, std::vector<double>(4));
        double total = 0.0;
        for (auto& row : joint)
            for (auto& p : row) total += (p = std::pow(rng.uniform(), 3.0));
        std::vector<CqEntry> entries;
        for (std::size_t x = 0; x < 16; ++x) {
            double px = 0.0;
            for (auto& p : joint[x]) px += (p /= total);
            Matrix d = Matrix::Zero(4, 4);
            for (int e = 0; e < 4; ++e) d(e, e) = joint[x][static_cast<std::size_t>(e)] / px;
            entries.push_back({x, px, DensityMatrix(d, {4})});
        }
        double sum = 0.0;
        for (const auto& e : entries) sum += e.probability;
        entries.back().probability += 1.0 - sum;
        const auto report = pa_exact_check(CqState(std::move(entries), 4), HashFamily(4, l));
        worst = std::max(worst, report.distance - report.bound);
        out.expect(report.distance <= report.bound, "distance above the bound");
        out.expect(std::abs(report.distance - oracle::classical_pa_distance(joint, l, true)) <= 1e-10,
                   "distance disagrees with the classical oracle");
    }
    for (int l = 0; l <= 4; ++l) {
        std::vector<CqEntry> uniform;
        for (std::uint64_t x = 0; x < 16; ++x) uniform.push_back({x, 1.0 / 16, DensityMatrix::maximally_mixed({2})});
        const auto report = pa_exact_check(CqState(std::move(uniform), 2), HashFamily(4, l));
        out.expect(report.distance == 0.0, "uniform independent input not exactly uniform");
    }
    out.detail << "100 instances, max (distance - bound) " << worst << "; uniform input distance 0";
}

void hamming_ball(Outcome& out) {
    int checks = 0;
    for (int n = 1; n <= 20; ++n)
        for (int i = 0; i <= 100; ++i) {
            const double radius = 0.005 * i;
            out.expect(hamming_ball_log_count(radius, 0.0, n) <= hamming_ball_log_bound(radius, 0.0, n) + 1e-12,
                       "exact ball count above the entropy bound");
            ++checks;
        }
    out.detail << checks << " (n, radius) points";
}

void threshold(Outcome& out) {
    const double root = qkd_rate_threshold();
    out.expect(std::abs(root - 0.110) <= 0.001, "root outside 0.110 +- 0.001");
    out.detail << "root " << root;
}

void qkd_completeness(Outcome& out) {
    AdversaryModel none;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        QkdParams p;
        p.n = 40;
        p.k = 10;
        const auto r = simulate_qkd(p, none, seed);
        out.expect(r.beta == 0.0 && r.alice_key == r.bob_key, "honest run with errors or unequal keys");
    }
    double view_gap = 0.0;
    for (int n = 1; n <= 3; ++n)
        for (double angle : {0.4, 1.0, std::numbers::pi / 2}) {
            AdversaryModel probe;
            probe.kind = AdversaryKind::EntanglingProbe;
            probe.probe_angle = angle;
            const auto report = qkd_sampling_view(attacked_epr_state(n, probe, {}));
            view_gap = std::max({view_gap, report.total_variation, report.max_conditional_distance});
            out.expect(report.equivalent && report.w_basis_opposite, "experiments differ");
        }
    AdversaryModel eve;
    eve.kind = AdversaryKind::InterceptResend;
    int errors = 0;
    int tested = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        QkdParams p;
        p.n = 200;
        p.k = 100;
        errors += static_cast<int>(std::lround(simulate_qkd(p, eve, seed).beta * p.k));
        tested += p.k;
    }
    // Branch enumeration: Eve's basis differs from theta half the time, then Bob errs half the time.
    double reference = 0.0;
    for (int theta = 0; theta < 2; ++theta)
        for (int basis = 0; basis < 2; ++basis) reference += 0.25 * (theta == basis ? 0.0 : 0.5);
    const double beta = static_cast<double>(errors) / tested;
    const double sigma = std::sqrt(reference * (1 - reference) / tested);
    out.expect(std::abs(beta - reference) <= 3 * sigma, "intercept-resend error rate outside 3 sigma");
    out.detail << "100 honest seeds; view gap " << view_gap << "; intercept-resend beta " << beta << " (ref " << reference
               << ", sigma " << sigma << ")";
}

void qkd_exact(Outcome& out) {
    QkdParams p;
    p.n = 5;
    p.k = 2;
    p.exact = true;
    const auto honest = simulate_qkd(p, AdversaryModel{}, 3);
    out.expect(std::abs(*honest.report.exact_distance) <= 1e-9, "honest exact distance not zero");
    out.detail << "honest " << *honest.report.exact_distance;

    std::vector<std::pair<AdversaryModel, QkdParams>> runs;
    Rng rng(1009);
    for (double angle : {0.3, 0.9, std::numbers::pi / 2}) {
        AdversaryModel a;
        a.kind = AdversaryKind::EntanglingProbe;
        a.probe_angle = angle;
        a.probe_qubits = 2;
        runs.emplace_back(a, p);
    }
    AdversaryModel custom;
    custom.kind = AdversaryKind::CustomUnitary;
    custom.unitary = random_unitary(4, rng);
    custom.probe_qubits = 2;
    runs.emplace_back(custom, p);
    AdversaryModel eve;
    eve.kind = AdversaryKind::InterceptResend;
    QkdParams small = p;
    small.n = 3;
    small.k = 1;
    runs.emplace_back(eve, small);
    QkdParams fixture;
    fixture.n = 1;
    fixture.k = 0;
    fixture.key_length = 1;
    fixture.exact = true;
    AdversaryModel copy;
    copy.kind = AdversaryKind::EntanglingProbe;
    copy.probe_angle = std::numbers::pi / 2;
    const auto hand = simulate_qkd(fixture, copy, 1);
    out.expect(std::abs(*hand.report.exact_distance - 0.25) <= 1e-12, "single-pair copy fixture is not 1/4");
    for (const auto& [adversary, params] : runs) {
        const auto r = simulate_qkd(params, adversary, 17);
        const double d = *r.report.exact_distance;
        out.expect(d >= 0.0 && d <= std::min(1.0, r.report.total_bound) + 1e-9, "exact distance above min(1, bound)");
        out.detail << "; " << to_string(adversary.kind) << " " << d << " <= " << std::min(1.0, r.report.total_bound);
    }
}

void qot(Outcome& out) {
    AdversaryModel honest;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        QotParams p;
        p.choice = static_cast<int>(seed & 1);
        const auto r = simulate_qot(p, honest, seed);
        out.expect(!r.aborted && r.bob_key_correct, "honest run failed");
    }
    Rng rng(1010);
    double worst = 0.0;
    int cases = 0;
    for (int n = 2; n <= 6; ++n)
        for (int k = 1; 2 * k <= n; ++k)
            for (int lies = 1; lies <= n; ++lies) {
                AdversaryModel liar;
                liar.lie_positions = rng.subset(n, lies);
                QotParams p;
                p.n = n;
                p.k = k;
                p.l = 1;
                const auto r = simulate_qot(p, liar, rng.next());
                const double gap = std::abs(r.abort_probability - (1.0 - choose(n - lies, k) / choose(n, k)));
                worst = std::max(worst, gap);
                out.expect(gap <= 1e-9, "abort probability disagrees with the subset oracle");
                ++cases;
            }
    out.detail << "100 honest seeds; " << cases << " lying configurations, max gap " << worst;
}

void evaluators(Outcome& out) {
    Rng rng(1011);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 10 + static_cast<int>(rng.below(2000));
        const int k = static_cast<int>(rng.below(static_cast<std::uint64_t>(n / 2 + 1)));
        const int m = static_cast<int>(rng.below(static_cast<std::uint64_t>(n / 4 + 1)));
        const int l = static_cast<int>(rng.below(static_cast<std::uint64_t>(n / 4 + 1)));
        const double beta = 0.2 * rng.uniform();
        const double delta = (0.5 - beta) * (0.01 + 0.98 * rng.uniform());
        const double a = oracle::qkd_formula(n, k, m, l, beta, delta);
        const double eps = 0.001 + 0.3 * rng.uniform();
        const double qd = 0.45 * rng.uniform();
        const double b = oracle::qot_formula(n, k, l, eps, qd);
        const double ra = std::abs(qkd_bound(n, k, m, l, beta, delta).total_bound - a) / a;
        const double rb = std::abs(qot_bound(n, k, l, eps, qd).total_bound - b) / b;
        worst = std::max({worst, ra, rb});
        out.expect(ra <= 1e-12 && rb <= 1e-12, "bound evaluator disagrees with the arithmetic oracle");
    }
    struct Case { int n, k, m; double beta, eps; };
    const Case cases[] = {{100000, 10000, 22500, 0.03, 1e-9}, {10000, 1000, 1100, 0.05, 1e-6}, {2000, 200, 100, 0.01, 1e-3},
                          {50000, 5000, 0, 0.0, 1e-10},       {500, 100, 20, 0.02, 0.5},        {100, 20, 0, 0.0, 2.5},
                          {20000, 4000, 3000, 0.08, 1e-4},    {1000, 300, 50, 0.1, 0.1},        {300, 100, 0, 0.05, 10.0},
                          {80000, 8000, 10000, 0.049, 1e-12}};
    for (const auto& c : cases)
        out.expect(qkd_max_len(c.n, c.k, c.m, c.beta, c.eps).length == oracle::qkd_scan(c.n, c.k, c.m, c.beta, c.eps),
                   "key length plan disagrees with the brute-force scan");
    out.detail << "50 tuples, max relative error " << worst << "; 10 planning tuples";
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
        {"sqrt-bound on random states", sqrt_bound},
        {"tightness for symmetric strategies", tightness},
        {"exact classical error below analytic bounds", classical_bounds},
        {"operator inequality for measured superpositions", lemma2},
        {"privacy amplification bound", privacy_amplification},
        {"Hamming-ball bound", hamming_ball},
        {"QKD error-rate threshold", threshold},
        {"QKD completeness and experiment equivalence", qkd_completeness},
        {"QKD exact key distance", qkd_exact},
        {"QOT completeness and lie detection", qot},
        {"bound evaluators and key-length planning", evaluators},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome out;
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].second(out);
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail << "exception: " << e.what();
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += !out.pass;
        std::printf("criterion %2zu %s  %s  [%s] (%.2fs)\n", i + 1, out.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                    out.detail.str().c_str(), seconds);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
