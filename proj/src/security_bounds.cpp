#include "qsample/security_bounds.hpp"

#include <cmath>
#include <limits>

#include "qsample/common.hpp"
#include "qsample/entropy.hpp"

namespace qsample {

namespace {

SecurityReport make_report(std::vector<BoundTerm> terms, double delta) {
    SecurityReport report;
    report.bound_terms = std::move(terms);
    for (const auto& term : report.bound_terms) report.total_bound += term.value;
    report.delta_used = delta;
    return report;
}

double qkd_pa_term(int n, int k, int m, int l, double beta, double delta) {
    return 0.5 * std::exp2(-0.5 * ((1.0 - binary_entropy(beta + delta)) * n - k - m - l));
}

double qkd_sampling_term(int k, double delta) { return 2.0 * std::exp(-delta * delta * k / 6.0); }

}  // namespace

SecurityReport qkd_bound(int n, int k, int m, int l, double beta, double delta) {
    require(n >= 0 && k >= 0 && m >= 0 && l >= 0, "n, k, m and l must be non-negative");
    require(beta >= 0.0 && delta >= 0.0, "beta and delta must be non-negative");
    require(beta + delta <= 0.5, "beta + delta must not exceed 1/2");
    return make_report({{"privacy-amplification", qkd_pa_term(n, k, m, l, beta, delta)},
                        {"sampling", qkd_sampling_term(k, delta)}},
                       delta);
}

int qkd_protocol_cap(int n, int k, int m, double beta) {
    require(beta >= 0.0 && beta <= 1.0, "beta must lie in [0, 1]");
    const double cap = (1.0 - binary_entropy(beta)) * n - k - m;
    if (cap <= 0.0) return 0;
    return static_cast<int>(std::ceil(cap)) - 1;
}

std::vector<double> qkd_delta_grid(double beta) {
    std::vector<double> grid;
    grid.reserve(1000);
    for (int i = 1; i <= 1000; ++i) grid.push_back((0.5 - beta) * i / 1000.0);
    return grid;
}

KeyLengthPlan qkd_max_len(int n, int k, int m, double beta, double eps_target) {
    require(beta >= 0.0 && beta < 0.5, "beta must satisfy 0 <= beta < 1/2");
    require(eps_target > 0.0, "the security target must be positive");
    require(n >= 0 && k >= 0 && m >= 0, "n, k and m must be non-negative");
    const int cap = qkd_protocol_cap(n, k, m, beta);
    KeyLengthPlan plan;
    for (double delta : qkd_delta_grid(beta)) {
        const double slack = eps_target - qkd_sampling_term(k, delta);
        if (slack <= 0.0) continue;
        // Solving the first term for l; rounding is then repaired against the bound itself.
        const double exact = (1.0 - binary_entropy(std::min(beta + delta, 0.5))) * n - k - m + 2.0 * std::log2(2.0 * slack);
        if (exact < 0.0) continue;
        int l = static_cast<int>(std::min<double>(std::floor(exact), cap));
        while (l >= 0 && qkd_bound(n, k, m, l, beta, delta).total_bound > eps_target) --l;
        while (l + 1 <= cap && qkd_bound(n, k, m, l + 1, beta, delta).total_bound <= eps_target) ++l;
        if (l < 0) continue;
        if (!plan.delta || l > plan.length) {
            plan.length = l;
            plan.delta = delta;
        }
    }
    return plan;
}

SecurityReport qkd_best_report(int n, int k, int m, int l, double beta) {
    if (beta >= 0.5) return make_report({{"trivial", 1.0}}, 0.0);
    SecurityReport best;
    best.total_bound = std::numeric_limits<double>::infinity();
    for (double delta : qkd_delta_grid(beta)) {
        auto report = qkd_bound(n, k, m, l, beta, std::min(delta, 0.5 - beta));
        if (report.total_bound < best.total_bound) best = std::move(report);
    }
    return best;
}

SecurityReport qot_bound(int n, int k, int l, double eps, double delta) {
    require(n >= 0 && k >= 0 && l >= 0 && k <= n, "need 0 <= k <= n and l >= 0");
    require(eps > 0.0, "eps must be positive");
    require(delta >= 0.0 && delta < 0.5, "delta must satisfy 0 <= delta < 1/2");
    const double rest = n - k;
    auto report = make_report(
        {{"privacy-amplification", 0.5 * std::exp2(-0.5 * ((0.25 - eps / 2.0 - binary_entropy(delta)) * rest - l))},
         {"sampling", std::sqrt(6.0) * std::exp(-delta * delta * k / 100.0)},
         {"hoeffding", 2.0 * std::exp(-2.0 * eps * eps * rest)}},
        delta);
    report.eps_used = eps;
    return report;
}

SecurityReport qot_bound_best(int n, int k, int l) {
    SecurityReport best;
    best.total_bound = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 100; ++i) {
        for (int j = 1; j <= 100; ++j) {
            auto report = qot_bound(n, k, l, 0.5 * i / 101.0, 0.5 * j / 101.0);
            if (report.total_bound < best.total_bound) best = std::move(report);
        }
    }
    return best;
}

double asymptotic_qkd_rate(double phi) {
    require(phi >= 0.0 && phi < 0.5, "phi must satisfy 0 <= phi < 1/2");
    return 1.0 - 2.0 * binary_entropy(phi);
}

double qkd_rate_threshold() {
    double lo = 0.0;
    double hi = 0.25;
    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        (asymptotic_qkd_rate(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace qsample
