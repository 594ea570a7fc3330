#include "qsample/classical_error.hpp"

#include <algorithm>
#include <cmath>

namespace qsample {

namespace {

void require_delta(double delta) { require(delta > 0.0 && delta < 1.0, "delta must satisfy 0 < delta < 1"); }

}  // namespace

double hoeffding_halfwidth(std::uint64_t trials) {
    return std::sqrt(std::log(2.0 / 0.01) / (2.0 * static_cast<double>(trials)));
}

double failure_probability(const std::vector<Branch>& branches, const SamplingStrategy& strategy,
                           std::span<const Symbol> q, double delta) {
    double failed = 0.0;
    for (const auto& b : branches)
        if (!accepts_deviation(deviation(strategy, q, b.subset, b.seed), delta)) failed += b.probability;
    return failed;
}

double failure_probability(const SamplingStrategy& strategy, const SymbolString& q, double delta) {
    require_delta(delta);
    require(static_cast<int>(q.size()) == strategy.universe(), "string length must match the strategy universe");
    return failure_probability(strategy.branches(), strategy, q.symbols(), delta);
}

ErrorEstimate eps_class_exact(const SamplingStrategy& strategy, double delta) {
    require_delta(delta);
    require(strategy.kind() != StrategyKind::Example2WithReplacement,
            "exact error probability is not available for sampling with replacement; use Monte Carlo mode");
    const int universe = strategy.universe();
    const int d = strategy.alphabet();
    const bool by_weight = strategy.permutation_symmetric();
    const double strings = by_weight ? universe + 1.0 : std::pow(static_cast<double>(d), universe);
    check_budget(strings * strategy.branch_count(), "exact error probability of " + to_string(strategy.kind()));

    const auto branches = strategy.branches();
    ErrorEstimate result;
    result.mode = EstimateMode::Exact;
    result.value = -1.0;
    auto consider = [&](const SymbolString& q) {
        const double failed = failure_probability(branches, strategy, q.symbols(), delta);
        if (failed > result.value + 1e-15) {
            result.value = failed;
            result.worst_case_string = q;
        }
    };
    if (by_weight) {
        // Representatives 0...01...1 of each weight class.
        for (int w = 0; w <= universe; ++w) {
            std::vector<Symbol> symbols(static_cast<std::size_t>(universe), 0);
            for (int i = universe - w; i < universe; ++i) symbols[static_cast<std::size_t>(i)] = 1;
            consider(SymbolString(std::move(symbols), d));
        }
    } else {
        const auto count = static_cast<std::uint64_t>(strings);
        for (std::uint64_t index = 0; index < count; ++index) consider(SymbolString::from_index(index, universe, d));
    }
    result.value = std::clamp(result.value, 0.0, 1.0);
    return result;
}

ErrorEstimate eps_class_mc(const SamplingStrategy& strategy, const SymbolString& q, double delta,
                           std::uint64_t trials, std::uint64_t rng_seed) {
    require_delta(delta);
    require(trials >= 1, "trials must be at least 1");
    require(static_cast<int>(q.size()) == strategy.universe(), "string length must match the strategy universe");
    Rng rng(rng_seed);
    std::uint64_t failed = 0;
    for (std::uint64_t i = 0; i < trials; ++i) {
        const Branch b = strategy.sample(rng);
        if (!accepts_deviation(deviation(strategy, q.symbols(), b.subset, b.seed), delta)) ++failed;
    }
    ErrorEstimate result;
    result.mode = EstimateMode::MonteCarlo;
    result.trials = trials;
    result.value = static_cast<double>(failed) / static_cast<double>(trials);
    result.confidence_halfwidth = hoeffding_halfwidth(trials);
    return result;
}

}  // namespace qsample
