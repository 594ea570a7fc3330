#pragma once

#include <cstdint>
#include <optional>

#include "qsample/strategy.hpp"

namespace qsample {

enum class EstimateMode { Exact, MonteCarlo };

struct ErrorEstimate {
    double value = 0.0;
    EstimateMode mode = EstimateMode::Exact;
    std::uint64_t trials = 0;
    double confidence_halfwidth = 0.0;
    std::optional<SymbolString> worst_case_string;
};

// Two-sided Hoeffding halfwidth at 99% confidence.
double hoeffding_halfwidth(std::uint64_t trials);

// Pr[q is rejected] under the strategy's exact (t, s) law.
double failure_probability(const SamplingStrategy& strategy, const SymbolString& q, double delta);
double failure_probability(const std::vector<Branch>& branches, const SamplingStrategy& strategy,
                           std::span<const Symbol> q, double delta);

// Maximum failure probability over all strings, with a maximizing witness.
ErrorEstimate eps_class_exact(const SamplingStrategy& strategy, double delta);

// Frequency estimate of the failure probability of one string.
ErrorEstimate eps_class_mc(const SamplingStrategy& strategy, const SymbolString& q, double delta,
                           std::uint64_t trials, std::uint64_t rng_seed);

}  // namespace qsample
