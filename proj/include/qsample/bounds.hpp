#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qsample/strategy.hpp"

namespace qsample {

// Closed-form upper bounds on the classical error probability.
enum class BoundKind {
    HoeffdingSample,                   // sample vs. population, with replacement: 2exp(-2 d^2 k)
    SerflingSample,                    // sample vs. population, without replacement
    WithoutReplacementAnyK,            // 2exp(-2(1-k/n)^2 d^2 k)
    WithoutReplacementSimple,          // 2exp(-d^2 k / 2), k <= n/2
    WithoutReplacementSerfling,        // 2exp(-2k(n-k)^2 d^2 / (n(n-k+1)))
    WithoutReplacementSerflingSimple,  // 2exp(-d^2 k n / (n+2)), k <= n/2
    UniformSubsetSplit,                // 2exp(-2n d^2 (1/2-b)^3) + 2exp(-2b^2 n), 0 < b < 1/2
    UniformSubset,                     // 4exp(-n d^2 / 32)
    PartOfSampleSplit,                 // 2exp(-x^2 k/2) + 4exp(-k(d-x)^2/32); grid-minimized over x if absent
    PartOfSample,                      // 6exp(-k d^2 / 50), k <= n/2
    PairwiseOneOfTwo,                  // 2exp(-d^2 k / 6)
    PairwiseBiased,                    // four-term union bound at caller-given (eps, beta)
    PairwiseBiasedBest,                // the same, minimized over a 100 x 100 (eps, beta) grid
};

std::string to_string(BoundKind kind);
BoundKind parse_bound_kind(const std::string& name);

struct BoundParams {
    int n = 0;
    int k = 0;
    double p = 0.5;
    // Free split parameter: eps for the biased pairwise bound, xi for the part-of-sample split.
    std::optional<double> eps;
    // Free split parameter beta for the uniform-subset and biased pairwise bounds.
    std::optional<double> beta;
};

// The formula value; vacuous values above 1 are returned unchanged.
double analytic_bound(BoundKind kind, const BoundParams& params, double delta);

struct NamedBound {
    BoundKind kind;
    BoundParams params;
    double value;
};

// Bounds on the strategy's error probability whose side conditions hold at these parameters.
std::vector<NamedBound> applicable_bounds(const SamplingStrategy& strategy, double delta);

}  // namespace qsample
