#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "qsample/common.hpp"
#include "qsample/symbols.hpp"

namespace qsample {

enum class StrategyKind {
    Example1WithoutReplacement,
    Example2WithReplacement,
    Example3UniformSubset,
    Example4PartOfSample,
    Example5PairwiseOneOfTwo,
    Example6PairwiseBiased,
    Custom,
};

std::string to_string(StrategyKind kind);
StrategyKind parse_strategy_kind(const std::string& name);

struct StrategyParams {
    int n = 0;
    int k = 0;
    double p = 0.5;
    int alphabet = 2;
};

// A seed is a list of integers whose meaning depends on the strategy: empty for
// the trivial seed, absolute positions inside t for sub-sampling strategies,
// pair indices for the pairwise one-of-two strategy, and the raw index sequence
// for sampling with replacement. Seeds may depend on t internally; the pair
// (t, s) is always drawn as one joint sample.
using Seed = std::vector<int>;

struct Branch {
    SubsetIndex subset;
    Seed seed;
    double probability = 0.0;
};

using Estimator = std::function<double(const SubsetIndex& t, std::span<const Symbol> sample, const Seed& s)>;

// Pair-indexed strategies flatten (i, j) in [n] x {0,1} to j*n + i.
inline int pair_position(int i, int j, int n) { return j * n + i; }

class SamplingStrategy {
public:
    // A strategy given by an explicit joint (t, s) law and estimator callback.
    static SamplingStrategy custom(int universe, int alphabet, std::vector<Branch> branches, Estimator estimator,
                                   bool permutation_symmetric = false);

    StrategyKind kind() const { return kind_; }
    const StrategyParams& params() const { return params_; }
    int universe() const { return universe_; }
    int alphabet() const { return params_.alphabet; }
    // True when the joint law of (remaining weight, estimate) is invariant under
    // every permutation of the index universe and only zero/non-zero matters.
    bool permutation_symmetric() const { return symmetric_; }
    bool pair_indexed() const;

    double branch_count() const;
    // Full joint (t, s) law; checks the enumeration budget first.
    std::vector<Branch> branches() const;
    Branch sample(Rng& rng) const;

    // Estimator applied to the restricted string `sample` = q|t.
    double estimate(const SubsetIndex& t, std::span<const Symbol> sample, const Seed& s) const;
    // Throws PreconditionError unless (t, s) lies in the support.
    void validate(const SubsetIndex& t, const Seed& s) const;

private:
    SamplingStrategy() = default;
    friend SamplingStrategy make_strategy(StrategyKind kind, const StrategyParams& params);

    StrategyKind kind_ = StrategyKind::Custom;
    StrategyParams params_;
    int universe_ = 0;
    bool symmetric_ = false;
    std::vector<Branch> custom_branches_;
    Estimator custom_estimator_;
};

SamplingStrategy make_strategy(StrategyKind kind, const StrategyParams& params);

double estimate(const SamplingStrategy& strategy, const SymbolString& q, const SubsetIndex& t, const Seed& s);

// |w(q restricted to the complement of t) - f(t, q|t, s)|; no validation of (t, s).
double deviation(const SamplingStrategy& strategy, std::span<const Symbol> q, const SubsetIndex& t, const Seed& s);

// Strict membership: deviation < delta.
bool in_accept_set(const SamplingStrategy& strategy, const SymbolString& q, const SubsetIndex& t, const Seed& s,
                   double delta);

inline bool accepts_deviation(double dev, double delta) { return dev < delta - kTieTolerance; }

}  // namespace qsample
