#include "qsample/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace qsample {

namespace {

const std::map<StrategyKind, std::string>& kind_names() {
    static const std::map<StrategyKind, std::string> names = {
        {StrategyKind::Example1WithoutReplacement, "example1"},
        {StrategyKind::Example2WithReplacement, "example2"},
        {StrategyKind::Example3UniformSubset, "example3"},
        {StrategyKind::Example4PartOfSample, "example4"},
        {StrategyKind::Example5PairwiseOneOfTwo, "example5"},
        {StrategyKind::Example6PairwiseBiased, "example6"},
        {StrategyKind::Custom, "custom"},
    };
    return names;
}

int count_nonzero(std::span<const Symbol> sample, const SubsetIndex& t, std::span<const int> positions) {
    int nonzero = 0;
    for (int p : positions) nonzero += sample[static_cast<std::size_t>(t.rank_of(p))] != 0 ? 1 : 0;
    return nonzero;
}

double fraction(int numerator, std::size_t denominator) {
    return denominator == 0 ? 0.0 : static_cast<double>(numerator) / static_cast<double>(denominator);
}

bool sorted_distinct(const Seed& s) {
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i - 1] >= s[i]) return false;
    return true;
}

// Validates that t holds exactly one element of each pair (i, 0), (i, 1).
void require_one_per_pair(const SubsetIndex& t, int n) {
    require(t.universe() == 2 * n, "pairwise subsets live in a universe of size 2n");
    require(t.size() == n, "pairwise subsets select exactly one element of each pair");
    for (int i = 0; i < n; ++i)
        require(t.contains(pair_position(i, 0, n)) != t.contains(pair_position(i, 1, n)),
                "pairwise subsets select exactly one element of each pair");
}

SubsetIndex pair_selection(std::uint64_t choice_mask, int n) {
    std::vector<int> positions;
    for (int i = 0; i < n; ++i) {
        const int j = static_cast<int>((choice_mask >> i) & 1u);
        positions.push_back(pair_position(i, j, n));
    }
    std::sort(positions.begin(), positions.end());
    return SubsetIndex(std::move(positions), 2 * n);
}

std::vector<int> pick(const std::vector<int>& pool, const std::vector<int>& ranks) {
    std::vector<int> chosen;
    chosen.reserve(ranks.size());
    for (int r : ranks) chosen.push_back(pool[static_cast<std::size_t>(r)]);
    return chosen;
}

// Split of a biased pairwise subset into its row-0 and row-1 members.
struct Rows {
    std::vector<int> row0;
    std::vector<int> row1;
};

Rows split_rows(const std::vector<int>& positions, int n) {
    Rows rows;
    for (int p : positions) (p < n ? rows.row0 : rows.row1).push_back(p);
    return rows;
}

}  // namespace

std::string to_string(StrategyKind kind) { return kind_names().at(kind); }

StrategyKind parse_strategy_kind(const std::string& name) {
    for (const auto& [kind, text] : kind_names())
        if (text == name) return kind;
    throw PreconditionError("unknown strategy kind '" + name + "'");
}

SamplingStrategy make_strategy(StrategyKind kind, const StrategyParams& params) {
    require(kind != StrategyKind::Custom, "custom strategies are built with SamplingStrategy::custom");
    require(params.alphabet >= 2, "alphabet size must be at least 2");
    require(params.n >= 1, "n must be at least 1");
    SamplingStrategy strategy;
    strategy.kind_ = kind;
    strategy.params_ = params;
    strategy.universe_ = params.n;
    switch (kind) {
        case StrategyKind::Example1WithoutReplacement:
        case StrategyKind::Example4PartOfSample:
            require(params.k >= 0 && params.k <= params.n, "k must satisfy 0 <= k <= n");
            strategy.symmetric_ = true;
            break;
        case StrategyKind::Example2WithReplacement:
            require(params.k >= 0, "k must be non-negative");
            strategy.symmetric_ = true;
            break;
        case StrategyKind::Example3UniformSubset:
            require(params.n <= 62, "uniform-subset strategies support n <= 62");
            strategy.params_.k = 0;
            strategy.symmetric_ = true;
            break;
        case StrategyKind::Example5PairwiseOneOfTwo:
            require(params.k >= 0 && params.k <= params.n, "k must satisfy 0 <= k <= n");
            require(params.n <= 62, "pairwise strategies support n <= 62");
            strategy.universe_ = 2 * params.n;
            break;
        case StrategyKind::Example6PairwiseBiased:
            require(params.p > 0.0 && params.p < 1.0, "bias p must satisfy 0 < p < 1");
            require(params.k >= 0 && params.k % 2 == 0, "k must be even and non-negative");
            require(params.n <= 62, "pairwise strategies support n <= 62");
            strategy.universe_ = 2 * params.n;
            break;
        case StrategyKind::Custom:
            break;
    }
    return strategy;
}

SamplingStrategy SamplingStrategy::custom(int universe, int alphabet, std::vector<Branch> branches,
                                          Estimator estimator, bool permutation_symmetric) {
    require(alphabet >= 2, "alphabet size must be at least 2");
    require(static_cast<bool>(estimator), "custom strategies need an estimator");
    double total = 0.0;
    for (const auto& b : branches) {
        require(b.subset.universe() == universe, "branch subsets must share the strategy universe");
        require(b.probability >= 0.0, "branch probabilities must be non-negative");
        total += b.probability;
    }
    require(std::abs(total - 1.0) <= 1e-12, "branch probabilities must sum to 1");
    SamplingStrategy strategy;
    strategy.kind_ = StrategyKind::Custom;
    strategy.params_.n = universe;
    strategy.params_.alphabet = alphabet;
    strategy.universe_ = universe;
    strategy.symmetric_ = permutation_symmetric;
    strategy.custom_branches_ = std::move(branches);
    strategy.custom_estimator_ = std::move(estimator);
    return strategy;
}

bool SamplingStrategy::pair_indexed() const {
    return kind_ == StrategyKind::Example5PairwiseOneOfTwo || kind_ == StrategyKind::Example6PairwiseBiased;
}

double SamplingStrategy::branch_count() const {
    const int n = params_.n;
    const int k = params_.k;
    switch (kind_) {
        case StrategyKind::Example1WithoutReplacement:
            return binomial(n, k);
        case StrategyKind::Example2WithReplacement:
            return std::pow(static_cast<double>(n), k);
        case StrategyKind::Example3UniformSubset:
            return std::ldexp(1.0, n);
        case StrategyKind::Example4PartOfSample:
            return binomial(n, k) * std::ldexp(1.0, k);
        case StrategyKind::Example5PairwiseOneOfTwo:
            return std::ldexp(1.0, n) * binomial(n, k);
        case StrategyKind::Example6PairwiseBiased: {
            const int half = k / 2;
            double total = 0.0;
            for (int a = 0; a <= n; ++a)
                total += binomial(n, a) * binomial(a, std::min(half, a)) * binomial(n - a, std::min(half, n - a));
            return total;
        }
        case StrategyKind::Custom:
            return static_cast<double>(custom_branches_.size());
    }
    return 0.0;
}

std::vector<Branch> SamplingStrategy::branches() const {
    check_budget(branch_count(), "enumerating the (t, s) law of " + to_string(kind_));
    const int n = params_.n;
    const int k = params_.k;
    std::vector<Branch> out;
    switch (kind_) {
        case StrategyKind::Example1WithoutReplacement: {
            const double p = 1.0 / binomial(n, k);
            for (auto& c : combinations(n, k)) out.push_back({SubsetIndex(std::move(c), n), {}, p});
            break;
        }
        case StrategyKind::Example2WithReplacement: {
            const auto count = static_cast<std::uint64_t>(branch_count());
            const double p = 1.0 / branch_count();
            for (std::uint64_t code = 0; code < count; ++code) {
                Seed sequence(static_cast<std::size_t>(k));
                std::uint64_t rest = code;
                for (int i = k - 1; i >= 0; --i) {
                    sequence[static_cast<std::size_t>(i)] = static_cast<int>(rest % static_cast<std::uint64_t>(n));
                    rest /= static_cast<std::uint64_t>(n);
                }
                std::set<int> distinct(sequence.begin(), sequence.end());
                out.push_back({SubsetIndex({distinct.begin(), distinct.end()}, n), std::move(sequence), p});
            }
            break;
        }
        case StrategyKind::Example3UniformSubset: {
            const double p = std::ldexp(1.0, -n);
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask)
                out.push_back({SubsetIndex::from_mask(mask, n), {}, p});
            break;
        }
        case StrategyKind::Example4PartOfSample: {
            const double p = 1.0 / (binomial(n, k) * std::ldexp(1.0, k));
            for (auto& c : combinations(n, k)) {
                SubsetIndex t(c, n);
                for (std::uint64_t inner = 0; inner < (std::uint64_t{1} << k); ++inner) {
                    Seed s;
                    for (int r = 0; r < k; ++r)
                        if ((inner >> r) & 1u) s.push_back(c[static_cast<std::size_t>(r)]);
                    out.push_back({t, std::move(s), p});
                }
            }
            break;
        }
        case StrategyKind::Example5PairwiseOneOfTwo: {
            const auto seeds = combinations(n, k);
            const double p = std::ldexp(1.0, -n) / static_cast<double>(seeds.size());
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
                const SubsetIndex t = pair_selection(mask, n);
                for (const auto& s : seeds) out.push_back({t, s, p});
            }
            break;
        }
        case StrategyKind::Example6PairwiseBiased: {
            const int half = k / 2;
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
                // Bit i set: element i is in the biased set, selecting (i, 0); otherwise (i, 1).
                const SubsetIndex t = pair_selection(~mask & ((std::uint64_t{1} << n) - 1), n);
                const Rows rows = split_rows(t.positions(), n);
                const int a = static_cast<int>(rows.row0.size());
                const auto seeds0 = combinations(a, std::min(half, a));
                const auto seeds1 = combinations(n - a, std::min(half, n - a));
                const double weight = std::pow(params_.p, a) * std::pow(1.0 - params_.p, n - a) /
                                      static_cast<double>(seeds0.size() * seeds1.size());
                for (const auto& r0 : seeds0) {
                    for (const auto& r1 : seeds1) {
                        Seed s = pick(rows.row0, r0);
                        const auto tail = pick(rows.row1, r1);
                        s.insert(s.end(), tail.begin(), tail.end());
                        out.push_back({t, std::move(s), weight});
                    }
                }
            }
            break;
        }
        case StrategyKind::Custom:
            out = custom_branches_;
            break;
    }
    return out;
}

Branch SamplingStrategy::sample(Rng& rng) const {
    const int n = params_.n;
    const int k = params_.k;
    switch (kind_) {
        case StrategyKind::Example1WithoutReplacement:
            return {SubsetIndex(rng.subset(n, k), n), {}, 0.0};
        case StrategyKind::Example2WithReplacement: {
            Seed sequence(static_cast<std::size_t>(k));
            for (auto& j : sequence) j = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
            std::set<int> distinct(sequence.begin(), sequence.end());
            return {SubsetIndex({distinct.begin(), distinct.end()}, n), std::move(sequence), 0.0};
        }
        case StrategyKind::Example3UniformSubset: {
            std::vector<int> positions;
            for (int i = 0; i < n; ++i)
                if (rng.coin()) positions.push_back(i);
            return {SubsetIndex(std::move(positions), n), {}, 0.0};
        }
        case StrategyKind::Example4PartOfSample: {
            auto positions = rng.subset(n, k);
            Seed s;
            for (int p : positions)
                if (rng.coin()) s.push_back(p);
            return {SubsetIndex(std::move(positions), n), std::move(s), 0.0};
        }
        case StrategyKind::Example5PairwiseOneOfTwo: {
            std::uint64_t mask = 0;
            for (int i = 0; i < n; ++i)
                if (rng.coin()) mask |= std::uint64_t{1} << i;
            return {pair_selection(mask, n), rng.subset(n, k), 0.0};
        }
        case StrategyKind::Example6PairwiseBiased: {
            std::uint64_t rows_one = 0;
            for (int i = 0; i < n; ++i)
                if (!rng.bernoulli(params_.p)) rows_one |= std::uint64_t{1} << i;
            const SubsetIndex t = pair_selection(rows_one, n);
            const Rows rows = split_rows(t.positions(), n);
            const int half = k / 2;
            const int a = static_cast<int>(rows.row0.size());
            Seed s = pick(rows.row0, rng.subset(a, std::min(half, a)));
            const auto tail = pick(rows.row1, rng.subset(n - a, std::min(half, n - a)));
            s.insert(s.end(), tail.begin(), tail.end());
            return {t, std::move(s), 0.0};
        }
        case StrategyKind::Custom: {
            const double u = rng.uniform();
            double cumulative = 0.0;
            for (const auto& b : custom_branches_) {
                cumulative += b.probability;
                if (u < cumulative) return {b.subset, b.seed, 0.0};
            }
            return {custom_branches_.back().subset, custom_branches_.back().seed, 0.0};
        }
    }
    return {};
}

double SamplingStrategy::estimate(const SubsetIndex& t, std::span<const Symbol> sample, const Seed& s) const {
    const int n = params_.n;
    switch (kind_) {
        case StrategyKind::Example1WithoutReplacement:
        case StrategyKind::Example3UniformSubset:
            return rel_weight(sample);
        case StrategyKind::Example2WithReplacement:
        case StrategyKind::Example4PartOfSample:
            return fraction(count_nonzero(sample, t, s), s.size());
        case StrategyKind::Example5PairwiseOneOfTwo: {
            int nonzero = 0;
            for (int i : s) {
                const int selected = t.contains(pair_position(i, 0, n)) ? pair_position(i, 0, n) : pair_position(i, 1, n);
                nonzero += sample[static_cast<std::size_t>(t.rank_of(selected))] != 0 ? 1 : 0;
            }
            return fraction(nonzero, s.size());
        }
        case StrategyKind::Example6PairwiseBiased: {
            const Rows taken = split_rows(t.positions(), n);
            const Rows seeds = split_rows(s, n);
            const double rest0 = n - static_cast<double>(taken.row0.size());
            const double rest1 = n - static_cast<double>(taken.row1.size());
            const double w0 = fraction(count_nonzero(sample, t, seeds.row0), seeds.row0.size());
            const double w1 = fraction(count_nonzero(sample, t, seeds.row1), seeds.row1.size());
            return (rest0 * w0 + rest1 * w1) / n;
        }
        case StrategyKind::Custom:
            return custom_estimator_(t, sample, s);
    }
    return 0.0;
}

void SamplingStrategy::validate(const SubsetIndex& t, const Seed& s) const {
    const int n = params_.n;
    const int k = params_.k;
    require(t.universe() == universe_, "subset universe does not match the strategy");
    switch (kind_) {
        case StrategyKind::Example1WithoutReplacement:
            require(t.size() == k, "subset must have exactly k elements");
            require(s.empty(), "this strategy uses the trivial seed");
            break;
        case StrategyKind::Example2WithReplacement: {
            require(static_cast<int>(s.size()) == k, "seed must list exactly k sampled indices");
            std::set<int> distinct(s.begin(), s.end());
            require(std::vector<int>(distinct.begin(), distinct.end()) == t.positions(),
                    "subset must be the set of sampled indices");
            break;
        }
        case StrategyKind::Example3UniformSubset:
            require(s.empty(), "this strategy uses the trivial seed");
            break;
        case StrategyKind::Example4PartOfSample:
            require(t.size() == k, "subset must have exactly k elements");
            require(sorted_distinct(s), "seed positions must be strictly increasing");
            for (int p : s) require(t.contains(p), "seed must be a subset of t");
            break;
        case StrategyKind::Example5PairwiseOneOfTwo:
            require_one_per_pair(t, n);
            require(static_cast<int>(s.size()) == k && sorted_distinct(s), "seed must be a k-subset of pair indices");
            for (int i : s) require(i >= 0 && i < n, "seed pair index out of range");
            break;
        case StrategyKind::Example6PairwiseBiased: {
            require_one_per_pair(t, n);
            require(sorted_distinct(s), "seed positions must be strictly increasing");
            for (int p : s) require(t.contains(p), "seed must be a subset of t");
            const Rows taken = split_rows(t.positions(), n);
            const Rows seeds = split_rows(s, n);
            const auto half = static_cast<std::size_t>(k / 2);
            require(seeds.row0.size() == std::min(half, taken.row0.size()) &&
                        seeds.row1.size() == std::min(half, taken.row1.size()),
                    "each seed row must hold min(k/2, row size) positions");
            break;
        }
        case StrategyKind::Custom: {
            const bool found = std::any_of(custom_branches_.begin(), custom_branches_.end(), [&](const Branch& b) {
                return b.probability > 0.0 && b.subset == t && b.seed == s;
            });
            require(found, "(t, s) has zero probability under this strategy");
            break;
        }
    }
}

double estimate(const SamplingStrategy& strategy, const SymbolString& q, const SubsetIndex& t, const Seed& s) {
    require(static_cast<int>(q.size()) == strategy.universe(), "string length must match the strategy universe");
    strategy.validate(t, s);
    const SymbolString sample = restrict(q, t);
    return strategy.estimate(t, sample.symbols(), s);
}

double deviation(const SamplingStrategy& strategy, std::span<const Symbol> q, const SubsetIndex& t, const Seed& s) {
    std::vector<Symbol> sample;
    sample.reserve(static_cast<std::size_t>(t.size()));
    int rest_nonzero = 0;
    std::size_t j = 0;
    const auto& positions = t.positions();
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (j < positions.size() && positions[j] == static_cast<int>(i)) {
            sample.push_back(q[i]);
            ++j;
        } else if (q[i] != 0) {
            ++rest_nonzero;
        }
    }
    const double rest = fraction(rest_nonzero, q.size() - sample.size());
    return std::abs(rest - strategy.estimate(t, sample, s));
}

bool in_accept_set(const SamplingStrategy& strategy, const SymbolString& q, const SubsetIndex& t, const Seed& s,
                   double delta) {
    require(delta > 0.0 && delta < 1.0, "delta must satisfy 0 < delta < 1");
    require(static_cast<int>(q.size()) == strategy.universe(), "string length must match the strategy universe");
    strategy.validate(t, s);
    return accepts_deviation(deviation(strategy, q.symbols(), t, s), delta);
}

}  // namespace qsample
