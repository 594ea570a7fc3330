#include "qsample/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace qsample {

namespace {

const std::map<BoundKind, std::string>& bound_names() {
    static const std::map<BoundKind, std::string> names = {
        {BoundKind::HoeffdingSample, "hoeffding"},
        {BoundKind::SerflingSample, "serfling"},
        {BoundKind::WithoutReplacementAnyK, "without-replacement"},
        {BoundKind::WithoutReplacementSimple, "without-replacement-simple"},
        {BoundKind::WithoutReplacementSerfling, "without-replacement-serfling"},
        {BoundKind::WithoutReplacementSerflingSimple, "without-replacement-serfling-simple"},
        {BoundKind::UniformSubsetSplit, "uniform-subset-split"},
        {BoundKind::UniformSubset, "uniform-subset"},
        {BoundKind::PartOfSampleSplit, "part-of-sample-split"},
        {BoundKind::PartOfSample, "part-of-sample"},
        {BoundKind::PairwiseOneOfTwo, "pairwise"},
        {BoundKind::PairwiseBiased, "pairwise-biased"},
        {BoundKind::PairwiseBiasedBest, "pairwise-biased-best"},
    };
    return names;
}

constexpr int kGridPoints = 100;

void require_sample_size(const BoundParams& q) {
    require(q.n >= 1, "n must be at least 1");
    require(q.k >= 0 && q.k <= q.n, "k must satisfy 0 <= k <= n");
}

void require_half(const BoundParams& q) {
    require_sample_size(q);
    require(2 * q.k <= q.n, "this bound requires k <= n/2");
}

double biased_terms(const BoundParams& q, double delta, double eps, double beta) {
    const double n = q.n;
    const double k = q.k;
    const double p = q.p;
    return 2.0 * std::exp(-2.0 * n * eps * eps * (1.0 - p - beta) * (1.0 - p - beta) * (p - beta)) +
           2.0 * std::exp(-2.0 * n * eps * eps * (p - beta) * (p - beta) * (1.0 - p - beta)) +
           4.0 * std::exp(-k * (delta - eps) * (delta - eps)) + 2.0 * std::exp(-2.0 * beta * beta * n);
}

double part_of_sample_split(double k, double delta, double xi) {
    return 2.0 * std::exp(-0.5 * xi * xi * k) + 4.0 * std::exp(-k * (delta - xi) * (delta - xi) / 32.0);
}

}  // namespace

std::string to_string(BoundKind kind) { return bound_names().at(kind); }

BoundKind parse_bound_kind(const std::string& name) {
    for (const auto& [kind, text] : bound_names())
        if (text == name) return kind;
    throw PreconditionError("unknown bound kind '" + name + "'");
}

double analytic_bound(BoundKind kind, const BoundParams& q, double delta) {
    require(delta >= 0.0 && delta <= 1.0, "delta must lie in [0, 1]");
    const double n = q.n;
    const double k = q.k;
    const double d2 = delta * delta;
    switch (kind) {
        case BoundKind::HoeffdingSample:
            require(q.k >= 0, "k must be non-negative");
            return 2.0 * std::exp(-2.0 * d2 * k);
        case BoundKind::SerflingSample:
            require_sample_size(q);
            return 2.0 * std::exp(-2.0 * d2 * k * n / (n - k + 1.0));
        case BoundKind::WithoutReplacementAnyK: {
            require_sample_size(q);
            const double rest = 1.0 - k / n;
            return 2.0 * std::exp(-2.0 * rest * rest * d2 * k);
        }
        case BoundKind::WithoutReplacementSimple:
            require_half(q);
            return 2.0 * std::exp(-0.5 * d2 * k);
        case BoundKind::WithoutReplacementSerfling:
            require_sample_size(q);
            return 2.0 * std::exp(-2.0 * k * (n - k) * (n - k) * d2 / (n * (n - k + 1.0)));
        case BoundKind::WithoutReplacementSerflingSimple:
            require_half(q);
            return 2.0 * std::exp(-d2 * k * n / (n + 2.0));
        case BoundKind::UniformSubsetSplit: {
            require(q.n >= 1, "n must be at least 1");
            require(q.beta.has_value(), "this bound needs the split parameter beta");
            const double beta = *q.beta;
            require(beta > 0.0 && beta < 0.5, "beta must satisfy 0 < beta < 1/2");
            const double c = 0.5 - beta;
            return 2.0 * std::exp(-2.0 * n * d2 * c * c * c) + 2.0 * std::exp(-2.0 * beta * beta * n);
        }
        case BoundKind::UniformSubset:
            require(q.n >= 1, "n must be at least 1");
            require(delta < 1.0, "delta must be below 1");
            return 4.0 * std::exp(-n * d2 / 32.0);
        case BoundKind::PartOfSampleSplit: {
            require_half(q);
            if (q.eps) {
                require(*q.eps > 0.0 && *q.eps < delta, "xi must satisfy 0 < xi < delta");
                return part_of_sample_split(k, delta, *q.eps);
            }
            require(delta > 0.0, "grid minimization needs delta > 0");
            double best = std::numeric_limits<double>::infinity();
            for (int i = 1; i <= kGridPoints; ++i)
                best = std::min(best, part_of_sample_split(k, delta, delta * i / (kGridPoints + 1.0)));
            return best;
        }
        case BoundKind::PartOfSample:
            require_half(q);
            return 6.0 * std::exp(-k * d2 / 50.0);
        case BoundKind::PairwiseOneOfTwo:
            require_sample_size(q);
            return 2.0 * std::exp(-d2 * k / 6.0);
        case BoundKind::PairwiseBiased: {
            require(q.n >= 1 && q.k >= 0 && q.k % 2 == 0, "needs n >= 1 and even k >= 0");
            require(q.p > 0.0 && q.p < 1.0, "bias p must satisfy 0 < p < 1");
            require(q.eps && q.beta, "this bound needs the split parameters eps and beta");
            require(*q.eps > 0.0 && *q.eps < delta, "eps must satisfy 0 < eps < delta");
            require(*q.beta > 0.0 && *q.beta < std::min(q.p, 1.0 - q.p), "beta must satisfy 0 < beta < min(p, 1-p)");
            return biased_terms(q, delta, *q.eps, *q.beta);
        }
        case BoundKind::PairwiseBiasedBest: {
            require(q.n >= 1 && q.k >= 0 && q.k % 2 == 0, "needs n >= 1 and even k >= 0");
            require(q.p > 0.0 && q.p < 1.0, "bias p must satisfy 0 < p < 1");
            require(delta > 0.0, "grid minimization needs delta > 0");
            const double beta_max = std::min(q.p, 1.0 - q.p);
            double best = std::numeric_limits<double>::infinity();
            for (int i = 1; i <= kGridPoints; ++i) {
                const double eps = delta * i / (kGridPoints + 1.0);
                for (int j = 1; j <= kGridPoints; ++j)
                    best = std::min(best, biased_terms(q, delta, eps, beta_max * j / (kGridPoints + 1.0)));
            }
            return best;
        }
    }
    return 0.0;
}

std::vector<NamedBound> applicable_bounds(const SamplingStrategy& strategy, double delta) {
    const auto& sp = strategy.params();
    BoundParams q{sp.n, sp.k, sp.p, std::nullopt, std::nullopt};
    std::vector<NamedBound> out;
    auto add = [&](BoundKind kind, BoundParams params) {
        out.push_back({kind, params, analytic_bound(kind, params, delta)});
    };
    const bool half = 2 * sp.k <= sp.n;
    switch (strategy.kind()) {
        case StrategyKind::Example1WithoutReplacement:
            add(BoundKind::WithoutReplacementAnyK, q);
            add(BoundKind::WithoutReplacementSerfling, q);
            if (half) {
                add(BoundKind::WithoutReplacementSimple, q);
                add(BoundKind::WithoutReplacementSerflingSimple, q);
            }
            break;
        case StrategyKind::Example3UniformSubset:
            if (delta < 1.0) add(BoundKind::UniformSubset, q);
            if (delta > 0.0) {
                BoundParams split = q;
                split.beta = delta / 4.0;
                add(BoundKind::UniformSubsetSplit, split);
            }
            break;
        case StrategyKind::Example4PartOfSample:
            if (half) {
                add(BoundKind::PartOfSample, q);
                if (delta > 0.0) add(BoundKind::PartOfSampleSplit, q);
            }
            break;
        case StrategyKind::Example5PairwiseOneOfTwo:
            add(BoundKind::PairwiseOneOfTwo, q);
            break;
        case StrategyKind::Example6PairwiseBiased:
            if (delta > 0.0) add(BoundKind::PairwiseBiasedBest, q);
            break;
        case StrategyKind::Example2WithReplacement:
        case StrategyKind::Custom:
            break;
    }
    return out;
}

}  // namespace qsample
