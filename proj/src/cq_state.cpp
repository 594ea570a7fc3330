#include "qsample/cq_state.hpp"

#include <cmath>
#include <map>

namespace qsample {

CqState::CqState(std::vector<CqEntry> entries, int env_dim) : entries_(std::move(entries)), env_dim_(env_dim) {
    require(env_dim_ >= 1, "environment dimension must be positive");
    double total = 0.0;
    std::map<std::uint64_t, int> seen;
    for (const auto& e : entries_) {
        require(e.probability >= 0.0, "classical probabilities must be non-negative");
        require(static_cast<int>(e.conditional.dimension()) == env_dim_, "conditional states must act on the environment");
        require(seen[e.value]++ == 0, "classical values must be distinct");
        total += e.probability;
    }
    require(std::abs(total - 1.0) <= 1e-12, "classical probabilities must sum to 1");
}

Matrix CqState::assemble() const {
    const auto block = static_cast<Eigen::Index>(env_dim_);
    const auto size = static_cast<Eigen::Index>(entries_.size()) * block;
    Matrix m = Matrix::Zero(size, size);
    for (std::size_t i = 0; i < entries_.size(); ++i)
        m.block(static_cast<Eigen::Index>(i) * block, static_cast<Eigen::Index>(i) * block, block, block) = weighted(i);
    return m;
}

Matrix CqState::marginal() const {
    Matrix m = Matrix::Zero(env_dim_, env_dim_);
    for (std::size_t i = 0; i < entries_.size(); ++i) m += weighted(i);
    return m;
}

double hybrid_trace_distance(const CqState& a, const CqState& b) {
    require(a.env_dim() == b.env_dim(), "hybrid states must share the environment dimension");
    std::map<std::uint64_t, const CqEntry*> lookup;
    for (const auto& e : b.entries()) lookup[e.value] = &e;
    double total = 0.0;
    for (const auto& e : a.entries()) {
        auto it = lookup.find(e.value);
        const double other = it == lookup.end() ? 0.0 : it->second->probability;
        require(std::abs(e.probability - other) <= 1e-12, "hybrid states must share the classical distribution");
        if (it == lookup.end()) continue;
        if (e.probability > 0.0) total += e.probability * trace_distance(e.conditional, it->second->conditional);
        lookup.erase(it);
    }
    for (const auto& [value, entry] : lookup)
        require(entry->probability <= 1e-12, "hybrid states must share the classical distribution");
    return total;
}

}  // namespace qsample
