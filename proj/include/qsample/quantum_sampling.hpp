#pragma once

#include <optional>
#include <vector>

#include "qsample/quantum.hpp"
#include "qsample/strategy.hpp"

namespace qsample {

// Accept-set indicator over all alphabet^N strings (big-endian index order).
using AcceptMask = std::vector<std::uint8_t>;

AcceptMask accept_mask(const SamplingStrategy& strategy, const SubsetIndex& t, const Seed& s, double delta);
std::vector<SymbolString> accept_set(const SamplingStrategy& strategy, const SubsetIndex& t, const Seed& s,
                                     double delta);

// The strategy's branches with their accept masks, computed once and reused across states.
class AcceptTable {
public:
    AcceptTable(const SamplingStrategy& strategy, double delta);

    const std::vector<Branch>& branches() const { return branches_; }
    const AcceptMask& mask(std::size_t i) const { return masks_[i]; }
    int universe() const { return universe_; }
    int alphabet() const { return alphabet_; }
    double delta() const { return delta_; }

private:
    std::vector<Branch> branches_;
    std::vector<AcceptMask> masks_;
    int universe_;
    int alphabet_;
    double delta_;
};

struct SubspaceWeight {
    SubsetIndex t;
    Seed s;
    double inside_weight = 0.0;
    std::optional<PureState> projected_state;
};

SubspaceWeight project_onto_accept(const PureState& state, const SamplingStrategy& strategy, const SubsetIndex& t,
                                   const Seed& s, double delta);

// sum_{t,s} P(t,s) sqrt(1 - inside weight): the distance to the closest ideal state.
double ideal_distance(const PureState& state, const SamplingStrategy& strategy, double delta);
double ideal_distance(const PureState& state, const AcceptTable& table);

struct SqrtBoundReport {
    double ideal_distance = 0.0;
    double sqrt_eps_class = 0.0;
    bool holds = false;
    double gap() const { return sqrt_eps_class - ideal_distance; }
};

SqrtBoundReport check_sqrt_bound(const PureState& state, const SamplingStrategy& strategy, double delta);
SqrtBoundReport check_sqrt_bound(const PureState& state, const AcceptTable& table, double eps_class);

// Same distance with the population weight measured relative to the reference
// string x_ref in basis theta_ref: accept spans are spanned by H^theta |b xor x_ref>.
double ideal_distance_relative(const PureState& state, const SamplingStrategy& strategy, double delta,
                               const BasisSpec& theta_ref, const Bits& x_ref);

using Permutation = std::vector<int>;

// Finite group of permutations of the strategy's index universe.
class PermutationGroup {
public:
    static PermutationGroup symmetric(int universe);
    static PermutationGroup trivial(int universe);
    // Swaps inside pairs (i,0) <-> (i,1) combined with permutations of pair indices.
    static PermutationGroup pairwise(int n);
    static PermutationGroup generated(int universe, const std::vector<Permutation>& generators);
    // Validates closure under composition and inverse.
    static PermutationGroup from_elements(int universe, std::vector<Permutation> elements);

    const std::vector<Permutation>& elements() const { return elements_; }
    std::size_t order() const { return elements_.size(); }
    int universe() const { return universe_; }

private:
    PermutationGroup(int universe, std::vector<Permutation> elements);
    int universe_;
    std::vector<Permutation> elements_;
};

// (pi q)_{pi(i)} = q_i.
SymbolString permute(const SymbolString& q, const Permutation& pi);

bool is_g_symmetric(const SamplingStrategy& strategy, const PermutationGroup& group);

// Normalized orbit superposition of the worst-case string, trivial environment.
PureState symmetric_worst_state(const SamplingStrategy& strategy, const PermutationGroup& group, double delta);

}  // namespace qsample
