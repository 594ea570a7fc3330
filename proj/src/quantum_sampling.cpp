#include "qsample/quantum_sampling.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "qsample/classical_error.hpp"

namespace qsample {

namespace {

std::uint64_t string_count(int universe, int alphabet, const std::string& what) {
    const double count = std::pow(static_cast<double>(alphabet), universe);
    check_budget(count, what);
    return static_cast<std::uint64_t>(count);
}

void decode(std::uint64_t index, int alphabet, std::vector<Symbol>& out) {
    for (std::size_t i = out.size(); i-- > 0;) {
        out[i] = static_cast<Symbol>(index % static_cast<std::uint64_t>(alphabet));
        index /= static_cast<std::uint64_t>(alphabet);
    }
}

void check_population(const PureState& state, int universe, int alphabet) {
    require(state.population_size() == universe, "state population size must match the strategy universe");
    require(universe == 0 || state.population_dim() == alphabet, "state qudit dimension must match the alphabet");
}

double inside_weight(const PureState& state, const AcceptMask& mask) {
    const auto env = static_cast<Eigen::Index>(state.env_dim());
    const Vector& amps = state.amplitudes();
    double inside = 0.0;
    for (std::size_t a = 0; a < mask.size(); ++a)
        if (mask[a]) inside += amps.segment(static_cast<Eigen::Index>(a) * env, env).squaredNorm();
    return std::min(inside, 1.0);
}

Permutation compose(const Permutation& outer, const Permutation& inner) {
    Permutation result(inner.size());
    for (std::size_t i = 0; i < inner.size(); ++i) result[i] = outer[static_cast<std::size_t>(inner[i])];
    return result;
}

Permutation inverse(const Permutation& pi) {
    Permutation result(pi.size());
    for (std::size_t i = 0; i < pi.size(); ++i) result[static_cast<std::size_t>(pi[i])] = static_cast<int>(i);
    return result;
}

Permutation identity(int universe) {
    Permutation id(static_cast<std::size_t>(universe));
    for (int i = 0; i < universe; ++i) id[static_cast<std::size_t>(i)] = i;
    return id;
}

bool is_permutation(const Permutation& pi, int universe) {
    if (static_cast<int>(pi.size()) != universe) return false;
    std::vector<bool> hit(static_cast<std::size_t>(universe), false);
    for (int v : pi) {
        if (v < 0 || v >= universe || hit[static_cast<std::size_t>(v)]) return false;
        hit[static_cast<std::size_t>(v)] = true;
    }
    return true;
}

// Distribution over (remaining weight, estimate) pairs, keyed on a 1e-9 grid.
using PairLaw = std::map<std::pair<long long, long long>, double>;

std::pair<long long, long long> law_key(double rest, double estimate) {
    return {std::llround(rest * 1e9), std::llround(estimate * 1e9)};
}

double remaining_weight(std::span<const Symbol> q, const SubsetIndex& t) {
    int nonzero = 0;
    for (std::size_t i = 0; i < q.size(); ++i)
        if (!t.contains(static_cast<int>(i)) && q[i] != 0) ++nonzero;
    const std::size_t rest = q.size() - static_cast<std::size_t>(t.size());
    return rest == 0 ? 0.0 : static_cast<double>(nonzero) / static_cast<double>(rest);
}

std::pair<double, double> weight_and_estimate(const SamplingStrategy& strategy, std::span<const Symbol> q,
                                              const SubsetIndex& t, const Seed& s) {
    std::vector<Symbol> sample;
    for (int p : t.positions()) sample.push_back(q[static_cast<std::size_t>(p)]);
    return {remaining_weight(q, t), strategy.estimate(t, sample, s)};
}

bool same_law(const PairLaw& a, const PairLaw& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        if (ia != a.end() && ia->second <= 1e-12) { ++ia; continue; }
        if (ib != b.end() && ib->second <= 1e-12) { ++ib; continue; }
        if (ia == a.end() || ib == b.end()) return false;
        if (ia->first != ib->first || std::abs(ia->second - ib->second) > 1e-12) return false;
        ++ia;
        ++ib;
    }
    return true;
}

// Kronecker-built population vector H^theta |b xor x>.
Vector rotated_basis_vector(std::uint64_t b, const BasisSpec& theta, const Bits& x) {
    const int n = static_cast<int>(theta.size());
    const double r = 1.0 / std::sqrt(2.0);
    Vector v = Vector::Ones(1);
    for (int i = 0; i < n; ++i) {
        const int bit = static_cast<int>((b >> (n - 1 - i)) & 1u) ^ x[static_cast<std::size_t>(i)];
        Vector local(2);
        if (theta[static_cast<std::size_t>(i)] == 0) {
            local << (bit == 0 ? 1.0 : 0.0), (bit == 1 ? 1.0 : 0.0);
        } else {
            local << r, (bit == 0 ? r : -r);
        }
        Vector next(v.size() * 2);
        for (Eigen::Index a = 0; a < v.size(); ++a) next.segment(a * 2, 2) = v[a] * local;
        v = std::move(next);
    }
    return v;
}

}  // namespace

AcceptMask accept_mask(const SamplingStrategy& strategy, const SubsetIndex& t, const Seed& s, double delta) {
    require(delta > 0.0 && delta < 1.0, "delta must satisfy 0 < delta < 1");
    strategy.validate(t, s);
    const std::uint64_t count = string_count(strategy.universe(), strategy.alphabet(), "accept set");
    AcceptMask mask(count, 0);
    std::vector<Symbol> q(static_cast<std::size_t>(strategy.universe()));
    for (std::uint64_t index = 0; index < count; ++index) {
        decode(index, strategy.alphabet(), q);
        mask[index] = accepts_deviation(deviation(strategy, q, t, s), delta) ? 1 : 0;
    }
    return mask;
}

std::vector<SymbolString> accept_set(const SamplingStrategy& strategy, const SubsetIndex& t, const Seed& s,
                                     double delta) {
    const AcceptMask mask = accept_mask(strategy, t, s, delta);
    std::vector<SymbolString> members;
    for (std::uint64_t index = 0; index < mask.size(); ++index)
        if (mask[index]) members.push_back(SymbolString::from_index(index, strategy.universe(), strategy.alphabet()));
    return members;
}

AcceptTable::AcceptTable(const SamplingStrategy& strategy, double delta)
    : branches_(strategy.branches()), universe_(strategy.universe()), alphabet_(strategy.alphabet()), delta_(delta) {
    const double strings = std::pow(static_cast<double>(alphabet_), universe_);
    check_budget(strings * static_cast<double>(branches_.size()), "accept table");
    masks_.reserve(branches_.size());
    for (const auto& b : branches_) masks_.push_back(accept_mask(strategy, b.subset, b.seed, delta));
}

SubspaceWeight project_onto_accept(const PureState& state, const SamplingStrategy& strategy, const SubsetIndex& t,
                                   const Seed& s, double delta) {
    check_population(state, strategy.universe(), strategy.alphabet());
    const AcceptMask mask = accept_mask(strategy, t, s, delta);
    SubspaceWeight result{t, s, inside_weight(state, mask), std::nullopt};
    if (result.inside_weight >= 1e-12) {
        const auto env = static_cast<Eigen::Index>(state.env_dim());
        Vector projected = Vector::Zero(static_cast<Eigen::Index>(state.dimension()));
        for (std::size_t a = 0; a < mask.size(); ++a)
            if (mask[a]) projected.segment(static_cast<Eigen::Index>(a) * env, env) = state.amplitudes().segment(static_cast<Eigen::Index>(a) * env, env);
        projected /= std::sqrt(projected.squaredNorm());
        result.projected_state = PureState(std::move(projected), state.dims());
    }
    return result;
}

double ideal_distance(const PureState& state, const AcceptTable& table) {
    check_population(state, table.universe(), table.alphabet());
    double distance = 0.0;
    for (std::size_t i = 0; i < table.branches().size(); ++i)
        distance += table.branches()[i].probability * std::sqrt(std::max(0.0, 1.0 - inside_weight(state, table.mask(i))));
    return distance;
}

double ideal_distance(const PureState& state, const SamplingStrategy& strategy, double delta) {
    check_population(state, strategy.universe(), strategy.alphabet());
    return ideal_distance(state, AcceptTable(strategy, delta));
}

SqrtBoundReport check_sqrt_bound(const PureState& state, const AcceptTable& table, double eps_class) {
    SqrtBoundReport report;
    report.ideal_distance = ideal_distance(state, table);
    report.sqrt_eps_class = std::sqrt(eps_class);
    report.holds = report.ideal_distance <= report.sqrt_eps_class + kEqualityTolerance;
    return report;
}

SqrtBoundReport check_sqrt_bound(const PureState& state, const SamplingStrategy& strategy, double delta) {
    check_population(state, strategy.universe(), strategy.alphabet());
    return check_sqrt_bound(state, AcceptTable(strategy, delta), eps_class_exact(strategy, delta).value);
}

double ideal_distance_relative(const PureState& state, const SamplingStrategy& strategy, double delta,
                               const BasisSpec& theta_ref, const Bits& x_ref) {
    check_population(state, strategy.universe(), 2);
    const int n = strategy.universe();
    require(static_cast<int>(theta_ref.size()) == n && static_cast<int>(x_ref.size()) == n,
            "reference basis and string must cover the population");
    const auto env = static_cast<Eigen::Index>(state.env_dim());
    const auto pop = static_cast<Eigen::Index>(state.population_states());
    // Psi(a, e) = amplitude of |a>|e>.
    Matrix psi(pop, env);
    for (Eigen::Index a = 0; a < pop; ++a)
        for (Eigen::Index e = 0; e < env; ++e) psi(a, e) = state.amplitudes()[a * env + e];
    std::vector<Vector> frame;
    for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(pop); ++b) frame.push_back(rotated_basis_vector(b, theta_ref, x_ref));

    double distance = 0.0;
    for (const auto& branch : strategy.branches()) {
        const AcceptMask mask = accept_mask(strategy, branch.subset, branch.seed, delta);
        double inside = 0.0;
        for (std::size_t b = 0; b < mask.size(); ++b)
            if (mask[b]) inside += (frame[b].adjoint() * psi).squaredNorm();
        distance += branch.probability * std::sqrt(std::max(0.0, 1.0 - std::min(inside, 1.0)));
    }
    return distance;
}

PermutationGroup::PermutationGroup(int universe, std::vector<Permutation> elements)
    : universe_(universe), elements_(std::move(elements)) {}

PermutationGroup PermutationGroup::symmetric(int universe) {
    require(universe >= 0 && universe <= 9, "symmetric groups are enumerated up to 9 points");
    std::vector<Permutation> elements;
    Permutation pi = identity(universe);
    do {
        elements.push_back(pi);
    } while (std::next_permutation(pi.begin(), pi.end()));
    return PermutationGroup(universe, std::move(elements));
}

PermutationGroup PermutationGroup::trivial(int universe) { return PermutationGroup(universe, {identity(universe)}); }

PermutationGroup PermutationGroup::pairwise(int n) {
    require(n >= 1 && n <= 6, "pairwise groups are enumerated for 1 <= n <= 6");
    std::vector<Permutation> elements;
    Permutation sigma = identity(n);
    do {
        for (std::uint64_t swaps = 0; swaps < (std::uint64_t{1} << n); ++swaps) {
            Permutation pi(static_cast<std::size_t>(2 * n));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < 2; ++j) {
                    const int flipped = j ^ static_cast<int>((swaps >> i) & 1u);
                    pi[static_cast<std::size_t>(pair_position(i, j, n))] = pair_position(sigma[static_cast<std::size_t>(i)], flipped, n);
                }
            elements.push_back(std::move(pi));
        }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return PermutationGroup(2 * n, std::move(elements));
}

PermutationGroup PermutationGroup::generated(int universe, const std::vector<Permutation>& generators) {
    for (const auto& g : generators) require(is_permutation(g, universe), "generator is not a permutation of the universe");
    std::set<Permutation> seen{identity(universe)};
    std::vector<Permutation> frontier{identity(universe)};
    while (!frontier.empty()) {
        std::vector<Permutation> next;
        for (const auto& element : frontier)
            for (const auto& g : generators) {
                Permutation product = compose(g, element);
                if (seen.insert(product).second) next.push_back(std::move(product));
            }
        frontier = std::move(next);
        check_budget(static_cast<double>(seen.size()), "group closure");
    }
    return PermutationGroup(universe, {seen.begin(), seen.end()});
}

PermutationGroup PermutationGroup::from_elements(int universe, std::vector<Permutation> elements) {
    std::set<Permutation> members;
    for (const auto& e : elements) {
        require(is_permutation(e, universe), "group element is not a permutation of the universe");
        members.insert(e);
    }
    require(members.count(identity(universe)) == 1, "group must contain the identity");
    for (const auto& a : members) {
        require(members.count(inverse(a)) == 1, "group must be closed under inverses");
        for (const auto& b : members) require(members.count(compose(a, b)) == 1, "group must be closed under composition");
    }
    return PermutationGroup(universe, {members.begin(), members.end()});
}

SymbolString permute(const SymbolString& q, const Permutation& pi) {
    require(pi.size() == q.size(), "permutation must act on the whole string");
    std::vector<Symbol> out(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) out[static_cast<std::size_t>(pi[i])] = q[i];
    return SymbolString(std::move(out), q.alphabet());
}

bool is_g_symmetric(const SamplingStrategy& strategy, const PermutationGroup& group) {
    require(group.universe() == strategy.universe(), "group must act on the strategy's index universe");
    const auto branches = strategy.branches();
    const int universe = strategy.universe();
    const int d = strategy.alphabet();
    const std::uint64_t count = string_count(universe, d, "G-symmetry check");
    check_budget(static_cast<double>(count) * static_cast<double>(branches.size() + group.order()) *
                     static_cast<double>(branches.size()),
                 "G-symmetry check");

    std::vector<PairLaw> actual(count);
    std::vector<Symbol> q(static_cast<std::size_t>(universe));
    for (std::uint64_t index = 0; index < count; ++index) {
        decode(index, d, q);
        for (const auto& b : branches) {
            auto [rest, est] = weight_and_estimate(strategy, q, b.subset, b.seed);
            actual[index][law_key(rest, est)] += b.probability;
        }
    }
    const double uniform = 1.0 / static_cast<double>(group.order());
    for (const auto& candidate : branches) {
        if (candidate.probability <= 0.0) continue;
        bool matches = true;
        for (std::uint64_t index = 0; index < count && matches; ++index) {
            const SymbolString base = SymbolString::from_index(index, universe, d);
            PairLaw permuted;
            for (const auto& pi : group.elements()) {
                const SymbolString moved = permute(base, pi);
                auto [rest, est] = weight_and_estimate(strategy, moved.symbols(), candidate.subset, candidate.seed);
                permuted[law_key(rest, est)] += uniform;
            }
            matches = same_law(actual[index], permuted);
        }
        if (matches) return true;
    }
    return false;
}

PureState symmetric_worst_state(const SamplingStrategy& strategy, const PermutationGroup& group, double delta) {
    require(is_g_symmetric(strategy, group), "strategy is not G-symmetric for the supplied group");
    const ErrorEstimate worst = eps_class_exact(strategy, delta);
    const SymbolString& witness = *worst.worst_case_string;
    Dims dims(static_cast<std::size_t>(strategy.universe()), strategy.alphabet());
    dims.push_back(1);
    Vector v = Vector::Zero(static_cast<Eigen::Index>(total_dimension(dims)));
    for (const auto& pi : group.elements()) v[static_cast<Eigen::Index>(permute(witness, pi).index())] += 1.0;
    v.normalize();
    return PureState(std::move(v), std::move(dims));
}

}  // namespace qsample
