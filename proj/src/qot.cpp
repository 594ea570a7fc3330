#include "qsample/qot.hpp"

#include <cmath>
#include <map>

#include "qsample/hashing.hpp"

namespace qsample {

namespace {

Bits pick(const Bits& source, const std::vector<int>& positions) {
    Bits out;
    for (int p : positions) out.push_back(source[static_cast<std::size_t>(p)]);
    return out;
}

Bits bob_bases(const AdversaryModel& bob, int n, Rng& rng) {
    switch (bob.basis_policy) {
        case BasisPolicy::Computational: return Bits(static_cast<std::size_t>(n), 0);
        case BasisPolicy::Hadamard: return Bits(static_cast<std::size_t>(n), 1);
        case BasisPolicy::Random: return rng.random_bits(n);
    }
    return rng.random_bits(n);
}

// c is the index set with fewer basis disagreements; ties go to 0.
int realized_choice(const std::array<SubsetIndex, 2>& sets, const Bits& theta, const Bits& bob_theta) {
    std::array<int, 2> disagreements{0, 0};
    for (int j = 0; j < 2; ++j)
        for (int i : sets[static_cast<std::size_t>(j)].positions())
            disagreements[static_cast<std::size_t>(j)] += theta[static_cast<std::size_t>(i)] != bob_theta[static_cast<std::size_t>(i)];
    return disagreements[0] > disagreements[1] ? 1 : 0;
}

}  // namespace

void QotParams::validate() const {
    require(n >= 1, "need at least one qubit");
    require(k >= 0 && 2 * k <= n, "test set size must satisfy 0 <= k <= n/2");
    require(l >= 1 && l <= n - k, "key length must satisfy 1 <= l <= n - k");
    require(choice == 0 || choice == 1, "choice bit must be 0 or 1");
}

double qot_abort_probability(const std::vector<bool>& inconsistent, int k) {
    const int n = static_cast<int>(inconsistent.size());
    require(k >= 0 && k <= n, "need 0 <= k <= n");
    check_budget(binomial(n, k) * k, "abort probability enumeration");
    std::size_t caught = 0;
    std::size_t total = 0;
    for (const auto& t : combinations(n, k)) {
        ++total;
        for (int i : t)
            if (inconsistent[static_cast<std::size_t>(i)]) {
                ++caught;
                break;
            }
    }
    return static_cast<double>(caught) / static_cast<double>(total);
}

double qot_guess_pass_probability() {
    int pass = 0;
    for (int theta = 0; theta < 2; ++theta)
        for (int x = 0; x < 2; ++x)
            for (int guess_theta = 0; guess_theta < 2; ++guess_theta)
                for (int guess_x = 0; guess_x < 2; ++guess_x) pass += guess_theta != theta || guess_x == x;
    return pass / 16.0;
}

double qot_alice_view_distance(const Bits& theta, const Bits& x, const SubsetIndex& test) {
    const int n = static_cast<int>(theta.size());
    require(static_cast<int>(x.size()) == n && test.universe() == n, "theta, x and the test set must share n");
    const int k = test.size();
    check_budget(std::ldexp(1.0, n + k) * 2.0 * n, "Alice view enumeration");
    std::array<std::map<std::string, double>, 2> views;
    const auto rest = test.complement().positions();
    for (std::uint64_t bases = 0; bases < (std::uint64_t{1} << n); ++bases) {
        const Bits bob_theta = unpack_bits(bases, n);
        for (std::uint64_t coins = 0; coins < (std::uint64_t{1} << k); ++coins) {
            const double weight = std::ldexp(1.0, -(n + k));
            std::string openings;
            for (int j = 0; j < k; ++j) {
                const auto i = static_cast<std::size_t>(test.positions()[static_cast<std::size_t>(j)]);
                const int outcome = bob_theta[i] == theta[i] ? x[i] : static_cast<int>((coins >> j) & 1u);
                openings += static_cast<char>('0' + bob_theta[i]);
                openings += static_cast<char>('0' + outcome);
            }
            std::vector<int> matching;
            std::vector<int> other;
            for (int i : rest) (bob_theta[static_cast<std::size_t>(i)] == theta[static_cast<std::size_t>(i)] ? matching : other).push_back(i);
            for (int c = 0; c < 2; ++c) {
                const SubsetIndex sets[2] = {SubsetIndex(c == 0 ? matching : other, n), SubsetIndex(c == 0 ? other : matching, n)};
                views[static_cast<std::size_t>(c)][openings + "|" + sets[0].to_string() + "|" + sets[1].to_string()] += weight;
            }
        }
    }
    double distance = 0.0;
    for (const auto& [view, p] : views[0]) {
        const auto it = views[1].find(view);
        distance += std::abs(p - (it == views[1].end() ? 0.0 : it->second));
    }
    for (const auto& [view, p] : views[1])
        if (!views[0].count(view)) distance += p;
    return 0.5 * distance;
}

QotResult simulate_qot(const QotParams& params, const AdversaryModel& bob, std::uint64_t seed) {
    params.validate();
    require(bob.kind == AdversaryKind::None,
            "the oblivious-transfer simulator models measuring Bobs only (kind none with basis, guessing or lying options)");
    for (int p : bob.lie_positions) require(p >= 0 && p < params.n, "lie position out of range");
    const int n = params.n;
    const int k = params.k;
    Rng rng(seed);
    QotResult result;
    auto& transcript = result.transcript;

    result.x = rng.random_bits(n);
    result.theta = rng.random_bits(n);
    transcript.add("preparation", "alice", "qubits-sent", "n=" + std::to_string(n));
    result.bob_theta = bob_bases(bob, n, rng);
    result.committed_x.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        if (bob.commit_guesses)
            result.committed_x[idx] = rng.coin() ? 1 : 0;
        else
            result.committed_x[idx] = result.bob_theta[idx] == result.theta[idx] ? result.x[idx] : (rng.coin() ? 1 : 0);
    }
    Bits opened_x = result.committed_x;
    for (int p : bob.lie_positions) opened_x[static_cast<std::size_t>(p)] ^= 1;
    transcript.add("commitment", "bob", "commitments", "count=" + std::to_string(2 * n));

    std::vector<bool> inconsistent(static_cast<std::size_t>(n), false);
    for (int i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        const bool breaks_registry = opened_x[idx] != result.committed_x[idx];
        const bool wrong_value = result.bob_theta[idx] == result.theta[idx] && opened_x[idx] != result.x[idx];
        inconsistent[idx] = breaks_registry || wrong_value;
    }
    result.abort_probability = qot_abort_probability(inconsistent, k);

    result.test_subset = SubsetIndex(rng.subset(n, k), n);
    transcript.add("commitment", "alice", "test-subset", result.test_subset.to_string());
    const auto& tested = result.test_subset.positions();
    transcript.add("commitment", "bob", "openings",
                   bits_to_string(pick(result.bob_theta, tested)) + ";" + bits_to_string(pick(opened_x, tested)));
    for (int i : tested) result.aborted = result.aborted || inconsistent[static_cast<std::size_t>(i)];
    transcript.add("commitment", "alice", "verdict", result.aborted ? "abort" : "accept");
    result.report = qot_bound_best(n, k, params.l);
    if (result.aborted) {
        result.report.transcript_digest = transcript.digest();
        return result;
    }

    transcript.add("partition", "alice", "bases", bits_to_string(result.theta));
    std::vector<int> matching;
    std::vector<int> other;
    const SubsetIndex untested = result.test_subset.complement();
    for (int i : untested.positions())
        (result.bob_theta[static_cast<std::size_t>(i)] == result.theta[static_cast<std::size_t>(i)] ? matching : other).push_back(i);
    const int c = params.choice;
    result.index_sets[static_cast<std::size_t>(c)] = SubsetIndex(matching, n);
    result.index_sets[static_cast<std::size_t>(1 - c)] = SubsetIndex(other, n);
    transcript.add("partition", "bob", "index-sets",
                   result.index_sets[0].to_string() + ";" + result.index_sets[1].to_string());
    result.realized_choice = realized_choice(result.index_sets, result.theta, result.bob_theta);

    const HashFamily family(n - k, params.l);
    const Bits r = rng.random_bits(family.seed_bits());
    transcript.add("extraction", "alice", "hash-seed", bits_to_string(r));
    auto key_of = [&](const Bits& source, const SubsetIndex& set) {
        return family.eval(r, pad_with_zeros(pick(source, set.positions()), n - k));
    };
    result.key0 = key_of(result.x, result.index_sets[0]);
    result.key1 = key_of(result.x, result.index_sets[1]);
    result.bob_key = key_of(result.committed_x, result.index_sets[static_cast<std::size_t>(c)]);
    result.bob_key_correct = result.bob_key == (c == 0 ? result.key0 : result.key1);
    result.report.transcript_digest = transcript.digest();
    return result;
}

}  // namespace qsample
