#pragma once

#include <array>
#include <cstdint>

#include "qsample/adversary.hpp"
#include "qsample/security_bounds.hpp"
#include "qsample/symbols.hpp"
#include "qsample/transcript.hpp"

namespace qsample {

struct QotParams {
    int n = 16;
    int k = 4;
    int l = 2;
    // Bob's choice bit c.
    int choice = 0;

    void validate() const;
};

struct QotResult {
    Transcript transcript;
    bool aborted = false;
    Bits x;
    Bits theta;
    Bits bob_theta;
    Bits committed_x;
    SubsetIndex test_subset;
    std::array<SubsetIndex, 2> index_sets;
    Bits key0;
    Bits key1;
    Bits bob_key;
    int realized_choice = 0;
    bool bob_key_correct = false;
    // Abort probability over every size-k test subset, other randomness fixed.
    double abort_probability = 0.0;
    SecurityReport report;
};

// Commitments are an ideal registry: openings are checked against the recorded values.
QotResult simulate_qot(const QotParams& params, const AdversaryModel& bob, std::uint64_t seed);

// Fraction of size-k subsets hitting a position flagged in `inconsistent`.
double qot_abort_probability(const std::vector<bool>& inconsistent, int k);

// Probability that one checked index passes when Bob commits to uniform guesses,
// by enumeration of (theta, x, theta^, x^).
double qot_guess_pass_probability();

// Total variation between Alice's views (openings on t, I_0, I_1) for c = 0 and c = 1
// with an honest Bob, exact over Bob's bases and outcomes.
double qot_alice_view_distance(const Bits& theta, const Bits& x, const SubsetIndex& test);

}  // namespace qsample
