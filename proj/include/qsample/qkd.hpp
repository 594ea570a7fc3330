#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "qsample/adversary.hpp"
#include "qsample/linear_code.hpp"
#include "qsample/security_bounds.hpp"
#include "qsample/symbols.hpp"
#include "qsample/transcript.hpp"

namespace qsample {

struct QkdParams {
    int n = 8;
    int k = 2;
    // Error correction: syndrome length m and correctable fraction beta'.
    int syndrome_bits = 0;
    double correction_radius = 0.0;
    // Overrides the protocol's key-length rule.
    std::optional<int> key_length;
    // Independent flips of Bob's measured bit (in his measurement basis).
    double noise_flip = 0.0;
    // Also compute the exact distance of the key from uniform given Eve's view.
    bool exact = false;

    void validate() const;
    int correctable_errors() const;
};

struct QkdResult {
    Transcript transcript;
    Bits theta;
    Bits alice_raw;
    Bits bob_raw;
    SubsetIndex test_subset;
    double beta = 0.0;
    int key_length = 0;
    std::string decoding_model;
    bool decoding_succeeded = false;
    Bits alice_key;
    Bits bob_key;
    SecurityReport report;
};

QkdResult simulate_qkd(const QkdParams& params, const AdversaryModel& adversary, std::uint64_t seed);

// Unnormalised probe operators for one EPR pair measured in `theta`, indexed by 2x + y.
std::array<Matrix, 4> pair_probe_blocks(const AdversaryModel& adversary, bool probed, int label, int theta,
                                        double noise_flip);

// n EPR pairs after the attack, ordered (A_1..A_n, B_1..B_n); the probes form the environment.
PureState attacked_epr_state(int n, const AdversaryModel& adversary, const Bits& labels);

struct SamplingViewReport {
    double total_variation = 0.0;
    double max_conditional_distance = 0.0;
    double z_zero_probability = 0.0;
    bool w_basis_opposite = false;
    bool equivalent = false;
};

// Compares the original measurement of (A, B) in theta with the CNOT-transformed
// experiment that measures Z first and W afterwards, exactly over all theta.
SamplingViewReport qkd_sampling_view(const PureState& state);

}  // namespace qsample
