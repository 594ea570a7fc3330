#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qsample/common.hpp"

namespace qsample {

// Binary linear code given by an m x length parity-check matrix.
class LinearCode {
public:
    LinearCode(int length, std::vector<Bits> parity_rows, int radius);

    // Random parity checks. When feasible, rows are resampled until no non-zero
    // word of weight <= 2 radius lies in the kernel, so decoding within the
    // radius is unique.
    static LinearCode random(int length, int syndrome_bits, int radius, Rng& rng);

    int length() const { return length_; }
    int syndrome_bits() const { return static_cast<int>(rows_.size()); }
    int radius() const { return radius_; }
    const std::vector<Bits>& parity_rows() const { return rows_; }

    Bits syndrome(std::span<const std::uint8_t> word) const;

    // Whether exhaustive minimum-weight decoding is within the enumeration limit.
    bool exhaustive_decoding() const;
    // The word closest to `received` (within the radius) whose syndrome is `target`.
    std::optional<Bits> decode(std::span<const std::uint8_t> received, std::span<const std::uint8_t> target) const;

private:
    int length_;
    std::vector<Bits> rows_;
    int radius_;
};

// Number of error patterns of weight 1..radius.
double error_pattern_count(int length, int radius);

}  // namespace qsample
