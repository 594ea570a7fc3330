#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qsample/common.hpp"

namespace qsample {

enum class ToeplitzVariant {
    // Full Toeplitz matrix, seed of n + l - 1 bits.
    Plain,
    // [I_l | T] with T an l x (n - l) Toeplitz matrix, seed of n - 1 bits.
    // Surjective for every seed, so a uniform input hashes to a uniform output.
    IdentityExtended,
};

// Two-universal family g(r, x) = M_r x over GF(2).
class HashFamily {
public:
    HashFamily(int input_bits, int output_bits, ToeplitzVariant variant = ToeplitzVariant::IdentityExtended);

    int input_bits() const { return input_bits_; }
    int output_bits() const { return output_bits_; }
    ToeplitzVariant variant() const { return variant_; }
    int seed_bits() const;

    // Rows of M_r packed big-endian over the input bits; needs input_bits <= 64.
    std::vector<std::uint64_t> matrix_rows(std::span<const std::uint8_t> seed) const;
    Bits eval(std::span<const std::uint8_t> seed, std::span<const std::uint8_t> x) const;
    static std::uint64_t apply_rows(const std::vector<std::uint64_t>& rows, std::uint64_t x);

private:
    int input_bits_;
    int output_bits_;
    ToeplitzVariant variant_;
};

Bits hash_eval(const HashFamily& family, std::span<const std::uint8_t> seed, std::span<const std::uint8_t> x);

// Zero-pads x on the right to `length` bits.
Bits pad_with_zeros(std::span<const std::uint8_t> x, int length);

// max over distinct inputs of Pr_r[g(r,x) = g(r,y)], by exhaustive seed enumeration.
double max_collision_probability(const HashFamily& family);

}  // namespace qsample
