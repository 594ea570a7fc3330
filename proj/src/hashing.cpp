#include "qsample/hashing.hpp"

#include <algorithm>

namespace qsample {

HashFamily::HashFamily(int input_bits, int output_bits, ToeplitzVariant variant)
    : input_bits_(input_bits), output_bits_(output_bits), variant_(variant) {
    require(input_bits_ >= 1, "hash input length must be positive");
    require(output_bits_ >= 0 && output_bits_ <= input_bits_, "hash output length must lie in [0, input length]");
}

int HashFamily::seed_bits() const {
    if (output_bits_ == 0) return 0;
    if (variant_ == ToeplitzVariant::Plain) return input_bits_ + output_bits_ - 1;
    return output_bits_ == input_bits_ ? 0 : input_bits_ - 1;
}

std::vector<std::uint64_t> HashFamily::matrix_rows(std::span<const std::uint8_t> seed) const {
    require(static_cast<int>(seed.size()) == seed_bits(), "hash seed has the wrong length");
    require(input_bits_ <= 64, "packed hash rows need at most 64 input bits");
    const int n = input_bits_;
    const int l = output_bits_;
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(l), 0);
    auto set_bit = [n](std::uint64_t& row, int column) { row |= std::uint64_t{1} << (n - 1 - column); };
    if (variant_ == ToeplitzVariant::Plain) {
        // T[i][j] = r[i - j + n - 1]
        for (int i = 0; i < l; ++i)
            for (int j = 0; j < n; ++j)
                if (seed[static_cast<std::size_t>(i - j + n - 1)]) set_bit(rows[static_cast<std::size_t>(i)], j);
        return rows;
    }
    const int width = n - l;
    for (int i = 0; i < l; ++i) {
        set_bit(rows[static_cast<std::size_t>(i)], i);
        for (int j = 0; j < width; ++j)
            if (seed[static_cast<std::size_t>(i - j + width - 1)]) set_bit(rows[static_cast<std::size_t>(i)], l + j);
    }
    return rows;
}

std::uint64_t HashFamily::apply_rows(const std::vector<std::uint64_t>& rows, std::uint64_t x) {
    std::uint64_t out = 0;
    for (auto row : rows) out = (out << 1) | static_cast<std::uint64_t>(popcount(row & x) & 1);
    return out;
}

Bits HashFamily::eval(std::span<const std::uint8_t> seed, std::span<const std::uint8_t> x) const {
    require(static_cast<int>(x.size()) == input_bits_, "hash input has the wrong length");
    if (input_bits_ <= 64) return unpack_bits(apply_rows(matrix_rows(seed), pack_bits(x)), output_bits_);
    require(static_cast<int>(seed.size()) == seed_bits(), "hash seed has the wrong length");
    // Long inputs: same matrix, evaluated entry by entry.
    const int n = input_bits_;
    const int l = output_bits_;
    const auto at = [](std::span<const std::uint8_t> v, int i) { return v[static_cast<std::size_t>(i)]; };
    Bits out(static_cast<std::size_t>(l), 0);
    for (int i = 0; i < l; ++i) {
        std::uint8_t acc = 0;
        if (variant_ == ToeplitzVariant::Plain) {
            for (int j = 0; j < n; ++j) acc ^= at(seed, i - j + n - 1) & at(x, j);
        } else {
            const int width = n - l;
            acc = at(x, i);
            for (int j = 0; j < width; ++j) acc ^= at(seed, i - j + width - 1) & at(x, l + j);
        }
        out[static_cast<std::size_t>(i)] = acc;
    }
    return out;
}

Bits hash_eval(const HashFamily& family, std::span<const std::uint8_t> seed, std::span<const std::uint8_t> x) {
    return family.eval(seed, x);
}

Bits pad_with_zeros(std::span<const std::uint8_t> x, int length) {
    require(static_cast<int>(x.size()) <= length, "cannot pad a string to a shorter length");
    Bits out(x.begin(), x.end());
    out.resize(static_cast<std::size_t>(length), 0);
    return out;
}

double max_collision_probability(const HashFamily& family) {
    const int n = family.input_bits();
    require(n <= 16, "exhaustive collision checks support at most 16 input bits");
    const double seeds = std::ldexp(1.0, family.seed_bits());
    check_budget(seeds * std::ldexp(1.0, n), "hash collision check");
    // g(r,x) = g(r,y) iff M_r (x xor y) = 0, so it suffices to scan non-zero differences.
    std::vector<std::uint64_t> zero_count(std::size_t{1} << n, 0);
    const auto seed_count = static_cast<std::uint64_t>(seeds);
    for (std::uint64_t r = 0; r < seed_count; ++r) {
        const auto rows = family.matrix_rows(unpack_bits(r, family.seed_bits()));
        for (std::uint64_t d = 1; d < (std::uint64_t{1} << n); ++d)
            if (HashFamily::apply_rows(rows, d) == 0) ++zero_count[d];
    }
    const auto worst = *std::max_element(zero_count.begin() + 1, zero_count.end());
    return static_cast<double>(worst) / seeds;
}

}  // namespace qsample
