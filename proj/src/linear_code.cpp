#include "qsample/linear_code.hpp"

#include <algorithm>

namespace qsample {

namespace {

constexpr double kDecodeLimit = 1 << 22;
constexpr int kResampleAttempts = 2000;

// Column j of the parity-check matrix packed into an integer (m <= 64).
std::vector<std::uint64_t> packed_columns(int length, const std::vector<Bits>& rows) {
    std::vector<std::uint64_t> columns(static_cast<std::size_t>(length), 0);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (int j = 0; j < length; ++j)
            if (rows[r][static_cast<std::size_t>(j)]) columns[static_cast<std::size_t>(j)] |= std::uint64_t{1} << r;
    return columns;
}

// Calls visit(positions, syndrome) for every error pattern of weight 1..max_weight
// until visit returns true.
template <class Visit>
bool for_each_pattern(const std::vector<std::uint64_t>& columns, int max_weight, Visit&& visit) {
    const int length = static_cast<int>(columns.size());
    std::vector<int> chosen;
    auto recurse = [&](auto&& self, int start, std::uint64_t syndrome) -> bool {
        if (!chosen.empty() && visit(chosen, syndrome)) return true;
        if (static_cast<int>(chosen.size()) == max_weight) return false;
        for (int j = start; j < length; ++j) {
            chosen.push_back(j);
            const bool stop = self(self, j + 1, syndrome ^ columns[static_cast<std::size_t>(j)]);
            chosen.pop_back();
            if (stop) return true;
        }
        return false;
    };
    return recurse(recurse, 0, 0);
}

}  // namespace

double error_pattern_count(int length, int radius) {
    double total = 0.0;
    for (int w = 1; w <= std::min(radius, length); ++w) total += binomial(length, w);
    return total;
}

LinearCode::LinearCode(int length, std::vector<Bits> parity_rows, int radius)
    : length_(length), rows_(std::move(parity_rows)), radius_(radius) {
    require(length_ >= 0, "code length must be non-negative");
    require(radius_ >= 0, "correction radius must be non-negative");
    for (const auto& row : rows_) require(static_cast<int>(row.size()) == length_, "parity row has the wrong length");
}

LinearCode LinearCode::random(int length, int syndrome_bits, int radius, Rng& rng) {
    require(syndrome_bits >= 0, "syndrome length must be non-negative");
    auto draw = [&] {
        std::vector<Bits> rows;
        for (int r = 0; r < syndrome_bits; ++r) rows.push_back(rng.random_bits(length));
        return rows;
    };
    if (radius == 0 || syndrome_bits > 64 || error_pattern_count(length, 2 * radius) > kDecodeLimit)
        return LinearCode(length, draw(), radius);
    for (int attempt = 0; attempt < kResampleAttempts; ++attempt) {
        auto rows = draw();
        const auto columns = packed_columns(length, rows);
        const bool low_weight_codeword =
            for_each_pattern(columns, 2 * radius, [](const std::vector<int>&, std::uint64_t s) { return s == 0; });
        if (!low_weight_codeword) return LinearCode(length, std::move(rows), radius);
    }
    throw PreconditionError("syndrome length is too short for unique decoding within the correction radius");
}

Bits LinearCode::syndrome(std::span<const std::uint8_t> word) const {
    require(static_cast<int>(word.size()) == length_, "word length does not match the code");
    Bits out;
    out.reserve(rows_.size());
    for (const auto& row : rows_) {
        std::uint8_t parity = 0;
        for (int j = 0; j < length_; ++j) parity ^= static_cast<std::uint8_t>(row[static_cast<std::size_t>(j)] & word[static_cast<std::size_t>(j)]);
        out.push_back(parity);
    }
    return out;
}

bool LinearCode::exhaustive_decoding() const {
    return syndrome_bits() <= 64 && error_pattern_count(length_, radius_) <= kDecodeLimit;
}

std::optional<Bits> LinearCode::decode(std::span<const std::uint8_t> received, std::span<const std::uint8_t> target) const {
    require(exhaustive_decoding(), "exhaustive decoding exceeds the enumeration limit");
    require(static_cast<int>(target.size()) == syndrome_bits(), "target syndrome has the wrong length");
    const Bits observed = syndrome(received);
    std::uint64_t wanted = 0;
    for (std::size_t r = 0; r < observed.size(); ++r)
        if (observed[r] != target[r]) wanted |= std::uint64_t{1} << r;
    Bits corrected(received.begin(), received.end());
    if (wanted == 0) return corrected;
    // Patterns are visited by position rather than weight, so keep the lightest match.
    std::optional<std::vector<int>> best;
    const auto columns = packed_columns(length_, rows_);
    for_each_pattern(columns, radius_, [&](const std::vector<int>& positions, std::uint64_t s) {
        if (s == wanted && (!best || positions.size() < best->size())) best = positions;
        return best && best->size() == 1;
    });
    if (!best) return std::nullopt;
    for (int j : *best) corrected[static_cast<std::size_t>(j)] ^= 1;
    return corrected;
}

}  // namespace qsample
