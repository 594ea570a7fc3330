#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qsample/common.hpp"

namespace qsample {

using Symbol = std::uint8_t;

// A population string over the alphabet {0, ..., alphabet-1}; symbol 0 counts as "zero weight".
class SymbolString {
public:
    SymbolString() = default;
    explicit SymbolString(std::vector<Symbol> symbols, int alphabet = 2);
    // Parses "0110"-style text.
    static SymbolString parse(const std::string& text, int alphabet = 2);
    // Decodes a base-`alphabet` index, position 0 most significant.
    static SymbolString from_index(std::uint64_t index, int length, int alphabet = 2);

    std::size_t size() const { return symbols_.size(); }
    bool empty() const { return symbols_.empty(); }
    int alphabet() const { return alphabet_; }
    Symbol operator[](std::size_t i) const { return symbols_[i]; }
    std::span<const Symbol> symbols() const { return symbols_; }
    int weight() const;
    std::uint64_t index() const;
    std::string to_string() const;

    friend bool operator==(const SymbolString&, const SymbolString&) = default;

private:
    std::vector<Symbol> symbols_;
    int alphabet_ = 2;
};

// Relative Hamming weight; 0 for the empty string.
double rel_weight(std::span<const Symbol> symbols);
double rel_weight(const SymbolString& q);

// Sorted set of distinct positions inside a universe [0, universe).
class SubsetIndex {
public:
    SubsetIndex() = default;
    SubsetIndex(std::vector<int> positions, int universe);
    static SubsetIndex all(int universe);
    static SubsetIndex from_mask(std::uint64_t mask, int universe);

    const std::vector<int>& positions() const { return positions_; }
    int size() const { return static_cast<int>(positions_.size()); }
    bool empty() const { return positions_.empty(); }
    int universe() const { return universe_; }
    bool contains(int position) const;
    // Rank of `position` inside the subset; throws if absent.
    int rank_of(int position) const;
    SubsetIndex complement() const;
    std::uint64_t mask() const;
    std::string to_string() const;

    friend bool operator==(const SubsetIndex&, const SubsetIndex&) = default;
    friend auto operator<=>(const SubsetIndex&, const SubsetIndex&) = default;

private:
    std::vector<int> positions_;
    int universe_ = 0;
};

SymbolString restrict(const SymbolString& q, const SubsetIndex& positions);

}  // namespace qsample
