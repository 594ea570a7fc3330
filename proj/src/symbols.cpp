#include "qsample/symbols.hpp"

#include <algorithm>
#include <sstream>

namespace qsample {

SymbolString::SymbolString(std::vector<Symbol> symbols, int alphabet)
    : symbols_(std::move(symbols)), alphabet_(alphabet) {
    require(alphabet_ >= 2, "alphabet size must be at least 2");
    for (auto s : symbols_) require(s < alphabet_, "symbol outside the alphabet");
}

SymbolString SymbolString::parse(const std::string& text, int alphabet) {
    return SymbolString(bits_from_string(text), alphabet);
}

SymbolString SymbolString::from_index(std::uint64_t index, int length, int alphabet) {
    std::vector<Symbol> symbols(static_cast<std::size_t>(length));
    for (int i = length - 1; i >= 0; --i) {
        symbols[static_cast<std::size_t>(i)] = static_cast<Symbol>(index % alphabet);
        index /= alphabet;
    }
    return SymbolString(std::move(symbols), alphabet);
}

int SymbolString::weight() const {
    return static_cast<int>(std::count_if(symbols_.begin(), symbols_.end(), [](Symbol s) { return s != 0; }));
}

std::uint64_t SymbolString::index() const {
    std::uint64_t value = 0;
    for (auto s : symbols_) value = value * alphabet_ + s;
    return value;
}

std::string SymbolString::to_string() const { return bits_to_string(symbols_); }

double rel_weight(std::span<const Symbol> symbols) {
    if (symbols.empty()) return 0.0;
    const auto nonzero = std::count_if(symbols.begin(), symbols.end(), [](Symbol s) { return s != 0; });
    return static_cast<double>(nonzero) / static_cast<double>(symbols.size());
}

double rel_weight(const SymbolString& q) { return rel_weight(q.symbols()); }

SubsetIndex::SubsetIndex(std::vector<int> positions, int universe)
    : positions_(std::move(positions)), universe_(universe) {
    require(universe_ >= 0, "subset universe must be non-negative");
    for (std::size_t i = 0; i < positions_.size(); ++i) {
        require(positions_[i] >= 0 && positions_[i] < universe_, "subset position out of bounds");
        require(i == 0 || positions_[i - 1] < positions_[i], "subset positions must be strictly increasing");
    }
}

SubsetIndex SubsetIndex::all(int universe) {
    std::vector<int> positions(static_cast<std::size_t>(universe));
    for (int i = 0; i < universe; ++i) positions[static_cast<std::size_t>(i)] = i;
    return SubsetIndex(std::move(positions), universe);
}

SubsetIndex SubsetIndex::from_mask(std::uint64_t mask, int universe) {
    std::vector<int> positions;
    for (int i = 0; i < universe; ++i)
        if ((mask >> i) & 1u) positions.push_back(i);
    return SubsetIndex(std::move(positions), universe);
}

bool SubsetIndex::contains(int position) const {
    return std::binary_search(positions_.begin(), positions_.end(), position);
}

int SubsetIndex::rank_of(int position) const {
    auto it = std::lower_bound(positions_.begin(), positions_.end(), position);
    require(it != positions_.end() && *it == position, "position is not a member of the subset");
    return static_cast<int>(it - positions_.begin());
}

SubsetIndex SubsetIndex::complement() const {
    std::vector<int> rest;
    rest.reserve(static_cast<std::size_t>(universe_ - size()));
    std::size_t j = 0;
    for (int i = 0; i < universe_; ++i) {
        if (j < positions_.size() && positions_[j] == i) {
            ++j;
        } else {
            rest.push_back(i);
        }
    }
    return SubsetIndex(std::move(rest), universe_);
}

std::uint64_t SubsetIndex::mask() const {
    require(universe_ <= 64, "mask form needs a universe of at most 64");
    std::uint64_t m = 0;
    for (int p : positions_) m |= std::uint64_t{1} << p;
    return m;
}

std::string SubsetIndex::to_string() const {
    std::ostringstream out;
    out << '{';
    for (std::size_t i = 0; i < positions_.size(); ++i) out << (i ? "," : "") << positions_[i];
    out << '}';
    return out.str();
}

SymbolString restrict(const SymbolString& q, const SubsetIndex& positions) {
    std::vector<Symbol> picked;
    picked.reserve(static_cast<std::size_t>(positions.size()));
    for (int p : positions.positions()) {
        require(static_cast<std::size_t>(p) < q.size(), "restriction index out of bounds");
        picked.push_back(q[static_cast<std::size_t>(p)]);
    }
    return SymbolString(std::move(picked), q.alphabet());
}

}  // namespace qsample
