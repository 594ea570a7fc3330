#include "qsample/common.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <set>
#include <sstream>

namespace qsample {

std::uint64_t enumeration_budget() {
    if (const char* text = std::getenv("QSAMPLE_BUDGET")) {
        char* end = nullptr;
        const unsigned long long value = std::strtoull(text, &end, 10);
        if (end != text && value > 0) return value;
    }
    return kDefaultBudget;
}

void check_budget(double work, const std::string& what) {
    const double budget = static_cast<double>(enumeration_budget());
    if (work > budget) {
        std::ostringstream out;
        out << what << ": " << work << " evaluations exceed the enumeration budget of " << budget
            << " (raise QSAMPLE_BUDGET or use Monte Carlo mode)";
        throw BudgetError(out.str());
    }
}

std::string bits_to_string(std::span<const std::uint8_t> bits) {
    std::string text;
    text.reserve(bits.size());
    for (auto b : bits) text.push_back(static_cast<char>('0' + b));
    return text;
}

Bits bits_from_string(const std::string& text) {
    Bits bits;
    bits.reserve(text.size());
    for (char c : text) {
        require(c >= '0' && c <= '9', "symbol strings contain only digits");
        bits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return bits;
}

std::uint64_t pack_bits(std::span<const std::uint8_t> bits) {
    require(bits.size() <= 64, "at most 64 bits can be packed");
    std::uint64_t value = 0;
    for (auto b : bits) value = (value << 1) | (b & 1u);
    return value;
}

Bits unpack_bits(std::uint64_t value, int length) {
    Bits bits(static_cast<std::size_t>(length));
    for (int i = length - 1; i >= 0; --i) {
        bits[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(value & 1u);
        value >>= 1;
    }
    return bits;
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double result = 1.0;
    for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
    return std::round(result);
}

std::vector<std::vector<int>> combinations(int n, int k) {
    std::vector<std::vector<int>> result;
    if (k < 0 || k > n) return result;
    std::vector<int> current(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) current[static_cast<std::size_t>(i)] = i;
    while (true) {
        result.push_back(current);
        int i = k - 1;
        while (i >= 0 && current[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++current[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) current[static_cast<std::size_t>(j)] = current[static_cast<std::size_t>(j - 1)] + 1;
    }
    return result;
}

int popcount(std::uint64_t value) { return std::popcount(value); }

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t Rng::below(std::uint64_t bound) {
    require(bound > 0, "Rng::below needs a positive bound");
    // Rejection on the top of the range keeps the draw exactly uniform.
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t x;
    do {
        x = next();
    } while (x >= limit);
    return x % bound;
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u = 0.0;
    while (u <= 0.0) u = uniform();
    const double v = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u));
    const double angle = 2.0 * M_PI * v;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

Bits Rng::random_bits(int length) {
    Bits bits(static_cast<std::size_t>(length));
    for (auto& b : bits) b = coin() ? 1 : 0;
    return bits;
}

std::vector<int> Rng::subset(int n, int k) {
    require(k >= 0 && k <= n, "subset size must lie in [0, n]");
    std::set<int> chosen;
    for (int j = n - k; j < n; ++j) {
        const int candidate = static_cast<int>(below(static_cast<std::uint64_t>(j) + 1));
        if (!chosen.insert(candidate).second) chosen.insert(j);
    }
    return {chosen.begin(), chosen.end()};
}

}  // namespace qsample
