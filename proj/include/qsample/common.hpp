#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsample {

// Raised when arguments violate a documented constraint; the message names it.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Raised when an exhaustive computation would exceed the enumeration budget.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message) {
    if (!condition) throw PreconditionError(message);
}

inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kEqualityTolerance = 1e-9;
inline constexpr double kPsdTolerance = 1e-9;
// Deviations within this distance of delta count as ties, and ties are rejections.
inline constexpr double kTieTolerance = 1e-12;

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 28;

// Enumeration budget; QSAMPLE_BUDGET overrides the default.
std::uint64_t enumeration_budget();

// Throws BudgetError when `work` exceeds the budget.
void check_budget(double work, const std::string& what);

using Bits = std::vector<std::uint8_t>;

std::string bits_to_string(std::span<const std::uint8_t> bits);
Bits bits_from_string(const std::string& text);
// Big-endian packing: bit 0 of the sequence is the most significant.
std::uint64_t pack_bits(std::span<const std::uint8_t> bits);
Bits unpack_bits(std::uint64_t value, int length);

double binomial(int n, int k);
// All sorted k-subsets of [0, n) in lexicographic order.
std::vector<std::vector<int>> combinations(int n, int k);
int popcount(std::uint64_t value);

std::uint64_t splitmix64(std::uint64_t x);

// Seeded generator with portable derived distributions, so that runs replay
// identically across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    std::uint64_t next() { return engine_(); }
    // Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound);
    // Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    bool bernoulli(double p) { return uniform() < p; }
    bool coin() { return (next() >> 63) != 0; }
    double normal();
    Bits random_bits(int length);
    // Sorted uniform k-subset of [0, n) (Floyd's algorithm).
    std::vector<int> subset(int n, int k);

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace qsample
