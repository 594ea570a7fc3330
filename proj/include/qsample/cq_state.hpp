#pragma once

#include <cstdint>
#include <vector>

#include "qsample/quantum.hpp"

namespace qsample {

struct CqEntry {
    std::uint64_t value = 0;
    double probability = 0.0;
    DensityMatrix conditional;
};

// Classical register X tensored branch-wise with conditional states on E.
class CqState {
public:
    CqState(std::vector<CqEntry> entries, int env_dim);

    const std::vector<CqEntry>& entries() const { return entries_; }
    int env_dim() const { return env_dim_; }
    // Block-diagonal sum_x P(x)|x><x| (x) rho_x in entry order.
    Matrix assemble() const;
    // Unnormalized P(x) rho_x for one entry.
    Matrix weighted(std::size_t i) const { return entries_[i].probability * entries_[i].conditional.matrix(); }
    // rho_E = sum_x P(x) rho_x.
    Matrix marginal() const;

private:
    std::vector<CqEntry> entries_;
    int env_dim_;
};

// sum_x P(x) Delta(rho_x, rho'_x); both states must share P_X.
double hybrid_trace_distance(const CqState& a, const CqState& b);

}  // namespace qsample
