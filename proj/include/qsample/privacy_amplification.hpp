#pragma once

#include <optional>

#include "qsample/cq_state.hpp"
#include "qsample/entropy.hpp"
#include "qsample/hashing.hpp"

namespace qsample {

struct PaReport {
    int n = 0;
    int l = 0;
    double hmin = 0.0;
    double distance = 0.0;
    double bound = 0.0;
    bool holds = false;
};

// 1/2 * 2^(-(hmin - l)/2).
double privacy_amplification_bound(double hmin, int l);

// True when every conditional state is diagonal in the computational basis.
bool has_classical_environment(const CqState& rho);
// H_min(X|E) for a classical environment, via the guessing probability.
double classical_min_entropy(const CqState& rho);

// Exact distance of (K = g(R, X), R, E) from (uniform K, R, E). The min-entropy
// is computed when E is classical and otherwise taken from a verified certificate.
PaReport pa_exact_check(const CqState& rho, const HashFamily& family,
                        const std::optional<EntropyCertificate>& certificate = std::nullopt);

}  // namespace qsample
