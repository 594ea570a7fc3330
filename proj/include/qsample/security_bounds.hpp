#pragma once

#include <optional>
#include <string>
#include <vector>

namespace qsample {

struct BoundTerm {
    std::string label;
    double value = 0.0;
};

struct SecurityReport {
    std::vector<BoundTerm> bound_terms;
    double total_bound = 0.0;
    double delta_used = 0.0;
    std::optional<double> eps_used;
    std::optional<double> exact_distance;
    std::string transcript_digest;
};

// Key-secrecy bound for the entanglement-based QKD protocol:
// 1/2 2^(-((1 - h(beta + delta)) n - k - m - l)/2) + 2 exp(-delta^2 k / 6).
SecurityReport qkd_bound(int n, int k, int m, int l, double beta, double delta);

// Largest integer l with l < (1 - h(beta)) n - k - m, or 0 if that is not positive.
int qkd_protocol_cap(int n, int k, int m, double beta);

// delta_i = (1/2 - beta) i / 1000 for i = 1..1000.
std::vector<double> qkd_delta_grid(double beta);

struct KeyLengthPlan {
    int length = 0;
    std::optional<double> delta;
};

// Largest l (within the protocol cap) for which some grid delta brings the bound to <= eps_target.
KeyLengthPlan qkd_max_len(int n, int k, int m, double beta, double eps_target);

// Bound minimised over the delta grid for an observed error rate; beta >= 1/2 gives a trivial report.
SecurityReport qkd_best_report(int n, int k, int m, int l, double beta);

// Oblivious-transfer bound against dishonest Bob:
// 1/2 2^(-((1/4 - eps/2 - h(delta)) (n - k) - l)/2) + sqrt(6) exp(-delta^2 k / 100) + 2 exp(-2 eps^2 (n - k)).
SecurityReport qot_bound(int n, int k, int l, double eps, double delta);
// Minimum over a 100 x 100 grid of eps, delta in (0, 1/2).
SecurityReport qot_bound_best(int n, int k, int l);

// 1 - 2 h(phi).
double asymptotic_qkd_rate(double phi);
// Root of 1 - 2 h(phi) on (0, 1/4) by bisection.
double qkd_rate_threshold();

}  // namespace qsample
