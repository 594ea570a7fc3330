#include "qsample/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace qsample {

namespace {

void require_ball_radius(double beta, double delta) {
    require(beta >= 0.0 && delta >= 0.0, "beta and delta must be non-negative");
    require(beta + delta <= 0.5 + 1e-12, "beta + delta must not exceed 1/2");
}

// <w| H^theta |i> for n-qubit basis labels w and i.
double hadamard_overlap(std::uint64_t w, std::uint64_t i, const BasisSpec& theta) {
    const int n = static_cast<int>(theta.size());
    double value = 1.0;
    for (int j = 0; j < n; ++j) {
        const int shift = n - 1 - j;
        const int wj = static_cast<int>((w >> shift) & 1u);
        const int ij = static_cast<int>((i >> shift) & 1u);
        if (theta[static_cast<std::size_t>(j)] == 1) {
            value *= ((wj & ij) ? -1.0 : 1.0) / std::sqrt(2.0);
        } else if (wj != ij) {
            return 0.0;
        }
    }
    return value;
}

}  // namespace

double binary_entropy(double p) {
    require(p >= 0.0 && p <= 1.0, "binary entropy needs 0 <= p <= 1");
    if (p == 0.0 || p == 1.0) return 0.0;
    return -(p * std::log2(p) + (1.0 - p) * std::log2(1.0 - p));
}

double hamming_ball_log_bound(double beta, double delta, int n) {
    require_ball_radius(beta, delta);
    require(n >= 0, "n must be non-negative");
    return binary_entropy(std::min(beta + delta, 0.5)) * n;
}

double hamming_ball_log_count(double beta, double delta, int n) {
    require_ball_radius(beta, delta);
    require(n >= 0 && n <= 60, "exact Hamming-ball counts support 0 <= n <= 60");
    const auto radius = static_cast<int>(std::floor((beta + delta) * n + 1e-9));
    unsigned __int128 term = 1;
    unsigned __int128 total = 0;
    for (int w = 0; w <= std::min(radius, n); ++w) {
        if (w > 0) term = term * static_cast<unsigned>(n - w + 1) / static_cast<unsigned>(w);
        total += term;
    }
    return std::log2(static_cast<long double>(total));
}

double min_entropy_classical_side(const Eigen::MatrixXd& joint) {
    require(joint.size() > 0, "joint distribution must be non-empty");
    require(joint.minCoeff() >= 0.0, "joint probabilities must be non-negative");
    require(std::abs(joint.sum() - 1.0) <= 1e-9, "joint probabilities must sum to 1");
    return -std::log2(joint.colwise().maxCoeff().sum());
}

double certificate_min_eigenvalue(const CqState& rho, const EntropyCertificate& cert) {
    require(static_cast<int>(cert.sigma.dimension()) == rho.env_dim(), "certificate operator must act on the environment");
    const double scale = std::exp2(-cert.h);
    double lowest = min_eigenvalue_hermitian(scale * cert.sigma.matrix());
    for (std::size_t i = 0; i < rho.entries().size(); ++i)
        lowest = std::min(lowest, min_eigenvalue_hermitian(scale * cert.sigma.matrix() - rho.weighted(i)));
    return lowest;
}

bool check_certificate(const CqState& rho, const EntropyCertificate& cert) {
    return certificate_min_eigenvalue(rho, cert) >= -kPsdTolerance;
}

CqState measure_to_cq(const PureState& state, const BasisSpec& basis) {
    const PureState rotated = apply_basis_change(state, basis);
    const auto env = static_cast<Eigen::Index>(state.env_dim());
    Dims env_dims{state.env_dim()};
    std::vector<CqEntry> entries;
    for (std::size_t x = 0; x < state.population_states(); ++x) {
        const Vector v = rotated.amplitudes().segment(static_cast<Eigen::Index>(x) * env, env);
        const double p = v.squaredNorm();
        if (p <= 1e-15) continue;
        entries.push_back({x, p, DensityMatrix(v * v.adjoint() / p, env_dims)});
    }
    double total = 0.0;
    for (const auto& e : entries) total += e.probability;
    for (auto& e : entries) e.probability /= total;
    return CqState(std::move(entries), state.env_dim());
}

Lemma2Report lemma2_operator_check(const PureState& phi, const std::vector<std::uint64_t>& support,
                                   const BasisSpec& measurement_basis) {
    const int n = phi.population_size();
    require(phi.population_dim() == 2 || n == 0, "the operator check needs a qubit population");
    require(static_cast<int>(measurement_basis.size()) == n, "basis length must match the population size");
    const std::set<std::uint64_t> members(support.begin(), support.end());
    require(!members.empty(), "support set must be non-empty");
    const auto env = static_cast<Eigen::Index>(phi.env_dim());
    const std::size_t states = phi.population_states();
    double outside = 0.0;
    for (std::size_t i = 0; i < states; ++i)
        if (!members.count(i)) outside += phi.amplitudes().segment(static_cast<Eigen::Index>(i) * env, env).squaredNorm();
    require(outside <= 1e-12, "state has weight outside the declared support");
    for (auto i : members) require(i < states, "support index out of range");

    const double size = static_cast<double>(members.size());
    Lemma2Report report;
    report.min_eig = std::numeric_limits<double>::infinity();
    for (std::uint64_t w = 0; w < states; ++w) {
        Vector measured = Vector::Zero(env);
        Matrix mixed = Matrix::Zero(env, env);
        for (auto i : members) {
            const double c = hadamard_overlap(w, i, measurement_basis);
            if (c == 0.0) continue;
            const Vector e = phi.amplitudes().segment(static_cast<Eigen::Index>(i) * env, env);
            measured += c * e;
            mixed += c * c * (e * e.adjoint());
        }
        const Matrix block = size * mixed - measured * measured.adjoint();
        report.min_eig = std::min(report.min_eig, min_eigenvalue_hermitian(0.5 * (block + block.adjoint())));
    }
    report.holds = report.min_eig >= -kPsdTolerance;
    return report;
}

double corollary1_bound(const BasisSpec& theta, double beta, double delta, int n) {
    require_ball_radius(beta, delta);
    return theta.weight() - binary_entropy(std::min(beta + delta, 0.5)) * n;
}

}  // namespace qsample
