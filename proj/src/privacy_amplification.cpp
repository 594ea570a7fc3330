#include "qsample/privacy_amplification.hpp"

#include <cmath>

namespace qsample {

double privacy_amplification_bound(double hmin, int l) {
    return 0.5 * std::exp2(-0.5 * (hmin - l));
}

bool has_classical_environment(const CqState& rho) {
    for (const auto& entry : rho.entries()) {
        Matrix off = entry.conditional.matrix();
        off.diagonal().setZero();
        if (off.cwiseAbs().maxCoeff() > 1e-12) return false;
    }
    return true;
}

double classical_min_entropy(const CqState& rho) {
    require(has_classical_environment(rho), "min-entropy is only computed for a classical environment");
    const auto& entries = rho.entries();
    Eigen::MatrixXd joint(static_cast<Eigen::Index>(entries.size()), rho.env_dim());
    for (std::size_t x = 0; x < entries.size(); ++x)
        for (int e = 0; e < rho.env_dim(); ++e)
            joint(static_cast<Eigen::Index>(x), e) =
                std::max(0.0, entries[x].probability * entries[x].conditional.matrix()(e, e).real());
    joint /= joint.sum();
    return min_entropy_classical_side(joint);
}

PaReport pa_exact_check(const CqState& rho, const HashFamily& family,
                        const std::optional<EntropyCertificate>& certificate) {
    const int n = family.input_bits();
    const int l = family.output_bits();
    require(n <= 16, "exact privacy amplification checks support at most 16 input bits");
    for (const auto& entry : rho.entries())
        require(entry.value < (std::uint64_t{1} << n), "classical value does not fit the hash input length");

    PaReport report;
    report.n = n;
    report.l = l;
    if (certificate) {
        require(check_certificate(rho, *certificate), "supplied min-entropy certificate is not valid");
        report.hmin = certificate->h;
    } else {
        require(has_classical_environment(rho),
                "no usable min-entropy: environment is quantum and no certificate was supplied");
        report.hmin = classical_min_entropy(rho);
    }

    const std::uint64_t seeds = std::uint64_t{1} << family.seed_bits();
    const std::size_t keys = std::size_t{1} << l;
    const auto env = static_cast<Eigen::Index>(rho.env_dim());
    check_budget(static_cast<double>(seeds) * static_cast<double>(rho.entries().size() + keys) * env * env,
                 "privacy amplification check");
    const Matrix ideal = rho.marginal() / static_cast<double>(keys);

    double total = 0.0;
    for (std::uint64_t r = 0; r < seeds; ++r) {
        const auto rows = family.matrix_rows(unpack_bits(r, family.seed_bits()));
        std::vector<Matrix> per_key(keys, Matrix::Zero(env, env));
        for (std::size_t i = 0; i < rho.entries().size(); ++i)
            per_key[HashFamily::apply_rows(rows, rho.entries()[i].value)] += rho.weighted(i);
        for (const auto& block : per_key) total += 0.5 * trace_norm_hermitian(block - ideal);
    }
    report.distance = total / static_cast<double>(seeds);
    report.bound = privacy_amplification_bound(report.hmin, l);
    report.holds = report.distance <= report.bound + kEqualityTolerance;
    return report;
}

}  // namespace qsample
