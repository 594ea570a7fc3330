#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qsample/entropy.hpp"
#include "qsample/hashing.hpp"
#include "qsample/privacy_amplification.hpp"

using namespace qsample;

namespace {

using Joint = std::vector<std::vector<double>>;

Joint random_joint(int rows, int cols, Rng& rng) {
    Joint joint(static_cast<std::size_t>(rows), std::vector<double>(static_cast<std::size_t>(cols)));
    double total = 0.0;
    for (auto& row : joint)
        for (auto& p : row) {
            // Skewed so that the min-entropy spreads over a useful range.
            p = std::pow(rng.uniform(), 3.0);
            total += p;
        }
    for (auto& row : joint)
        for (auto& p : row) p /= total;
    return joint;
}

Eigen::MatrixXd to_matrix(const Joint& joint) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(joint.size()), static_cast<Eigen::Index>(joint[0].size()));
    for (std::size_t i = 0; i < joint.size(); ++i)
        for (std::size_t j = 0; j < joint[0].size(); ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = joint[i][j];
    return m;
}

// Classical E encoded as diagonal conditionals.
CqState classical_cq(const Joint& joint) {
    const int env = static_cast<int>(joint[0].size());
    std::vector<CqEntry> entries;
    double total = 0.0;
    for (const auto& row : joint)
        for (double p : row) total += p;
    for (std::size_t x = 0; x < joint.size(); ++x) {
        double px = 0.0;
        for (double p : joint[x]) px += p;
        Matrix d = Matrix::Zero(env, env);
        for (int e = 0; e < env; ++e) d(e, e) = px > 0 ? joint[x][static_cast<std::size_t>(e)] / px : (e == 0 ? 1.0 : 0.0);
        entries.push_back({x, px / total, DensityMatrix(d, {env})});
    }
    return CqState(std::move(entries), env);
}

CqState uniform_cq(int bits) {
    std::vector<CqEntry> entries;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << bits); ++x)
        entries.push_back({x, std::ldexp(1.0, -bits), DensityMatrix(Matrix::Identity(1, 1), {1})});
    return CqState(std::move(entries), 1);
}

// Random cq state with a genuinely quantum environment.
CqState random_quantum_cq(int values, int env, Rng& rng) {
    std::vector<CqEntry> entries;
    std::vector<double> weights;
    double total = 0.0;
    for (int x = 0; x < values; ++x) {
        weights.push_back(0.05 + rng.uniform());
        total += weights.back();
    }
    for (int x = 0; x < values; ++x)
        entries.push_back({static_cast<std::uint64_t>(x), weights[static_cast<std::size_t>(x)] / total, random_density_matrix({env}, rng)});
    // Renormalize the tail so the sum is 1 to machine precision.
    double sum = 0.0;
    for (const auto& e : entries) sum += e.probability;
    entries.back().probability += 1.0 - sum;
    return CqState(std::move(entries), env);
}

// Largest h for which (h, sigma) certifies rho, by bisection on the eigenvalue test.
double best_certified_h(const CqState& rho, const DensityMatrix& sigma) {
    double lo = -10.0;
    double hi = 20.0;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        (certificate_min_eigenvalue(rho, {mid, sigma}) >= 0.0 ? lo : hi) = mid;
    }
    return lo;
}

Matrix diagonal_part(const Matrix& m) {
    Matrix d = Matrix::Zero(m.rows(), m.cols());
    d.diagonal() = m.diagonal();
    return d;
}

Dims qubit_dims(int n, int env) {
    Dims dims(static_cast<std::size_t>(n), 2);
    dims.push_back(env);
    return dims;
}

// Random state supported on `support` (population indices) with random environment vectors.
PureState random_supported_state(int n, int env, const std::vector<std::uint64_t>& support, Rng& rng) {
    Vector v = Vector::Zero(static_cast<Eigen::Index>((std::size_t{1} << n) * static_cast<std::size_t>(env)));
    for (auto i : support)
        for (int e = 0; e < env; ++e) v[static_cast<Eigen::Index>(i * static_cast<std::uint64_t>(env)) + e] = Complex(rng.normal(), rng.normal());
    return PureState(v / v.norm(), qubit_dims(n, env));
}

}  // namespace

TEST_CASE("binary entropy values") {
    CHECK(binary_entropy(0.5) == 1.0);
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.11) == doctest::Approx(0.49992).epsilon(1e-4));
    CHECK(binary_entropy(0.11) == doctest::Approx(oracle::h2(0.11)).epsilon(1e-14));
    CHECK(binary_entropy(0.3) == doctest::Approx(binary_entropy(0.7)).epsilon(1e-14));
    CHECK_THROWS_AS(binary_entropy(-0.01), PreconditionError);
    CHECK_THROWS_AS(binary_entropy(1.01), PreconditionError);
}

TEST_CASE("Hamming ball counts and bound") {
    CHECK(hamming_ball_log_bound(0.25, 0.25, 10) == doctest::Approx(10.0));
    CHECK(hamming_ball_log_count(0.25, 0.25, 10) == doctest::Approx(std::log2(638.0)));
    CHECK(hamming_ball_log_count(0.25, 0.25, 10) == doctest::Approx(9.318).epsilon(1e-4));
    CHECK(hamming_ball_log_bound(0.0, 0.0, 8) == 0.0);
    CHECK(hamming_ball_log_count(0.0, 0.0, 8) == 0.0);
    CHECK_THROWS_AS(hamming_ball_log_bound(0.3, 0.25, 10), PreconditionError);
    for (int n = 1; n <= 20; ++n)
        for (int i = 0; i <= 50; ++i) {
            const double radius = i / 100.0;
            // Independent count via Pascal's triangle.
            std::vector<double> row{1.0};
            for (int j = 0; j < n; ++j) {
                std::vector<double> next(row.size() + 1, 0.0);
                for (std::size_t a = 0; a < row.size(); ++a) {
                    next[a] += row[a];
                    next[a + 1] += row[a];
                }
                row = next;
            }
            double count = 0.0;
            for (int w = 0; w <= n; ++w)
                if (w <= radius * n + 1e-9) count += row[static_cast<std::size_t>(w)];
            CHECK(hamming_ball_log_count(radius, 0.0, n) == doctest::Approx(std::log2(count)).epsilon(1e-12));
            CHECK(hamming_ball_log_count(radius, 0.0, n) <= hamming_ball_log_bound(radius, 0.0, n) + 1e-12);
        }
}

TEST_CASE("classical-side min-entropy") {
    Eigen::MatrixXd uniform = Eigen::MatrixXd::Constant(8, 1, 1.0 / 8);
    CHECK(min_entropy_classical_side(uniform) == doctest::Approx(3.0));
    Eigen::MatrixXd copy = Eigen::MatrixXd::Zero(4, 4);
    copy.diagonal().setConstant(0.25);
    CHECK(std::abs(min_entropy_classical_side(copy)) <= 1e-12);
    Eigen::MatrixXd flip(2, 2);
    flip << 0.375, 0.125, 0.125, 0.375;
    CHECK(min_entropy_classical_side(flip) == doctest::Approx(-std::log2(0.75)));
    CHECK(min_entropy_classical_side(flip) == doctest::Approx(0.415).epsilon(1e-3));
    Rng rng(31);
    for (int i = 0; i < 20; ++i) {
        const auto joint = random_joint(4, 3, rng);
        CHECK(min_entropy_classical_side(to_matrix(joint)) == doctest::Approx(oracle::guessing_entropy(joint)).epsilon(1e-12));
    }
}

TEST_CASE("certificates") {
    for (int m = 1; m <= 3; ++m) {
        const auto rho = uniform_cq(m);
        const DensityMatrix trivial(Matrix::Identity(1, 1), {1});
        CHECK(check_certificate(rho, {static_cast<double>(m), trivial}));
        CHECK_FALSE(check_certificate(rho, {m + 0.1, trivial}));
    }
    // For a classical environment the best certificate equals the guessing-probability entropy.
    Rng rng(32);
    for (int i = 0; i < 20; ++i) {
        const auto joint = random_joint(4, 3, rng);
        const auto rho = classical_cq(joint);
        const auto h = oracle::guessing_entropy(joint);
        // Optimal witness: sigma(e) proportional to max_x P(x, e).
        Matrix sigma = Matrix::Zero(3, 3);
        double norm = 0.0;
        for (int e = 0; e < 3; ++e) {
            double best = 0.0;
            for (const auto& row : joint) best = std::max(best, row[static_cast<std::size_t>(e)]);
            sigma(e, e) = best;
            norm += best;
        }
        const DensityMatrix witness(sigma / norm, {3});
        CHECK(check_certificate(rho, {h - 1e-9, witness}));
        CHECK_FALSE(check_certificate(rho, {h + 1e-3, witness}));
        CHECK(classical_min_entropy(rho) == doctest::Approx(h).epsilon(1e-12));
    }
    CHECK_THROWS_AS(check_certificate(uniform_cq(2), {1.0, DensityMatrix::maximally_mixed({2})}), PreconditionError);
}

TEST_CASE("low-weight superpositions measured in a rotated basis are certified") {
    Rng rng(33);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + trial % 3;
        const int env = 1 + static_cast<int>(rng.below(3));
        const double radius = 0.05 * static_cast<double>(1 + rng.below(10));
        std::vector<std::uint64_t> support;
        for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i)
            if (std::popcount(i) <= radius * n + 1e-9) support.push_back(i);
        const auto psi = random_supported_state(n, env, support, rng);
        const BasisSpec theta(rng.random_bits(n));
        const auto rho = measure_to_cq(psi, theta);
        const double h = corollary1_bound(theta, radius, 0.0, n);
        const DensityMatrix sigma(rho.marginal(), {env});
        CHECK(check_certificate(rho, {h, sigma}));
    }
    CHECK(corollary1_bound(BasisSpec::hadamard(10), 0.25, 0.25, 10) == doctest::Approx(0.0));
    CHECK(corollary1_bound(BasisSpec::computational(6), 0.1, 0.1, 6) == doctest::Approx(-6 * oracle::h2(0.2)));
    CHECK(corollary1_bound(BasisSpec::parse("11111100"), 0.1, 0.15, 8) == doctest::Approx(6 - 8 * oracle::h2(0.25)));
    CHECK_THROWS_AS(corollary1_bound(BasisSpec::hadamard(4), 0.3, 0.3, 4), PreconditionError);
}

TEST_CASE("operator inequality for measured superpositions") {
    Rng rng(34);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + trial % 4;
        const int env = 1 + static_cast<int>(rng.below(4));
        const std::uint64_t states = std::uint64_t{1} << n;
        std::vector<std::uint64_t> support;
        for (std::uint64_t i = 0; i < states; ++i)
            if (rng.coin()) support.push_back(i);
        if (support.empty()) support.push_back(rng.below(states));
        const auto psi = random_supported_state(n, env, support, rng);
        const BasisSpec theta(rng.random_bits(n));
        const auto report = lemma2_operator_check(psi, support, theta);
        CHECK(report.holds);
        CHECK(report.min_eig >= -1e-9);

        // Independent route: measure each support component separately for the mixture.
        const auto rho = measure_to_cq(psi, theta);
        std::vector<Matrix> mix(states, Matrix::Zero(env, env));
        for (auto i : support) {
            Vector part = Vector::Zero(psi.amplitudes().size());
            part.segment(static_cast<Eigen::Index>(i) * env, env) = psi.amplitudes().segment(static_cast<Eigen::Index>(i) * env, env);
            const double weight = part.squaredNorm();
            if (weight <= 1e-15) continue;
            const auto component = measure_to_cq(PureState(part / std::sqrt(weight), psi.dims()), theta);
            for (std::size_t j = 0; j < component.entries().size(); ++j)
                mix[component.entries()[j].value] += weight * component.weighted(j);
        }
        std::vector<Matrix> real(states, Matrix::Zero(env, env));
        for (std::size_t j = 0; j < rho.entries().size(); ++j) real[rho.entries()[j].value] = rho.weighted(j);
        double lowest = 1e9;
        for (std::uint64_t w = 0; w < states; ++w)
            lowest = std::min(lowest, min_eigenvalue_hermitian(static_cast<double>(support.size()) * mix[w] - real[w]));
        CHECK(report.min_eig == doctest::Approx(lowest).epsilon(1e-8).scale(1.0));
    }
}

TEST_CASE("operator inequality special cases") {
    Rng rng(35);
    const auto single = random_supported_state(3, 2, {5}, rng);
    const auto one = lemma2_operator_check(single, {5}, BasisSpec::parse("101"));
    CHECK(one.holds);
    CHECK(std::abs(one.min_eig) <= 1e-12);

    // Equal superposition with orthogonal environment tags, measured in the Hadamard basis.
    const int n = 3;
    const std::vector<std::uint64_t> support{0, 3, 5, 6};
    const int env = static_cast<int>(support.size());
    Vector v = Vector::Zero(8 * env);
    for (std::size_t j = 0; j < support.size(); ++j) v[static_cast<Eigen::Index>(support[j]) * env + static_cast<Eigen::Index>(j)] = 0.5;
    const auto tagged = lemma2_operator_check(PureState(v, qubit_dims(n, env)), support, BasisSpec::hadamard(n));
    CHECK(tagged.holds);
    CHECK(tagged.min_eig >= -1e-12);

    CHECK_THROWS_AS(lemma2_operator_check(single, {4}, BasisSpec::parse("101")), PreconditionError);
}

TEST_CASE("chain rule for classical side information") {
    Rng rng(36);
    for (int trial = 0; trial < 200; ++trial) {
        const int xs = 2 + static_cast<int>(rng.below(3));
        const int ys = 2 + static_cast<int>(rng.below(3));
        const int es = 1 + static_cast<int>(rng.below(3));
        const auto flat = random_joint(xs * ys, es, rng);
        // flat row index = x * ys + y
        Eigen::MatrixXd xy_given_e = to_matrix(flat);
        Eigen::MatrixXd x_given_ye(xs, ys * es);
        for (int x = 0; x < xs; ++x)
            for (int y = 0; y < ys; ++y)
                for (int e = 0; e < es; ++e) x_given_ye(x, y * es + e) = flat[static_cast<std::size_t>(x * ys + y)][static_cast<std::size_t>(e)];
        CHECK(min_entropy_classical_side(x_given_ye) >= min_entropy_classical_side(xy_given_e) - std::log2(ys) - 1e-9);
    }
}

TEST_CASE("measuring the environment keeps certificates valid") {
    Rng rng(37);
    for (int trial = 0; trial < 100; ++trial) {
        const int env = 2 + static_cast<int>(rng.below(3));
        const auto rho = random_quantum_cq(2 + static_cast<int>(rng.below(4)), env, rng);
        const DensityMatrix sigma(rho.marginal(), {env});
        const double h = best_certified_h(rho, sigma);
        REQUIRE(check_certificate(rho, {h, sigma}));
        std::vector<CqEntry> measured;
        for (const auto& e : rho.entries()) measured.push_back({e.value, e.probability, DensityMatrix(diagonal_part(e.conditional.matrix()), {env})});
        const CqState dephased(std::move(measured), env);
        CHECK(check_certificate(dephased, {h, DensityMatrix(diagonal_part(sigma.matrix()), {env})}));
        CHECK(classical_min_entropy(dephased) >= h - 1e-9);
    }
}

TEST_CASE("hash evaluation") {
    const HashFamily family(5, 3);
    CHECK(family.seed_bits() == 4);
    CHECK(HashFamily(5, 3, ToeplitzVariant::Plain).seed_bits() == 7);
    CHECK(HashFamily(5, 5).seed_bits() == 0);
    CHECK(HashFamily(5, 0).seed_bits() == 0);
    Rng rng(38);
    for (int i = 0; i < 8; ++i) {
        const auto seed = rng.random_bits(family.seed_bits());
        CHECK(hash_eval(family, seed, Bits(5, 0)) == Bits(3, 0));
        const auto x = rng.random_bits(5);
        CHECK(hash_eval(family, seed, x) == hash_eval(family, seed, x));
    }
    CHECK_THROWS_AS(hash_eval(family, Bits(3, 0), Bits(5, 0)), PreconditionError);
    CHECK_THROWS_AS(hash_eval(family, Bits(4, 0), Bits(4, 0)), PreconditionError);
    CHECK_THROWS_AS(HashFamily(4, 5), PreconditionError);
    CHECK(pad_with_zeros(Bits{1, 1}, 4) == Bits{1, 1, 0, 0});
    CHECK_THROWS_AS(pad_with_zeros(Bits{1, 1, 0}, 2), PreconditionError);
}

TEST_CASE("hash matches the matrix definition") {
    Rng rng(39);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(10));
        const int l = static_cast<int>(rng.below(static_cast<std::uint64_t>(n + 1)));
        for (auto variant : {ToeplitzVariant::Plain, ToeplitzVariant::IdentityExtended}) {
            const HashFamily family(n, l, variant);
            const auto seed = rng.random_bits(family.seed_bits());
            const auto x = rng.random_bits(n);
            const auto expected = oracle::toeplitz_hash(std::vector<int>(seed.begin(), seed.end()), std::vector<int>(x.begin(), x.end()), l,
                                                        variant == ToeplitzVariant::IdentityExtended);
            const auto got = hash_eval(family, seed, x);
            CHECK(std::vector<int>(got.begin(), got.end()) == expected);
        }
    }
}

TEST_CASE("two-universality, exhaustively") {
    for (int n = 1; n <= 8; ++n)
        for (int l = 0; l <= n; ++l)
            for (auto variant : {ToeplitzVariant::Plain, ToeplitzVariant::IdentityExtended}) {
                const double worst = max_collision_probability(HashFamily(n, l, variant));
                CHECK(worst <= std::ldexp(1.0, -l) + 1e-12);
            }
    // n = 3, l = 2 pair by pair with the reference hash.
    for (bool extended : {false, true}) {
        const int seed_len = extended ? 2 : 4;
        for (int x = 0; x < 8; ++x)
            for (int y = x + 1; y < 8; ++y) {
                int collisions = 0;
                for (int r = 0; r < (1 << seed_len); ++r) {
                    const auto seed = oracle::bits_of(static_cast<std::uint64_t>(r), seed_len);
                    collisions += oracle::toeplitz_hash(seed, oracle::bits_of(static_cast<std::uint64_t>(x), 3), 2, extended) ==
                                  oracle::toeplitz_hash(seed, oracle::bits_of(static_cast<std::uint64_t>(y), 3), 2, extended);
                }
                CHECK(collisions * 4 <= (1 << seed_len));
            }
    }
}

TEST_CASE("privacy amplification examples") {
    for (int n = 1; n <= 5; ++n)
        for (int l = 0; l <= n; ++l) {
            const auto report = pa_exact_check(uniform_cq(n), HashFamily(n, l));
            CHECK(std::abs(report.distance) <= 1e-12);
            CHECK(report.hmin == doctest::Approx(n));
            CHECK(report.bound == doctest::Approx(0.5 * std::exp2(-(n - l) / 2.0)));
            CHECK(report.holds);
        }
    // Min-entropy 2 on four bits, extracting all four.
    Joint skewed(16, std::vector<double>(1, 0.0));
    for (int x = 0; x < 4; ++x) skewed[static_cast<std::size_t>(x)][0] = 0.25;
    const auto vacuous = pa_exact_check(classical_cq(skewed), HashFamily(4, 4));
    CHECK(vacuous.hmin == doctest::Approx(2.0));
    CHECK(vacuous.bound == doctest::Approx(1.0));
    CHECK(vacuous.bound == doctest::Approx(privacy_amplification_bound(2.0, 4)));
    CHECK(vacuous.distance <= 1.0);
    CHECK(vacuous.holds);
    CHECK(privacy_amplification_bound(2.0, 6) == doctest::Approx(2.0));

    Rng rng(40);
    const auto quantum = random_quantum_cq(4, 2, rng);
    CHECK_THROWS_AS(pa_exact_check(quantum, HashFamily(2, 1)), PreconditionError);
    const DensityMatrix sigma(quantum.marginal(), {2});
    const double h = best_certified_h(quantum, sigma);
    const auto certified = pa_exact_check(quantum, HashFamily(2, 1), EntropyCertificate{h, sigma});
    CHECK(certified.hmin == h);
    CHECK(certified.holds);
    CHECK_THROWS_AS(pa_exact_check(quantum, HashFamily(2, 1), EntropyCertificate{h + 0.5, sigma}), PreconditionError);
}

TEST_CASE("privacy amplification on random classical instances") {
    Rng rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        const auto joint = random_joint(16, 4, rng);
        const int l = 1 + trial % 2;
        for (bool extended : {false, true}) {
            const auto variant = extended ? ToeplitzVariant::IdentityExtended : ToeplitzVariant::Plain;
            const auto report = pa_exact_check(classical_cq(joint), HashFamily(4, l, variant));
            CHECK(report.hmin == doctest::Approx(oracle::guessing_entropy(joint)).epsilon(1e-12));
            CHECK(report.distance == doctest::Approx(oracle::classical_pa_distance(joint, l, extended)).epsilon(1e-10).scale(1.0));
            CHECK(report.distance <= report.bound + 1e-9);
            CHECK(report.holds);
        }
    }
}
