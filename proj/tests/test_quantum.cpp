#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qsample/cq_state.hpp"
#include "qsample/quantum.hpp"

using namespace qsample;

namespace {

const double kRootHalf = 1.0 / std::sqrt(2.0);

PureState qubits(std::initializer_list<Complex> amps) {
    const int n = static_cast<int>(std::round(std::log2(static_cast<double>(amps.size()))));
    Dims dims(static_cast<std::size_t>(n), 2);
    dims.push_back(1);
    Vector v(static_cast<Eigen::Index>(amps.size()));
    Eigen::Index i = 0;
    for (auto a : amps) v[i++] = a;
    return PureState(v, dims);
}

DensityMatrix projector(const PureState& s) { return DensityMatrix::from_pure(s); }

bool close(const Vector& a, const Vector& b, double tol = 1e-12) { return (a - b).norm() <= tol; }

}  // namespace

TEST_CASE("state invariants are validated") {
    Vector v = Vector::Zero(4);
    v[0] = 1.0;
    CHECK_NOTHROW(PureState(v, {2, 2, 1}));
    CHECK_THROWS_AS(PureState(v, {2, 1}), PreconditionError);
    CHECK_THROWS_AS(PureState(2.0 * v, {2, 2, 1}), PreconditionError);
    Matrix rho = Matrix::Zero(2, 2);
    rho(0, 0) = 1.5;
    rho(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityMatrix(rho, {2, 1}), PreconditionError);
    Matrix skew = Matrix::Identity(2, 2) * 0.5;
    skew(0, 1) = 0.3;
    CHECK_THROWS_AS(DensityMatrix(skew, {2, 1}), PreconditionError);
}

TEST_CASE("trace distance examples") {
    const auto zero = qubits({1, 0});
    const auto one = qubits({0, 1});
    const auto plus = qubits({kRootHalf, kRootHalf});
    CHECK(trace_distance(projector(zero), projector(zero)) == doctest::Approx(0.0));
    CHECK(trace_distance(projector(zero), projector(one)) == doctest::Approx(1.0));
    CHECK(trace_distance(projector(zero), projector(plus)) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(pure_trace_distance(zero, plus) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK_THROWS_AS(trace_distance(projector(zero), projector(qubits({1, 0, 0, 0}))), PreconditionError);
}

TEST_CASE("trace distance is a metric on random density matrices") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const Dims dims{2 + trial % 3, 1 + trial % 3};
        const auto a = random_density_matrix(dims, rng);
        const auto b = random_density_matrix(dims, rng);
        const auto c = random_density_matrix(dims, rng);
        const double ab = trace_distance(a, b);
        CHECK(ab == doctest::Approx(trace_distance(b, a)).epsilon(1e-12));
        CHECK(ab <= trace_distance(a, c) + trace_distance(c, b) + 1e-9);
        CHECK(ab >= 0.0);
        CHECK(ab <= 1.0 + 1e-12);
    }
}

TEST_CASE("pure-state formula agrees with the eigenvalue route") {
    Rng rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        const Dims dims{2, 2, 1 + trial % 4};
        const auto a = random_pure_state(dims, rng);
        const auto b = random_pure_state(dims, rng);
        CHECK(trace_distance(projector(a), projector(b)) == doctest::Approx(pure_trace_distance(a, b)).epsilon(1e-9));
    }
}

TEST_CASE("hybrid trace distance") {
    const Dims env{2};
    const DensityMatrix zero(Matrix(projector(qubits({1, 0})).matrix()), env);
    const DensityMatrix one(Matrix(projector(qubits({0, 1})).matrix()), env);
    const CqState a({{0, 0.5, zero}, {1, 0.5, zero}}, 2);
    const CqState b({{0, 0.5, one}, {1, 0.5, one}}, 2);
    const CqState c({{0, 0.5, zero}, {1, 0.5, one}}, 2);
    CHECK(hybrid_trace_distance(a, a) == doctest::Approx(0.0));
    CHECK(hybrid_trace_distance(a, b) == doctest::Approx(1.0));
    CHECK(hybrid_trace_distance(a, c) == doctest::Approx(0.5));
    const CqState skewed({{0, 0.25, zero}, {1, 0.75, zero}}, 2);
    CHECK_THROWS_AS(hybrid_trace_distance(a, skewed), PreconditionError);
    CHECK_THROWS_AS(CqState({{0, 0.5, zero}, {1, 0.6, zero}}, 2), PreconditionError);

    Rng rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<CqEntry> ea;
        std::vector<CqEntry> eb;
        double p[3] = {rng.uniform() + 0.1, rng.uniform() + 0.1, rng.uniform() + 0.1};
        const double total = p[0] + p[1] + p[2];
        for (std::uint64_t x = 0; x < 3; ++x) {
            ea.push_back({x, p[x] / total, random_density_matrix({3}, rng)});
            eb.push_back({x, p[x] / total, random_density_matrix({3}, rng)});
        }
        const CqState ca(ea, 3);
        const CqState cb(eb, 3);
        const Dims block{3, 3};
        const double assembled = trace_distance(DensityMatrix(ca.assemble(), block), DensityMatrix(cb.assemble(), block));
        CHECK(hybrid_trace_distance(ca, cb) == doctest::Approx(assembled).epsilon(1e-9));
    }
}

TEST_CASE("partial trace") {
    Rng rng(14);
    const auto a = random_density_matrix({2, 1}, rng);
    const auto b = random_density_matrix({3, 1}, rng);
    const DensityMatrix product(kron(a.matrix(), b.matrix()), {2, 3, 1});
    const auto reduced = partial_trace(product, SubsetIndex({0}, 3));
    CHECK((reduced.matrix() - a.matrix()).norm() <= 1e-12);

    const auto epr = projector(make_epr_pairs(1));
    const auto half = partial_trace(epr, SubsetIndex({0}, 3));
    CHECK((half.matrix() - 0.5 * Matrix::Identity(2, 2)).norm() <= 1e-12);

    const auto all = partial_trace(product, SubsetIndex::all(3));
    CHECK((all.matrix() - product.matrix()).norm() <= 1e-12);

    const auto random = random_density_matrix({2, 2, 3}, rng);
    CHECK(partial_trace(random, SubsetIndex({1, 2}, 3)).matrix().trace().real() == doctest::Approx(1.0));
    CHECK_THROWS_AS(partial_trace(random, SubsetIndex({0}, 4)), PreconditionError);
}

TEST_CASE("projective measurement") {
    const auto epr = make_epr_pairs(1);
    const auto outcomes = measure(epr, SubsetIndex::all(2), BasisSpec::computational(2));
    REQUIRE(outcomes.size() == 2);
    CHECK(outcomes[0].outcome == SymbolString::parse("00"));
    CHECK(outcomes[1].outcome == SymbolString::parse("11"));
    CHECK(outcomes[0].probability == doctest::Approx(0.5));

    const auto plus = qubits({kRootHalf, kRootHalf});
    const auto halves = measure(plus, SubsetIndex::all(1), BasisSpec::computational(1));
    REQUIRE(halves.size() == 2);
    CHECK(halves[1].probability == doctest::Approx(0.5));
    CHECK_THROWS_AS(measure_outcome(epr, SubsetIndex::all(2), BasisSpec::computational(2), SymbolString::parse("01")),
                    PreconditionError);

    // H^theta |x> measured in theta gives x with certainty.
    for (std::uint64_t x = 0; x < 8; ++x)
        for (std::uint64_t th = 0; th < 8; ++th) {
            const BasisSpec theta(unpack_bits(th, 3));
            const auto prepared = apply_basis_change(PureState::basis({2, 2, 2, 1}, x), theta);
            const auto result = measure(prepared, SubsetIndex::all(3), theta);
            REQUIRE(result.size() == 1);
            CHECK(result[0].outcome.index() == x);
            CHECK(result[0].probability == doctest::Approx(1.0));
        }
}

TEST_CASE("measurement completeness: mixing outcomes gives the dephased state") {
    Rng rng(15);
    for (int trial = 0; trial < 40; ++trial) {
        const auto state = random_pure_state({2, 2, 2, 2}, rng);
        const SubsetIndex positions(trial % 2 ? std::vector<int>{0, 2} : std::vector<int>{1}, 3);
        const BasisSpec basis(rng.random_bits(3));
        Matrix mixed = Matrix::Zero(static_cast<Eigen::Index>(state.dimension()), static_cast<Eigen::Index>(state.dimension()));
        double total = 0.0;
        for (const auto& o : measure(state, positions, basis)) {
            total += o.probability;
            mixed += o.probability * (o.post_state.amplitudes() * o.post_state.amplitudes().adjoint());
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        const auto dephased = dephase(projector(state), positions, basis);
        CHECK((mixed - dephased.matrix()).norm() <= 1e-10);
    }
}

TEST_CASE("CNOT identities") {
    std::pair<int, int> pair{0, 1};
    const std::span<const std::pair<int, int>> pairs(&pair, 1);
    const Dims dims{2, 2, 1};
    CHECK(close(apply_cnot_pairs(PureState::basis(dims, 2), pairs).amplitudes(), PureState::basis(dims, 3).amplitudes()));
    CHECK(close(apply_cnot_pairs(PureState::basis(dims, 0), pairs).amplitudes(), PureState::basis(dims, 0).amplitudes()));
    const BasisSpec had = BasisSpec::hadamard(2);
    for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c) {
            const auto in = apply_basis_change(PureState::basis(dims, static_cast<std::size_t>(2 * b + c)), had);
            const auto direct = apply_cnot_pairs(PureState::basis(dims, static_cast<std::size_t>(2 * b + c)), pairs);
            CHECK(close(direct.amplitudes(), PureState::basis(dims, static_cast<std::size_t>(2 * b + (b ^ c))).amplitudes()));
            const auto out = apply_basis_change(PureState::basis(dims, static_cast<std::size_t>(2 * (b ^ c) + c)), had);
            CHECK(close(apply_cnot_pairs(in, pairs).amplitudes(), out.amplitudes()));
        }
    std::pair<int, int> overlapping[2] = {{0, 1}, {1, 2}};
    CHECK_THROWS_AS(apply_cnot_pairs(PureState::basis({2, 2, 2, 1}, 0), overlapping), PreconditionError);

    Rng rng(16);
    std::pair<int, int> two[2] = {{0, 2}, {3, 1}};
    for (int trial = 0; trial < 20; ++trial) {
        const auto s = random_pure_state({2, 2, 2, 2, 3}, rng);
        const auto twice = apply_cnot_pairs(apply_cnot_pairs(s, two), two);
        CHECK(close(twice.amplitudes(), s.amplitudes(), 1e-10));
        CHECK(apply_cnot_pairs(s, two).amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("EPR pairs") {
    const auto one = make_epr_pairs(1);
    CHECK(one.amplitudes()[0].real() == doctest::Approx(kRootHalf));
    CHECK(one.amplitudes()[3].real() == doctest::Approx(kRootHalf));
    CHECK(std::abs(one.amplitudes()[1]) == 0.0);
    const auto two = make_epr_pairs(2);
    int terms = 0;
    for (std::uint64_t i = 0; i < 16; ++i) {
        if (std::abs(two.amplitudes()[static_cast<Eigen::Index>(i)]) > 0) {
            ++terms;
            CHECK((i >> 2) == (i & 3));
            CHECK(two.amplitudes()[static_cast<Eigen::Index>(i)].real() == doctest::Approx(0.5));
        }
    }
    CHECK(terms == 4);
    CHECK(make_epr_pairs(4).amplitudes().norm() == doctest::Approx(1.0));
}

TEST_CASE("random constructions are valid") {
    Rng rng(17);
    for (int d = 1; d <= 6; ++d) CHECK(is_unitary(random_unitary(d, rng)));
    const auto rho = random_density_matrix({2, 4}, rng);
    CHECK(rho.matrix().trace().real() == doctest::Approx(1.0));
    CHECK(min_eigenvalue_hermitian(rho.matrix()) >= -1e-9);
    CHECK(kron(hadamard_gate(), pauli_x()).rows() == 4);
}

TEST_CASE("qudit populations support computational operations only") {
    const auto q = PureState::from_string(SymbolString::parse("21", 3));
    CHECK(q.population_dim() == 3);
    const auto out = measure(q, SubsetIndex::all(2), BasisSpec::computational(2));
    REQUIRE(out.size() == 1);
    CHECK(out[0].outcome == SymbolString::parse("21", 3));
    CHECK_THROWS_AS(apply_basis_change(q, BasisSpec::hadamard(2)), PreconditionError);
}
