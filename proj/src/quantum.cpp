#include "qsample/quantum.hpp"

#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace qsample {

namespace {

std::size_t stride_after(const Dims& dims, int position) {
    std::size_t stride = 1;
    for (std::size_t i = static_cast<std::size_t>(position) + 1; i < dims.size(); ++i)
        stride *= static_cast<std::size_t>(dims[i]);
    return stride;
}

int digit(std::size_t index, const Dims& dims, int position) {
    return static_cast<int>((index / stride_after(dims, position)) % static_cast<std::size_t>(dims[static_cast<std::size_t>(position)]));
}

void require_binary_population(const Dims& dims) {
    for (std::size_t i = 0; i + 1 < dims.size(); ++i)
        require(dims[i] == 2, "Hadamard-basis operations need a binary (qubit) population");
}

// U M U^dagger for U acting locally on one subsystem.
Matrix conjugate_local(const Matrix& m, const Dims& dims, int position, const Matrix& op) {
    Matrix left(m.rows(), m.cols());
    for (Eigen::Index c = 0; c < m.cols(); ++c) left.col(c) = apply_local(m.col(c), dims, position, op);
    Matrix adjoint = left.adjoint();
    Matrix right(m.rows(), m.cols());
    for (Eigen::Index c = 0; c < adjoint.cols(); ++c) right.col(c) = apply_local(adjoint.col(c), dims, position, op);
    return right.adjoint();
}

Matrix conjugate_basis_change(Matrix m, const Dims& dims, const SubsetIndex& positions, const BasisSpec& basis) {
    for (int p : positions.positions())
        if (basis[static_cast<std::size_t>(p)] == 1) m = conjugate_local(m, dims, p, hadamard_gate());
    return m;
}

Vector rotate(Vector v, const Dims& dims, const SubsetIndex& positions, const BasisSpec& basis) {
    for (int p : positions.positions())
        if (basis[static_cast<std::size_t>(p)] == 1) v = apply_local(v, dims, p, hadamard_gate());
    return v;
}

void check_measurement_args(const PureState& state, const SubsetIndex& positions, const BasisSpec& basis) {
    require(positions.universe() == state.population_size(), "measured positions must index the population");
    require(static_cast<int>(basis.size()) == state.population_size(), "basis length must match the population size");
    for (int p : positions.positions())
        if (basis[static_cast<std::size_t>(p)] == 1) require_binary_population(state.dims());
}

std::uint64_t outcome_code(std::size_t index, const Dims& dims, const SubsetIndex& positions) {
    std::uint64_t code = 0;
    for (int p : positions.positions())
        code = code * static_cast<std::uint64_t>(dims[static_cast<std::size_t>(p)]) + static_cast<std::uint64_t>(digit(index, dims, p));
    return code;
}

MeasurementOutcome collapse(const PureState& state, const Vector& rotated, const SubsetIndex& positions,
                            const BasisSpec& basis, std::uint64_t code) {
    Vector projected = Vector::Zero(rotated.size());
    for (Eigen::Index i = 0; i < rotated.size(); ++i)
        if (outcome_code(static_cast<std::size_t>(i), state.dims(), positions) == code) projected[i] = rotated[i];
    const double probability = projected.squaredNorm();
    require(probability > 1e-14, "requested measurement branch has zero probability");
    projected = rotate(projected, state.dims(), positions, basis) / std::sqrt(probability);
    const int d = state.population_dim();
    return {SymbolString::from_index(code, positions.size(), d), probability, PureState(projected, state.dims())};
}

}  // namespace

std::size_t total_dimension(const Dims& dims) {
    std::size_t total = 1;
    for (int d : dims) total *= static_cast<std::size_t>(d);
    return total;
}

PureState::PureState(Vector amplitudes, Dims dims) : amplitudes_(std::move(amplitudes)), dims_(std::move(dims)) {
    require(!dims_.empty(), "dims must list at least the environment");
    for (int d : dims_) require(d >= 1, "subsystem dimensions must be positive");
    require(total_dimension(dims_) == static_cast<std::size_t>(amplitudes_.size()),
            "product of dims must equal the amplitude count");
    require(std::abs(amplitudes_.squaredNorm() - 1.0) <= kNormTolerance, "state vector must have unit norm");
    for (std::size_t i = 1; i + 1 < dims_.size(); ++i)
        require(dims_[i] == dims_[0], "population subsystems share one dimension");
}

PureState PureState::basis(const Dims& dims, std::size_t index) {
    Vector v = Vector::Zero(static_cast<Eigen::Index>(total_dimension(dims)));
    require(index < static_cast<std::size_t>(v.size()), "basis index out of range");
    v[static_cast<Eigen::Index>(index)] = 1.0;
    return PureState(std::move(v), dims);
}

PureState PureState::from_string(const SymbolString& q) {
    Dims dims(q.size(), q.alphabet());
    dims.push_back(1);
    return basis(dims, q.index());
}

int PureState::population_dim() const { return population_size() > 0 ? dims_.front() : 2; }

std::size_t PureState::population_states() const { return dimension() / static_cast<std::size_t>(env_dim()); }

DensityMatrix::DensityMatrix(Matrix matrix, Dims dims) : matrix_(std::move(matrix)), dims_(std::move(dims)) {
    require(!dims_.empty(), "dims must list at least the environment");
    require(matrix_.rows() == matrix_.cols(), "density matrix must be square");
    require(total_dimension(dims_) == static_cast<std::size_t>(matrix_.rows()), "product of dims must equal the matrix size");
    require((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() <= kNormTolerance, "density matrix must be Hermitian");
    require(std::abs(matrix_.trace().real() - 1.0) <= kNormTolerance, "density matrix must have unit trace");
    require(min_eigenvalue_hermitian(matrix_) >= -kPsdTolerance, "density matrix must be positive semidefinite");
}

DensityMatrix DensityMatrix::from_pure(const PureState& state) {
    return DensityMatrix(state.amplitudes() * state.amplitudes().adjoint(), state.dims());
}

DensityMatrix DensityMatrix::maximally_mixed(const Dims& dims) {
    const auto dim = static_cast<Eigen::Index>(total_dimension(dims));
    return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim), dims);
}

BasisSpec::BasisSpec(Bits theta) : theta_(std::move(theta)) {
    for (auto b : theta_) require(b <= 1, "basis bits must be 0 or 1");
}

int BasisSpec::weight() const { return std::accumulate(theta_.begin(), theta_.end(), 0); }

double trace_norm_hermitian(const Matrix& m) {
    if (m.rows() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().sum();
}

double min_eigenvalue_hermitian(const Matrix& m) {
    if (m.rows() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    require(rho.dims() == sigma.dims(), "trace distance needs matching dims");
    return 0.5 * trace_norm_hermitian(rho.matrix() - sigma.matrix());
}

double pure_trace_distance(const PureState& phi, const PureState& psi) {
    require(phi.dims() == psi.dims(), "trace distance needs matching dims");
    const double overlap = std::norm(phi.amplitudes().dot(psi.amplitudes()));
    return std::sqrt(std::max(0.0, 1.0 - overlap));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const SubsetIndex& keep) {
    const Dims& dims = rho.dims();
    const int count = static_cast<int>(dims.size());
    require(keep.universe() == count, "keep set must index the subsystems");
    Dims kept_dims;
    for (int p : keep.positions()) kept_dims.push_back(dims[static_cast<std::size_t>(p)]);
    const std::size_t kept_total = total_dimension(kept_dims);
    const std::size_t full = rho.dimension();
    const std::size_t rest_total = full / kept_total;

    // split[i] = (index within kept subsystems, index within traced subsystems)
    std::vector<std::pair<std::size_t, std::size_t>> split(full);
    for (std::size_t i = 0; i < full; ++i) {
        std::size_t kept = 0;
        std::size_t rest = 0;
        for (int p = 0; p < count; ++p) {
            const auto d = static_cast<std::size_t>(dims[static_cast<std::size_t>(p)]);
            const auto x = static_cast<std::size_t>(digit(i, dims, p));
            if (keep.contains(p)) {
                kept = kept * d + x;
            } else {
                rest = rest * d + x;
            }
        }
        split[i] = {kept, rest};
    }
    std::vector<std::vector<std::size_t>> by_rest(rest_total);
    for (std::size_t i = 0; i < full; ++i) by_rest[split[i].second].push_back(i);

    Matrix reduced = Matrix::Zero(static_cast<Eigen::Index>(kept_total), static_cast<Eigen::Index>(kept_total));
    const Matrix& m = rho.matrix();
    for (const auto& group : by_rest)
        for (std::size_t a : group)
            for (std::size_t b : group)
                reduced(static_cast<Eigen::Index>(split[a].first), static_cast<Eigen::Index>(split[b].first)) +=
                    m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));

    if (!keep.contains(count - 1)) kept_dims.push_back(1);
    if (kept_dims.empty()) kept_dims.push_back(1);
    reduced = 0.5 * (reduced + reduced.adjoint()).eval();
    return DensityMatrix(std::move(reduced), std::move(kept_dims));
}

Vector apply_local(const Vector& amplitudes, const Dims& dims, int position, const Matrix& op) {
    const auto d = static_cast<std::size_t>(dims[static_cast<std::size_t>(position)]);
    require(op.rows() == static_cast<Eigen::Index>(d) && op.cols() == static_cast<Eigen::Index>(d),
            "local operator dimension does not match the subsystem");
    const std::size_t stride = stride_after(dims, position);
    const std::size_t block = d * stride;
    const auto total = static_cast<std::size_t>(amplitudes.size());
    Vector out(amplitudes.size());
    Vector slice(static_cast<Eigen::Index>(d));
    for (std::size_t outer = 0; outer < total; outer += block) {
        for (std::size_t inner = 0; inner < stride; ++inner) {
            for (std::size_t a = 0; a < d; ++a) slice[static_cast<Eigen::Index>(a)] = amplitudes[static_cast<Eigen::Index>(outer + a * stride + inner)];
            const Vector mapped = op * slice;
            for (std::size_t a = 0; a < d; ++a) out[static_cast<Eigen::Index>(outer + a * stride + inner)] = mapped[static_cast<Eigen::Index>(a)];
        }
    }
    return out;
}

Vector apply_two_local(const Vector& amplitudes, const Dims& dims, int first, int second, const Matrix& op) {
    require(first != second, "two-subsystem operators need distinct subsystems");
    const auto d1 = static_cast<std::size_t>(dims[static_cast<std::size_t>(first)]);
    const auto d2 = static_cast<std::size_t>(dims[static_cast<std::size_t>(second)]);
    require(op.rows() == static_cast<Eigen::Index>(d1 * d2) && op.cols() == op.rows(),
            "two-subsystem operator dimension does not match");
    const std::size_t s1 = stride_after(dims, first);
    const std::size_t s2 = stride_after(dims, second);
    const auto total = static_cast<std::size_t>(amplitudes.size());
    Vector out = amplitudes;
    Vector slice(static_cast<Eigen::Index>(d1 * d2));
    for (std::size_t base = 0; base < total; ++base) {
        if (digit(base, dims, first) != 0 || digit(base, dims, second) != 0) continue;
        for (std::size_t a = 0; a < d1; ++a)
            for (std::size_t b = 0; b < d2; ++b)
                slice[static_cast<Eigen::Index>(a * d2 + b)] = amplitudes[static_cast<Eigen::Index>(base + a * s1 + b * s2)];
        const Vector mapped = op * slice;
        for (std::size_t a = 0; a < d1; ++a)
            for (std::size_t b = 0; b < d2; ++b)
                out[static_cast<Eigen::Index>(base + a * s1 + b * s2)] = mapped[static_cast<Eigen::Index>(a * d2 + b)];
    }
    return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

const Matrix& hadamard_gate() {
    static const Matrix h = [] {
        Matrix m(2, 2);
        const double r = 1.0 / std::sqrt(2.0);
        m << r, r, r, -r;
        return m;
    }();
    return h;
}

const Matrix& pauli_x() {
    static const Matrix x = [] {
        Matrix m(2, 2);
        m << 0, 1, 1, 0;
        return m;
    }();
    return x;
}

PureState apply_basis_change(const PureState& state, const BasisSpec& basis) {
    require(static_cast<int>(basis.size()) == state.population_size(), "basis length must match the population size");
    if (basis.weight() > 0) require_binary_population(state.dims());
    return PureState(rotate(state.amplitudes(), state.dims(), SubsetIndex::all(state.population_size()), basis),
                     state.dims());
}

PureState apply_cnot_pairs(const PureState& state, std::span<const std::pair<int, int>> pairs) {
    require_binary_population(state.dims());
    std::vector<bool> used(static_cast<std::size_t>(state.population_size()), false);
    for (auto [control, target] : pairs) {
        require(control >= 0 && control < state.population_size() && target >= 0 && target < state.population_size(),
                "CNOT qubits must be population subsystems");
        require(control != target && !used[static_cast<std::size_t>(control)] && !used[static_cast<std::size_t>(target)],
                "CNOT pairs must be disjoint");
        used[static_cast<std::size_t>(control)] = used[static_cast<std::size_t>(target)] = true;
    }
    Matrix cnot = Matrix::Zero(4, 4);
    cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
    Vector v = state.amplitudes();
    for (auto [control, target] : pairs) v = apply_two_local(v, state.dims(), control, target, cnot);
    return PureState(std::move(v), state.dims());
}

std::vector<MeasurementOutcome> measure(const PureState& state, const SubsetIndex& positions, const BasisSpec& basis) {
    check_measurement_args(state, positions, basis);
    const Vector rotated = rotate(state.amplitudes(), state.dims(), positions, basis);
    std::vector<double> weights(static_cast<std::size_t>(std::pow(state.population_dim(), positions.size()) + 0.5), 0.0);
    for (Eigen::Index i = 0; i < rotated.size(); ++i)
        weights[outcome_code(static_cast<std::size_t>(i), state.dims(), positions)] += std::norm(rotated[i]);
    std::vector<MeasurementOutcome> outcomes;
    for (std::size_t code = 0; code < weights.size(); ++code)
        if (weights[code] > 1e-14) outcomes.push_back(collapse(state, rotated, positions, basis, code));
    return outcomes;
}

MeasurementOutcome measure_outcome(const PureState& state, const SubsetIndex& positions, const BasisSpec& basis,
                                   const SymbolString& outcome) {
    check_measurement_args(state, positions, basis);
    require(static_cast<int>(outcome.size()) == positions.size(), "outcome length must match the measured positions");
    const Vector rotated = rotate(state.amplitudes(), state.dims(), positions, basis);
    return collapse(state, rotated, positions, basis, outcome.index());
}

DensityMatrix dephase(const DensityMatrix& rho, const SubsetIndex& positions, const BasisSpec& basis) {
    const Dims& dims = rho.dims();
    require(positions.universe() == static_cast<int>(dims.size()) - 1, "dephased positions must index the population");
    require(basis.size() + 1 == dims.size(), "basis length must match the population size");
    for (int p : positions.positions())
        if (basis[static_cast<std::size_t>(p)] == 1) require_binary_population(dims);
    Matrix m = conjugate_basis_change(rho.matrix(), dims, positions, basis);
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            if (outcome_code(static_cast<std::size_t>(r), dims, positions) != outcome_code(static_cast<std::size_t>(c), dims, positions))
                m(r, c) = 0.0;
    m = conjugate_basis_change(m, dims, positions, basis);
    return DensityMatrix(0.5 * (m + m.adjoint()), dims);
}

PureState make_epr_pairs(int n) {
    require(n >= 1, "need at least one EPR pair");
    require(n <= 12, "at most 12 EPR pairs fit the statevector representation");
    Dims dims(static_cast<std::size_t>(2 * n), 2);
    dims.push_back(1);
    Vector v = Vector::Zero(static_cast<Eigen::Index>(total_dimension(dims)));
    const double amplitude = std::pow(2.0, -0.5 * n);
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) v[static_cast<Eigen::Index>((x << n) | x)] = amplitude;
    return PureState(std::move(v), std::move(dims));
}

PureState tensor_environment(const PureState& state, const Vector& env) {
    require(state.env_dim() == 1, "the state already carries an environment");
    Dims dims = state.dims();
    dims.back() = static_cast<int>(env.size());
    Vector v(static_cast<Eigen::Index>(state.dimension()) * env.size());
    for (Eigen::Index i = 0; i < state.amplitudes().size(); ++i) v.segment(i * env.size(), env.size()) = state.amplitudes()[i] * env;
    return PureState(std::move(v), std::move(dims));
}

PureState random_pure_state(const Dims& dims, Rng& rng) {
    Vector v(static_cast<Eigen::Index>(total_dimension(dims)));
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = Complex(rng.normal(), rng.normal());
    v.normalize();
    return PureState(std::move(v), dims);
}

DensityMatrix random_density_matrix(const Dims& dims, Rng& rng) {
    const auto dim = static_cast<Eigen::Index>(total_dimension(dims));
    Matrix g(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r)
        for (Eigen::Index c = 0; c < dim; ++c) g(r, c) = Complex(rng.normal(), rng.normal());
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix(0.5 * (rho + rho.adjoint()), dims);
}

Matrix random_unitary(int dim, Rng& rng) {
    Matrix g(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) g(r, c) = Complex(rng.normal(), rng.normal());
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int c = 0; c < dim; ++c) {
        const Complex diag = r(c, c);
        if (std::abs(diag) > 0) q.col(c) *= diag / std::abs(diag);
    }
    return q;
}

bool is_unitary(const Matrix& u, double tolerance) {
    if (u.rows() != u.cols()) return false;
    return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tolerance;
}

}  // namespace qsample
