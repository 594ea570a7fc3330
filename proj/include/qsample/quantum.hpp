#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qsample/common.hpp"
#include "qsample/symbols.hpp"

namespace qsample {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

// Subsystems are ordered population first, environment last. Index arithmetic
// is big-endian: subsystem 0 is the most significant digit.
using Dims = std::vector<int>;

std::size_t total_dimension(const Dims& dims);

class PureState {
public:
    PureState(Vector amplitudes, Dims dims);
    // Computational basis vector `index` of the given dims.
    static PureState basis(const Dims& dims, std::size_t index);
    // Population string q tensored with a trivial environment.
    static PureState from_string(const SymbolString& q);

    const Vector& amplitudes() const { return amplitudes_; }
    const Dims& dims() const { return dims_; }
    int population_size() const { return static_cast<int>(dims_.size()) - 1; }
    int population_dim() const;
    std::size_t population_states() const;
    int env_dim() const { return dims_.back(); }
    std::size_t dimension() const { return static_cast<std::size_t>(amplitudes_.size()); }

private:
    Vector amplitudes_;
    Dims dims_;
};

class DensityMatrix {
public:
    DensityMatrix(Matrix matrix, Dims dims);
    static DensityMatrix from_pure(const PureState& state);
    static DensityMatrix maximally_mixed(const Dims& dims);

    const Matrix& matrix() const { return matrix_; }
    const Dims& dims() const { return dims_; }
    std::size_t dimension() const { return static_cast<std::size_t>(matrix_.rows()); }

private:
    Matrix matrix_;
    Dims dims_;
};

// Per-position basis choice: 0 computational, 1 Hadamard.
class BasisSpec {
public:
    BasisSpec() = default;
    explicit BasisSpec(Bits theta);
    static BasisSpec computational(int n) { return BasisSpec(Bits(static_cast<std::size_t>(n), 0)); }
    static BasisSpec hadamard(int n) { return BasisSpec(Bits(static_cast<std::size_t>(n), 1)); }
    static BasisSpec parse(const std::string& text) { return BasisSpec(bits_from_string(text)); }

    const Bits& theta() const { return theta_; }
    std::size_t size() const { return theta_.size(); }
    std::uint8_t operator[](std::size_t i) const { return theta_[i]; }
    int weight() const;

    friend bool operator==(const BasisSpec&, const BasisSpec&) = default;

private:
    Bits theta_;
};

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);
// Trace norm of a Hermitian matrix via its eigenvalues.
double trace_norm_hermitian(const Matrix& m);
double min_eigenvalue_hermitian(const Matrix& m);
// sqrt(1 - |<phi|psi>|^2).
double pure_trace_distance(const PureState& phi, const PureState& psi);

// Keeps the listed subsystems (universe = number of subsystems). If the last
// subsystem is traced out, a trivial environment is appended to the result.
DensityMatrix partial_trace(const DensityMatrix& rho, const SubsetIndex& keep);

// Applies a single-subsystem operator to subsystem `position`.
Vector apply_local(const Vector& amplitudes, const Dims& dims, int position, const Matrix& op);
// Applies an operator on two subsystems; `op` acts on (first, second) in that order.
Vector apply_two_local(const Vector& amplitudes, const Dims& dims, int first, int second, const Matrix& op);

// Kronecker product a (x) b.
Matrix kron(const Matrix& a, const Matrix& b);

const Matrix& hadamard_gate();
const Matrix& pauli_x();

// H on every population position with theta = 1 (binary population only).
PureState apply_basis_change(const PureState& state, const BasisSpec& basis);
PureState apply_cnot_pairs(const PureState& state, std::span<const std::pair<int, int>> pairs);

struct MeasurementOutcome {
    SymbolString outcome;
    double probability = 0.0;
    PureState post_state;
};

// Outcomes with non-zero probability of measuring `positions` in basis theta.
std::vector<MeasurementOutcome> measure(const PureState& state, const SubsetIndex& positions, const BasisSpec& basis);
// A single branch; throws if its probability vanishes.
MeasurementOutcome measure_outcome(const PureState& state, const SubsetIndex& positions, const BasisSpec& basis,
                                   const SymbolString& outcome);
// Measurement of `positions` in basis theta with the outcomes forgotten.
DensityMatrix dephase(const DensityMatrix& rho, const SubsetIndex& positions, const BasisSpec& basis);

// n EPR pairs ordered (A_1..A_n, B_1..B_n) with a trivial environment.
PureState make_epr_pairs(int n);

// Replaces the environment by `env` (joint state |psi> tensor |env>).
PureState tensor_environment(const PureState& state, const Vector& env);

PureState random_pure_state(const Dims& dims, Rng& rng);
DensityMatrix random_density_matrix(const Dims& dims, Rng& rng);
Matrix random_unitary(int dim, Rng& rng);
bool is_unitary(const Matrix& u, double tolerance = kNormTolerance);

}  // namespace qsample
