#include "qsample/adversary.hpp"

#include <cmath>

namespace qsample {

std::string to_string(AdversaryKind kind) {
    switch (kind) {
        case AdversaryKind::None: return "none";
        case AdversaryKind::InterceptResend: return "intercept-resend";
        case AdversaryKind::EntanglingProbe: return "entangling-probe";
        case AdversaryKind::CustomUnitary: return "custom-unitary";
    }
    return "none";
}

AdversaryKind parse_adversary_kind(const std::string& name) {
    for (auto kind : {AdversaryKind::None, AdversaryKind::InterceptResend, AdversaryKind::EntanglingProbe,
                      AdversaryKind::CustomUnitary})
        if (to_string(kind) == name) return kind;
    throw PreconditionError("unknown adversary kind '" + name + "'");
}

std::string to_string(BasisPolicy policy) {
    switch (policy) {
        case BasisPolicy::Random: return "random";
        case BasisPolicy::Computational: return "computational";
        case BasisPolicy::Hadamard: return "hadamard";
    }
    return "random";
}

BasisPolicy parse_basis_policy(const std::string& name) {
    for (auto policy : {BasisPolicy::Random, BasisPolicy::Computational, BasisPolicy::Hadamard})
        if (to_string(policy) == name) return policy;
    throw PreconditionError("unknown basis policy '" + name + "'");
}

void AdversaryModel::validate() const {
    require(probe_qubits >= 0, "probe_qubits must be non-negative");
    if (kind == AdversaryKind::CustomUnitary) {
        require(unitary.rows() == 4 && unitary.cols() == 4, "custom attack must be a 4 x 4 matrix on (transit, probe)");
        require(is_unitary(unitary, 1e-10), "custom attack matrix is not unitary within 1e-10");
    }
}

int AdversaryModel::probed_positions(int n) const {
    if (kind == AdversaryKind::None) return 0;
    return probe_qubits == 0 || probe_qubits > n ? n : probe_qubits;
}

Matrix controlled_ry(double angle) {
    Matrix u = Matrix::Identity(4, 4);
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    u(2, 2) = c;
    u(2, 3) = -s;
    u(3, 2) = s;
    u(3, 3) = c;
    return u;
}

Matrix basis_copy(int basis) {
    Matrix cnot = Matrix::Zero(4, 4);
    cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
    if (basis == 0) return cnot;
    const Matrix local = kron(hadamard_gate(), Matrix::Identity(2, 2));
    return local * cnot * local;
}

Matrix attack_unitary(const AdversaryModel& adversary, int label) {
    switch (adversary.kind) {
        case AdversaryKind::None: return Matrix::Identity(4, 4);
        case AdversaryKind::InterceptResend: return basis_copy(label);
        case AdversaryKind::EntanglingProbe: return controlled_ry(adversary.probe_angle);
        case AdversaryKind::CustomUnitary: return adversary.unitary;
    }
    return Matrix::Identity(4, 4);
}

}  // namespace qsample
