#pragma once

#include <string>
#include <vector>

#include "qsample/quantum.hpp"

namespace qsample {

enum class AdversaryKind { None, InterceptResend, EntanglingProbe, CustomUnitary };
enum class BasisPolicy { Random, Computational, Hadamard };

std::string to_string(AdversaryKind kind);
AdversaryKind parse_adversary_kind(const std::string& name);
std::string to_string(BasisPolicy policy);
BasisPolicy parse_basis_policy(const std::string& name);

// Concrete attacks. In QKD every attack is a two-qubit unitary on the transit
// qubit and a fresh probe qubit |0>, applied to the first `probe_qubits`
// positions (0 means all). In QOT the fields describe dishonest Bob.
struct AdversaryModel {
    AdversaryKind kind = AdversaryKind::None;
    BasisPolicy basis_policy = BasisPolicy::Random;
    int probe_qubits = 0;
    // Entangling probe: controlled-RY(2 angle) from the transit qubit onto the probe.
    double probe_angle = 0.0;
    // Custom attack on (transit, probe); must be a 4 x 4 unitary.
    Matrix unitary;

    // QOT: positions whose openings Bob answers from a flipped string.
    std::vector<int> lie_positions;
    // QOT: Bob measures nothing and commits to uniform guesses.
    bool commit_guesses = false;

    void validate() const;
    int probed_positions(int n) const;
};

// Unitary on (transit, probe) for one position; `label` is Eve's basis bit
// for intercept-resend and ignored otherwise.
Matrix attack_unitary(const AdversaryModel& adversary, int label);
Matrix controlled_ry(double angle);
// (H^b x I) CNOT (H^b x I): copies the transit qubit's basis-b value into the probe.
Matrix basis_copy(int basis);

}  // namespace qsample
