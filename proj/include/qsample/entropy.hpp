#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "qsample/cq_state.hpp"
#include "qsample/quantum.hpp"

namespace qsample {

double binary_entropy(double p);

// h(beta + delta) * n, the log of the Hamming-ball size bound.
double hamming_ball_log_bound(double beta, double delta, int n);
// log2 sum_{w <= (beta + delta) n} C(n, w), exact for n <= 60.
double hamming_ball_log_count(double beta, double delta, int n);

// H_min(X|Y) = -log2 sum_y max_x P(x, y); joint(x, y) with one column per y value.
double min_entropy_classical_side(const Eigen::MatrixXd& joint);

struct EntropyCertificate {
    double h = 0.0;
    DensityMatrix sigma;
};

// Minimum eigenvalue of 2^-h I (x) sigma - rho_XE.
double certificate_min_eigenvalue(const CqState& rho, const EntropyCertificate& cert);
bool check_certificate(const CqState& rho, const EntropyCertificate& cert);

// Measures the population in `basis`; X is the outcome index, E the environment.
CqState measure_to_cq(const PureState& state, const BasisSpec& basis);

struct Lemma2Report {
    double min_eig = 0.0;
    bool holds = false;
};

// Checks |J| rho_mix - rho is PSD for the measured state and its dephased mixture.
Lemma2Report lemma2_operator_check(const PureState& phi, const std::vector<std::uint64_t>& support,
                                   const BasisSpec& measurement_basis);

// weight(theta) - h(beta + delta) * n.
double corollary1_bound(const BasisSpec& theta, double beta, double delta, int n);

}  // namespace qsample
