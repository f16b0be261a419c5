#pragma once

#include "zeno/core.hpp"

namespace zeno {

/// Correlation measures of a two-qubit state, in bits (concurrence dimensionless).
struct CorrelationRecord {
    double concurrence = 0.0;
    double mutual_info = 0.0;
    double classical = 0.0;
    double discord = 0.0;
};

/// -sum lambda log2 lambda over the eigenvalues of a Hermitian density matrix.
/// Throws InvalidParameter for non-Hermitian input.
double von_neumann_entropy(const Eigen::MatrixXcd& rho);

/// Binary entropy in bits, h(0) = h(1) = 0.
double binary_entropy(double p);

double concurrence(const XStateDensity& x);
double mutual_information(const XStateDensity& x);

/// Classical correlations obtained by measuring qubit 2 in its energy basis.
/// Depends only on the excited populations.
double classical_closed(double p10, double p01);

/// Closed-form discord I - classical_closed for pure-branch states,
/// |c1|^2 log2(1 + |c2|^2/|c1|^2) + |c2|^2 log2(1 + |c1|^2/|c2|^2).
double discord_closed(double p10, double p01);

/// S(rho_1) - sum_k p_k S(rho_k) for the projective measurement on qubit 2 along
/// |a> = cos(theta)|0> + e^{i phi} sin(theta)|1>, |b> orthogonal.
double classical_measurement_value(const XStateDensity& x, double theta, double phi);

struct ClassicalOptimum {
    double value = 0.0;
    double theta = 0.0;
    double phi = 0.0;
};

/// Brute-force maximum of classical_measurement_value over theta in [0, pi/2],
/// phi in [0, 2 pi) on a grid x grid lattice, then golden-section refinement
/// of the argmax to 1e-8. Ties go to the lowest theta, then the lowest phi.
ClassicalOptimum classical_optimized(const XStateDensity& x, int grid = 64);

/// Mutual information minus classical_closed.
double discord(const XStateDensity& x);

/// Concurrence, mutual information, classical correlations (energy-basis
/// measurement on qubit 2) and the corresponding discord.
CorrelationRecord correlation_record(const XStateDensity& x);

}  // namespace zeno
