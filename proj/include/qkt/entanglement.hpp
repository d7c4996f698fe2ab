#pragma once

#include <Eigen/Dense>

#include "qkt/spin.hpp"

namespace qkt {

/// <J_a> and <J_a J_b + J_b J_a> for a, b in {x, y, z}.
struct CollectiveMoments {
  Eigen::Vector3d first;
  Eigen::Matrix3d second;
};

CollectiveMoments collective_moments(const StateVector& state, const SpinSystem& sys);

/// Single-qubit marginal of a symmetric state. |0> is spin up along z.
struct OneQubitRDM {
  Eigen::Matrix2cd rho;
};

/// Two-qubit marginal in the basis |00>, |01>, |10>, |11>.
struct TwoQubitRDM {
  Eigen::Matrix4cd rho;
};

/// rho_1 = (I + sum_a s_a sigma_a) / 2 with s_a = 2 <J_a> / N.
OneQubitRDM reduce_one_qubit(const StateVector& state, const SpinSystem& sys);

/// rho_12 = (1/4)[I + sum_a s_a (sigma_a x I + I x sigma_a) + sum_ab T_ab sigma_a x sigma_b],
/// T_ab = (2 <J_a J_b + J_b J_a> - N delta_ab) / (N (N - 1)). Throws NTooSmall for N < 2.
TwoQubitRDM reduce_two_qubit(const StateVector& state, const SpinSystem& sys);

/// Partial trace over the second qubit.
OneQubitRDM trace_out_second(const TwoQubitRDM& rho12);

/// Q = 2 - 2 tr(rho_1^2); every single-qubit marginal of a symmetric state
/// is the same, so the average over qubits collapses to one term.
double bipartite_q(const OneQubitRDM& rho1);
double bipartite_q(const StateVector& state, const SpinSystem& sys);

/// Sum of |negative eigenvalues| of the partial transpose over qubit 2.
double negativity(const TwoQubitRDM& rho12);

/// Wootters concurrence max(0, l1 - l2 - l3 - l4).
///
/// The l_i are evaluated as singular values of sqrt(rho) (sy x sy) sqrt(rho)^*,
/// which equal the square roots of the eigenvalues of
/// rho (sy x sy) rho^* (sy x sy) without taking square roots of round-off.
/// Eigenvalues of rho below 1e-14 are treated as zero when forming sqrt(rho).
double concurrence(const TwoQubitRDM& rho12);

/// Binary entropy (base 2), H(0) = H(1) = 0.
double binary_entropy(double x);

double eof_from_concurrence(double c);
double entanglement_of_formation(const TwoQubitRDM& rho12);

struct EntanglementReport {
  double q = 0.0;
  double negativity = 0.0;
  double concurrence = 0.0;
  double eof = 0.0;
};

EntanglementReport entanglement_report(const StateVector& state, const SpinSystem& sys);

}  // namespace qkt
