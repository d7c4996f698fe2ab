#pragma once

#include <complex>

#include <Eigen/Dense>

namespace qkt {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Dense state in the Dicke basis, ordered m = j, j-1, ..., -j.
using StateVector = Eigen::VectorXcd;

/// N qubits restricted to the permutation-symmetric sector: total spin
/// j = N/2, basis |j,m> with m = j, j-1, ..., -j (index i <-> m = j - i).
class SpinSystem {
 public:
  explicit SpinSystem(int n_qubits);

  int n_qubits() const { return n_; }
  double j() const { return 0.5 * n_; }
  int dim() const { return n_ + 1; }

  /// Magnetic quantum number of basis index i.
  double m(int index) const { return j() - index; }

  friend bool operator==(const SpinSystem&, const SpinSystem&) = default;

 private:
  int n_;
};

struct JOperators {
  ComplexMatrix x;
  ComplexMatrix y;
  ComplexMatrix z;
};

JOperators build_j_operators(const SpinSystem& sys);

/// exp(-i s H) for Hermitian H, through its eigendecomposition.
/// Throws InvalidArgument when max|H - H^dagger| exceeds 1e-10.
ComplexMatrix hermitian_exponential(const ComplexMatrix& h, double s);

/// R(theta, phi) = exp{ i theta [Jx sin(phi) - Jy cos(phi)] }.
/// Requires 0 <= theta <= pi and -pi <= phi <= pi.
ComplexMatrix rotation_operator(const SpinSystem& sys, double theta, double phi);

/// Spin coherent state |theta, phi> = R(theta, phi)|j, j>, whose Bloch
/// vector is (sin(theta)cos(phi), sin(theta)sin(phi), cos(theta)).
///
/// Evaluated in closed form from the single-qubit image
/// R|up> = (cos(theta/2), e^{i phi} sin(theta/2)) raised to the N-th tensor
/// power, which is exact for collective rotations.
StateVector coherent_state(const SpinSystem& sys, double theta, double phi);

/// Throws InvalidArgument unless theta in [0, pi] and phi in [-pi, pi].
void check_sphere_angles(double theta, double phi);

}  // namespace qkt
