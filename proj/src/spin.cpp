#include "qkt/spin.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qkt/error.hpp"

namespace qkt {

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kAngleSlack = 1e-12;

}  // namespace

SpinSystem::SpinSystem(int n_qubits) : n_(n_qubits) {
  if (n_qubits < 1) {
    throw InvalidArgument("SpinSystem needs at least one qubit, got " + std::to_string(n_qubits));
  }
}

JOperators build_j_operators(const SpinSystem& sys) {
  const int d = sys.dim();
  const double j = sys.j();
  ComplexMatrix jp = ComplexMatrix::Zero(d, d);
  // <j, m+1 | J+ | j, m> sits one row above the diagonal with this ordering.
  for (int i = 1; i < d; ++i) {
    const double m = sys.m(i);
    jp(i - 1, i) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
  }
  const ComplexMatrix jm = jp.adjoint();

  JOperators ops;
  ops.x = 0.5 * (jp + jm);
  ops.y = Complex(0.0, -0.5) * (jp - jm);
  ops.z = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) ops.z(i, i) = sys.m(i);
  return ops;
}

ComplexMatrix hermitian_exponential(const ComplexMatrix& h, double s) {
  if (h.rows() != h.cols()) throw InvalidArgument("hermitian_exponential: matrix is not square");
  const double asym = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermitianTol) {
    throw InvalidArgument("hermitian_exponential: input is not Hermitian (max asymmetry " +
                          std::to_string(asym) + ")");
  }
  const Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (h + h.adjoint()));
  const Eigen::VectorXd& w = es.eigenvalues();
  const ComplexMatrix& v = es.eigenvectors();
  Eigen::VectorXcd phases(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) phases(i) = std::polar(1.0, -s * w(i));
  return v * phases.asDiagonal() * v.adjoint();
}

void check_sphere_angles(double theta, double phi) {
  using std::numbers::pi;
  if (!(theta >= -kAngleSlack && theta <= pi + kAngleSlack)) {
    throw InvalidArgument("theta out of [0, pi]: " + std::to_string(theta));
  }
  if (!(phi >= -pi - kAngleSlack && phi <= pi + kAngleSlack)) {
    throw InvalidArgument("phi out of [-pi, pi]: " + std::to_string(phi));
  }
}

ComplexMatrix rotation_operator(const SpinSystem& sys, double theta, double phi) {
  check_sphere_angles(theta, phi);
  const JOperators ops = build_j_operators(sys);
  const ComplexMatrix generator = std::sin(phi) * ops.x - std::cos(phi) * ops.y;
  // exp(+i theta G) == exp(-i s G) with s = -theta.
  return hermitian_exponential(generator, -theta);
}

StateVector coherent_state(const SpinSystem& sys, double theta, double phi) {
  check_sphere_angles(theta, phi);
  const int n = sys.n_qubits();
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const double log_nfact = std::lgamma(n + 1.0);

  StateVector psi(sys.dim());
  for (int down = 0; down <= n; ++down) {
    const int up = n - down;
    // sqrt(binomial(n, down)) * c^up * s^down, assembled in log space where
    // possible so that large N neither overflows nor loses the tails early.
    const double log_binom = log_nfact - std::lgamma(up + 1.0) - std::lgamma(down + 1.0);
    double mag = std::exp(0.5 * log_binom);
    mag *= (up == 0) ? 1.0 : std::pow(c, up);
    mag *= (down == 0) ? 1.0 : std::pow(s, down);
    psi(down) = std::polar(mag, down * phi);
  }
  return psi;
}

}  // namespace qkt
