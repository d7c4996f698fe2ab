#include "qkt/entanglement.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "qkt/error.hpp"

namespace qkt {

namespace {

constexpr double kRankTol = 1e-14;

const std::array<Eigen::Matrix2cd, 3>& paulis() {
  static const std::array<Eigen::Matrix2cd, 3> p = [] {
    std::array<Eigen::Matrix2cd, 3> s;
    s[0] << 0, 1, 1, 0;
    s[1] << 0, Complex(0, -1), Complex(0, 1), 0;
    s[2] << 1, 0, 0, -1;
    return s;
  }();
  return p;
}

Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

// J_x psi, J_y psi, J_z psi using the tridiagonal ladder structure.
std::array<Eigen::VectorXcd, 3> apply_j(const StateVector& psi, const SpinSystem& sys) {
  const int d = sys.dim();
  const double j = sys.j();
  Eigen::VectorXcd jp = Eigen::VectorXcd::Zero(d);  // J+ psi
  Eigen::VectorXcd jm = Eigen::VectorXcd::Zero(d);  // J- psi
  Eigen::VectorXcd jz(d);
  for (int i = 0; i < d; ++i) {
    const double m = sys.m(i);
    jz(i) = m * psi(i);
    if (i > 0) jp(i - 1) += std::sqrt(j * (j + 1.0) - m * (m + 1.0)) * psi(i);
    if (i + 1 < d) jm(i + 1) += std::sqrt(j * (j + 1.0) - m * (m - 1.0)) * psi(i);
  }
  return {0.5 * (jp + jm), Complex(0.0, -0.5) * (jp - jm), jz};
}

Eigen::Matrix4cd sqrt_psd(const Eigen::Matrix4cd& rho) {
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(0.5 * (rho + rho.adjoint()));
  Eigen::Vector4d s = es.eigenvalues();
  for (int i = 0; i < 4; ++i) s(i) = s(i) > kRankTol ? std::sqrt(s(i)) : 0.0;
  return es.eigenvectors() * s.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

CollectiveMoments collective_moments(const StateVector& state, const SpinSystem& sys) {
  if (state.size() != sys.dim()) {
    throw InvalidArgument("collective_moments: state has dimension " + std::to_string(state.size()) + ", expected " +
                          std::to_string(sys.dim()));
  }
  const auto js = apply_j(state, sys);
  CollectiveMoments out;
  for (int a = 0; a < 3; ++a) {
    out.first(a) = state.dot(js[a]).real();
    for (int b = 0; b < 3; ++b) {
      // <psi| Ja Jb |psi> = <Ja psi | Jb psi> for Hermitian Ja.
      out.second(a, b) = 2.0 * js[a].dot(js[b]).real();
    }
  }
  return out;
}

OneQubitRDM reduce_one_qubit(const StateVector& state, const SpinSystem& sys) {
  const CollectiveMoments mom = collective_moments(state, sys);
  const double n = sys.n_qubits();
  Eigen::Matrix2cd rho = Eigen::Matrix2cd::Identity();
  for (int a = 0; a < 3; ++a) rho += (2.0 * mom.first(a) / n) * paulis()[a];
  return {0.5 * rho};
}

TwoQubitRDM reduce_two_qubit(const StateVector& state, const SpinSystem& sys) {
  const int n_qubits = sys.n_qubits();
  if (n_qubits < 2) {
    throw NTooSmall("reduce_two_qubit needs N >= 2, got " + std::to_string(n_qubits));
  }
  const CollectiveMoments mom = collective_moments(state, sys);
  const double n = n_qubits;
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  const auto& s = paulis();

  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Identity();
  for (int a = 0; a < 3; ++a) {
    const double sa = 2.0 * mom.first(a) / n;
    rho += sa * (kron(s[a], id) + kron(id, s[a]));
  }
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      const double corr = (2.0 * mom.second(a, b) - (a == b ? n : 0.0)) / (n * (n - 1.0));
      rho += corr * kron(s[a], s[b]);
    }
  }
  return {0.25 * rho};
}

OneQubitRDM trace_out_second(const TwoQubitRDM& rho12) {
  Eigen::Matrix2cd r;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) r(a, b) = rho12.rho(2 * a, 2 * b) + rho12.rho(2 * a + 1, 2 * b + 1);
  return {r};
}

double bipartite_q(const OneQubitRDM& rho1) {
  return 2.0 - 2.0 * (rho1.rho * rho1.rho).trace().real();
}

double bipartite_q(const StateVector& state, const SpinSystem& sys) {
  return bipartite_q(reduce_one_qubit(state, sys));
}

double negativity(const TwoQubitRDM& rho12) {
  Eigen::Matrix4cd pt;
  // <a b| rho^{T_2} |c d> = <a d| rho |c b>
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) pt(2 * a + b, 2 * c + d) = rho12.rho(2 * a + d, 2 * c + b);
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(0.5 * (pt + pt.adjoint()), Eigen::EigenvaluesOnly);
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) sum += std::max(0.0, -es.eigenvalues()(i));
  return sum;
}

double concurrence(const TwoQubitRDM& rho12) {
  const Eigen::Matrix4cd yy = kron(paulis()[1], paulis()[1]);
  const Eigen::Matrix4cd root = sqrt_psd(rho12.rho);
  const Eigen::Matrix4cd b = root * yy * root.conjugate();
  const Eigen::JacobiSVD<Eigen::Matrix4cd> svd(b);
  const Eigen::Vector4d l = svd.singularValues();  // descending
  return std::max(0.0, l(0) - l(1) - l(2) - l(3));
}

double binary_entropy(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double eof_from_concurrence(double c) {
  if (!(c >= -1e-12 && c <= 1.0 + 1e-12)) {
    throw InvalidArgument("eof_from_concurrence: concurrence " + std::to_string(c) + " outside [0, 1]");
  }
  const double cc = std::clamp(c, 0.0, 1.0);
  // H is symmetric about 1/2; use the small root (1 - sqrt(1 - C^2)) / 2 in
  // cancellation-free form.
  return binary_entropy(cc * cc / (2.0 * (1.0 + std::sqrt(1.0 - cc * cc))));
}

double entanglement_of_formation(const TwoQubitRDM& rho12) { return eof_from_concurrence(concurrence(rho12)); }

EntanglementReport entanglement_report(const StateVector& state, const SpinSystem& sys) {
  const TwoQubitRDM rho12 = reduce_two_qubit(state, sys);
  EntanglementReport rep;
  rep.q = bipartite_q(state, sys);
  rep.negativity = negativity(rho12);
  rep.concurrence = concurrence(rho12);
  rep.eof = eof_from_concurrence(rep.concurrence);
  return rep;
}

}  // namespace qkt
