#include "qkt/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qkt/error.hpp"
#include "qkt/kernels.hpp"

namespace qkt {

namespace {

constexpr double kClusterTol = 1e-9;
constexpr double kResidualTol = 1e-8;

void check_dimension(const StateVector& v, const SpinSystem& sys, const char* where) {
  if (v.size() != sys.dim()) {
    throw InvalidArgument(std::string(where) + ": state has dimension " + std::to_string(v.size()) + ", expected " +
                          std::to_string(sys.dim()));
  }
}
constexpr double kImagTol = 1e-9;

using std::numbers::pi;

double wrap_quasi_energy(Complex lambda) {
  const double x = std::arg(lambda);
  return (x <= -pi) ? pi : x;
}

double circular_distance(double a, double b) {
  return std::abs(std::remainder(a - b, 2.0 * pi));
}

void modified_gram_schmidt(ComplexMatrix& v, const std::vector<Eigen::Index>& cols) {
  for (std::size_t a = 0; a < cols.size(); ++a) {
    auto ca = v.col(cols[a]);
    for (std::size_t b = 0; b < a; ++b) {
      const auto cb = v.col(cols[b]);
      ca -= cb.dot(ca) * cb;
    }
    ca.normalize();
  }
}

}  // namespace

FloquetOperator::FloquetOperator(SpinSystem sys, KickStrength k, double p, ComplexMatrix matrix)
    : sys_(sys), k_(k), p_(p), matrix_(std::move(matrix)) {}

FloquetOperator build_floquet(const SpinSystem& sys, KickStrength k, double p) {
  const JOperators ops = build_j_operators(sys);
  const ComplexMatrix rotation = hermitian_exponential(ops.y, p);
  const double j = sys.j();
  ComplexMatrix f = rotation;
  // Jz is diagonal, so the kick only rephases rows.
  for (int i = 0; i < sys.dim(); ++i) {
    const double m = sys.m(i);
    f.row(i) *= std::polar(1.0, -(k.value() / (2.0 * j)) * m * m);
  }
  return FloquetOperator(sys, k, p, std::move(f));
}

FloquetSpectrum diagonalize(const FloquetOperator& f) {
  const ComplexMatrix& a = f.matrix();
  const Eigen::ComplexSchur<ComplexMatrix> schur(a);
  if (schur.info() != Eigen::Success) throw ResidualTooLarge("diagonalize: Schur iteration failed");
  const ComplexMatrix& t = schur.matrixT();
  const ComplexMatrix& u = schur.matrixU();
  const Eigen::Index d = a.rows();

  std::vector<double> x(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i) x[static_cast<std::size_t>(i)] = wrap_quasi_energy(t(i, i));
  std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index l, Eigen::Index r) {
    return x[static_cast<std::size_t>(l)] < x[static_cast<std::size_t>(r)];
  });

  FloquetSpectrum spec{f.system(), Eigen::VectorXd(d), ComplexMatrix(d, d)};
  for (Eigen::Index m = 0; m < d; ++m) {
    spec.quasi_energies(m) = x[static_cast<std::size_t>(order[static_cast<std::size_t>(m)])];
    spec.eigenstates.col(m) = u.col(order[static_cast<std::size_t>(m)]);
  }

  // Clusters of (near-)degenerate eigenvalues along the circle, including the
  // wrap between x ~ pi and x ~ -pi.
  std::vector<std::vector<Eigen::Index>> clusters;
  for (Eigen::Index m = 0; m < d; ++m) {
    if (!clusters.empty() &&
        circular_distance(spec.quasi_energies(m), spec.quasi_energies(clusters.back().back())) < kClusterTol) {
      clusters.back().push_back(m);
    } else {
      clusters.push_back({m});
    }
  }
  if (clusters.size() > 1 &&
      circular_distance(spec.quasi_energies(clusters.front().front()),
                        spec.quasi_energies(clusters.back().back())) < kClusterTol) {
    clusters.front().insert(clusters.front().end(), clusters.back().begin(), clusters.back().end());
    clusters.pop_back();
  }
  for (const auto& c : clusters) {
    if (c.size() > 1) modified_gram_schmidt(spec.eigenstates, c);
  }

  for (Eigen::Index m = 0; m < d; ++m) {
    auto col = spec.eigenstates.col(m);
    // First component within round-off of the largest, so ties resolve the
    // same way on every run.
    const double top = col.cwiseAbs2().maxCoeff();
    Eigen::Index imax = 0;
    while (col(imax).real() * col(imax).real() + col(imax).imag() * col(imax).imag() < top * (1.0 - 1e-12)) ++imax;
    const Complex lead = col(imax);
    col *= std::abs(lead) / lead;
    col(imax) = std::abs(lead);

    const Complex phase = std::polar(1.0, spec.quasi_energies(m));
    const double residual = (a * col - phase * col).norm();
    if (!(residual <= kResidualTol)) {
      throw ResidualTooLarge("diagonalize: eigenpair " + std::to_string(m) + " residual " +
                             std::to_string(residual) + " at k=" + std::to_string(f.k()));
    }
  }
  return spec;
}

StateVector propagate(const StateVector& y0, const FloquetSpectrum& spec, int n) {
  if (n < 0) throw InvalidArgument("propagate: n must be >= 0");
  check_dimension(y0, spec.sys, "propagate");
  const Eigen::VectorXcd overlaps = spec.eigenstates.adjoint() * y0;
  Eigen::VectorXcd coeffs(overlaps.size());
  for (Eigen::Index m = 0; m < overlaps.size(); ++m) {
    // Reduce n*x modulo 2 pi before exponentiating to keep long runs accurate.
    const double phase = std::remainder(static_cast<double>(n) * spec.quasi_energies(m), 2.0 * pi);
    coeffs(m) = std::polar(1.0, phase) * overlaps(m);
  }
  StateVector out(y0.size());
  const auto dim = static_cast<std::size_t>(spec.eigenstates.rows());
  kernels::active().combine_columns({spec.eigenstates.data(), static_cast<std::size_t>(spec.eigenstates.size())},
                                    dim, {coeffs.data(), static_cast<std::size_t>(coeffs.size())},
                                    {out.data(), static_cast<std::size_t>(out.size())});
  return out;
}

StateVector propagate(const StateVector& y0, const FloquetOperator& f, int n) {
  if (n == 0) return y0;
  return propagate(y0, diagonalize(f), n);
}

double husimi_overlap(const StateVector& phi_n, const SpinSystem& sys, double theta, double phi) {
  check_dimension(phi_n, sys, "husimi_overlap");
  return std::norm(coherent_state(sys, theta, phi).dot(phi_n));
}

Eigen::VectorXd husimi_weights(const FloquetSpectrum& spec, const StateVector& gamma) {
  check_dimension(gamma, spec.sys, "husimi_weights");
  Eigen::VectorXd h(spec.size());
  kernels::active().projection_weights(
      {spec.eigenstates.data(), static_cast<std::size_t>(spec.eigenstates.size())},
      static_cast<std::size_t>(spec.eigenstates.rows()), {gamma.data(), static_cast<std::size_t>(gamma.size())},
      {h.data(), static_cast<std::size_t>(h.size())});
  return h;
}

Autocorrelation m_step_autocorrelation(const StateVector& gamma0, const FloquetSpectrum& spec, int L) {
  if (L < 1) throw InvalidArgument("m_step_autocorrelation: L must be >= 1");
  const Eigen::VectorXd h = husimi_weights(spec, gamma0);
  Autocorrelation f;
  f.L = L;
  f.values.resize(static_cast<std::size_t>(2 * L + 1));
  for (int m = -L; m <= L; ++m) {
    Complex acc = 0.0;
    for (int n = 0; n < spec.size(); ++n) {
      acc += h(n) * std::polar(1.0, std::remainder(m * spec.quasi_energies(n), 2.0 * pi));
    }
    f.values[static_cast<std::size_t>(m + L)] = acc;
  }
  return f;
}

double SpectralDensity::spacing() const {
  return omegas.size() < 2 ? 2.0 * pi : omegas[1] - omegas[0];
}

SpectralDensity spectral_transform(const Autocorrelation& f, int omega_grid_size) {
  if (omega_grid_size < 2) throw InvalidArgument("spectral_transform: grid needs at least 2 points");
  if (f.values.size() != static_cast<std::size_t>(2 * f.L + 1)) {
    throw InvalidArgument("spectral_transform: sequence length is not 2L+1");
  }
  const auto g = static_cast<std::size_t>(omega_grid_size);
  SpectralDensity out;
  out.omegas.resize(g);
  for (std::size_t i = 0; i < g; ++i) out.omegas[i] = -pi + 2.0 * pi * static_cast<double>(i) / static_cast<double>(g);

  std::vector<Complex> sums(g);
  kernels::active().spectral_sum(f.values, out.omegas, sums);
  out.magnitudes.resize(g);
  double worst = 0.0;
  for (std::size_t i = 0; i < g; ++i) {
    worst = std::max(worst, std::abs(sums[i].imag()));
    out.magnitudes[i] = std::abs(sums[i].real());
  }
  if (worst > kImagTol) {
    throw ImaginaryResidue("spectral_transform: imaginary part " + std::to_string(worst) +
                           " exceeds tolerance; f_{-M} != conj(f_M)");
  }
  return out;
}

ScarAnalysis analyze_scar(const SpinSystem& sys, KickStrength k, double p, SphereAngles gamma0, int L,
                          int omega_grid_size) {
  const StateVector gamma = coherent_state(sys, gamma0.theta, gamma0.phi);
  ScarAnalysis out{ScarRecord{}, diagonalize(build_floquet(sys, k, p)), {}, {}};
  out.weights = husimi_weights(out.spectrum, gamma);
  out.density = spectral_transform(m_step_autocorrelation(gamma, out.spectrum, L), omega_grid_size);

  const auto& mag = out.density.magnitudes;
  const auto peak = static_cast<std::size_t>(std::max_element(mag.begin(), mag.end()) - mag.begin());
  const double omega_star = out.density.omegas[peak];
  const double window = 2.0 * pi / (2.0 * L + 1.0);

  int best = -1;
  for (int n = 0; n < out.spectrum.size(); ++n) {
    if (circular_distance(out.spectrum.quasi_energies(n), omega_star) <= window &&
        (best < 0 || out.weights(n) > out.weights(best))) {
      best = n;
    }
  }
  if (best < 0) {
    Eigen::Index imax = 0;
    out.weights.maxCoeff(&imax);
    best = static_cast<int>(imax);
  }
  out.record = ScarRecord{k.value(), omega_star, best, out.spectrum.quasi_energies(best), out.weights(best)};
  return out;
}

ScarRecord locate_scar(const SpinSystem& sys, KickStrength k, double p, SphereAngles gamma0, int L,
                       int omega_grid_size) {
  return analyze_scar(sys, k, p, gamma0, L, omega_grid_size).record;
}

std::vector<HusimiSample> husimi_map(const StateVector& state, const SpinSystem& sys, int n_theta, int n_phi) {
  if (n_theta < 2 || n_phi < 2) throw InvalidArgument("husimi_map: grid sizes must be >= 2");
  check_dimension(state, sys, "husimi_map");
  const double dtheta = pi / n_theta;
  const double dphi = 2.0 * pi / n_phi;
  const auto dim = static_cast<std::size_t>(sys.dim());
  const auto cols = static_cast<std::size_t>(n_phi);

  std::vector<HusimiSample> out;
  out.reserve(static_cast<std::size_t>(n_theta) * cols);
  ComplexMatrix block(sys.dim(), n_phi);
  std::vector<double> values(cols);
  for (int it = 0; it < n_theta; ++it) {
    const double theta = (it + 0.5) * dtheta;
    for (int ip = 0; ip < n_phi; ++ip) block.col(ip) = coherent_state(sys, theta, -pi + (ip + 0.5) * dphi);
    kernels::active().projection_weights({block.data(), static_cast<std::size_t>(block.size())}, dim,
                                         {state.data(), static_cast<std::size_t>(state.size())}, values);
    for (int ip = 0; ip < n_phi; ++ip) {
      out.push_back({theta, -pi + (ip + 0.5) * dphi, values[static_cast<std::size_t>(ip)]});
    }
  }
  return out;
}

}  // namespace qkt
