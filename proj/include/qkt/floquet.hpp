#pragma once

#include <numbers>
#include <vector>

#include "qkt/classical.hpp"
#include "qkt/spin.hpp"

namespace qkt {

inline constexpr double kDefaultPrecession = std::numbers::pi / 2;

/// One-period propagator F = exp(-i (k/2j) Jz^2) exp(-i p Jy).
class FloquetOperator {
 public:
  FloquetOperator(SpinSystem sys, KickStrength k, double p, ComplexMatrix matrix);

  const SpinSystem& system() const { return sys_; }
  double k() const { return k_.value(); }
  double p() const { return p_; }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  SpinSystem sys_;
  KickStrength k_;
  double p_;
  ComplexMatrix matrix_;
};

FloquetOperator build_floquet(const SpinSystem& sys, KickStrength k, double p = kDefaultPrecession);

/// F |Phi_m> = exp(i x_m) |Phi_m>, quasi-energies in (-pi, pi] sorted
/// ascending; column m of `eigenstates` is Phi_m.
struct FloquetSpectrum {
  SpinSystem sys;
  Eigen::VectorXd quasi_energies;
  ComplexMatrix eigenstates;

  int size() const { return static_cast<int>(quasi_energies.size()); }
  StateVector state(int m) const { return eigenstates.col(m); }
};

/// Complex Schur factorization of the (normal) Floquet matrix, with
/// Gram-Schmidt inside clusters of eigenvalues closer than 1e-9. Each
/// eigenvector is phased so its largest component is real and positive.
/// Throws ResidualTooLarge if any |F Phi - e^{ix} Phi| exceeds 1e-8.
FloquetSpectrum diagonalize(const FloquetOperator& f);

/// |y_n> = sum_m e^{i n x_m} |Phi_m><Phi_m|y_0>.
StateVector propagate(const StateVector& y0, const FloquetSpectrum& spec, int n);
StateVector propagate(const StateVector& y0, const FloquetOperator& f, int n);

/// |<phi_n | theta, phi>|^2.
double husimi_overlap(const StateVector& phi_n, const SpinSystem& sys, double theta, double phi);

/// H_n = |<Phi_n | gamma>|^2 for every eigenstate of the spectrum.
Eigen::VectorXd husimi_weights(const FloquetSpectrum& spec, const StateVector& gamma);

/// f_M = <gamma0| F^M |gamma0> for M = -L..L, evaluated from the spectrum.
struct Autocorrelation {
  int L = 0;
  std::vector<Complex> values;  // index M + L

  Complex at(int m) const { return values[static_cast<std::size_t>(m + L)]; }
};

Autocorrelation m_step_autocorrelation(const StateVector& gamma0, const FloquetSpectrum& spec, int L);

/// |f_hat(omega)| on omega_i = -pi + 2 pi i / grid_size.
struct SpectralDensity {
  std::vector<double> omegas;
  std::vector<double> magnitudes;

  double spacing() const;
};

/// f_hat(omega) = sum_M exp(-i omega M) f_M. Throws ImaginaryResidue when
/// the result has an imaginary part above 1e-9 (f not Hermitian in M).
SpectralDensity spectral_transform(const Autocorrelation& f, int omega_grid_size);

struct ScarRecord {
  double k = 0.0;
  double omega_peak = 0.0;
  int state_index = 0;  // column of the ascending-sorted spectrum
  double quasi_energy = 0.0;
  double husimi_overlap = 0.0;
};

inline constexpr int kDefaultAutocorrelationLength = 500;
inline constexpr int kDefaultOmegaGrid = 4096;

/// Everything computed while locating a scar; `record` is the summary.
struct ScarAnalysis {
  ScarRecord record;
  FloquetSpectrum spectrum;
  Eigen::VectorXd weights;  // H_n(gamma0)
  SpectralDensity density;
};

/// Locates the eigenstate scarred by the fixed point under gamma0: the
/// global maximum of |f_hat| picks omega*, then the largest H_n among states
/// within 2 pi / (2L + 1) of omega* (circular distance) is selected, falling
/// back to the global argmax of H_n if that window is empty.
ScarAnalysis analyze_scar(const SpinSystem& sys, KickStrength k, double p, SphereAngles gamma0, int L,
                          int omega_grid_size);

ScarRecord locate_scar(const SpinSystem& sys, KickStrength k, double p, SphereAngles gamma0, int L,
                       int omega_grid_size);

struct HusimiSample {
  double theta = 0.0;
  double phi = 0.0;
  double value = 0.0;
};

/// |<theta, phi | state>|^2 at the centres of an n_theta x n_phi grid
/// covering [0, pi] x [-pi, pi); rows ordered theta-major.
std::vector<HusimiSample> husimi_map(const StateVector& state, const SpinSystem& sys, int n_theta, int n_phi);

}  // namespace qkt
