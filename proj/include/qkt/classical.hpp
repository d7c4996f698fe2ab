#pragma once

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace qkt {

/// Dimensionless kick parameter k >= 0.
class KickStrength {
 public:
  explicit KickStrength(double k);
  double value() const { return k_; }

 private:
  double k_;
};

struct SphereAngles {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [-pi, pi]
};

/// Unit vector (X, Y, Z) on the classical phase-space sphere.
struct SpherePoint {
  double x = 0.0;
  double y = 0.0;
  double z = 1.0;

  static SpherePoint from_angles(double theta, double phi);
  static SpherePoint from_angles(const SphereAngles& a) { return from_angles(a.theta, a.phi); }

  /// Rescales an arbitrary non-zero vector onto the sphere.
  static SpherePoint normalized(double x, double y, double z);

  /// Angle chart; phi is reported as 0 where sin(theta) < 1e-9.
  SphereAngles angles() const;

  Eigen::Vector3d vec() const { return {x, y, z}; }
  double norm_squared() const { return x * x + y * y + z * z; }
};

double distance(const SpherePoint& a, const SpherePoint& b);

/// One period of the classical top at p = pi/2:
///   X' = Z cos(kX) + Y sin(kX),  Y' = -Z sin(kX) + Y cos(kX),  Z' = -X.
SpherePoint classical_step(const SpherePoint& pt, KickStrength k);

/// pt followed by n successive images (n + 1 points).
std::vector<SpherePoint> trajectory(const SpherePoint& pt, KickStrength k, int n);

/// Right-handed orthonormal basis (e1, e2) of the tangent plane at pt, chosen
/// deterministically from pt alone.
std::array<Eigen::Vector3d, 2> tangent_frame(const SpherePoint& pt);

/// Jacobian of the map from the tangent plane at pt to the tangent plane at
/// its image, both expressed in tangent_frame(). Orientation-preserving and
/// area-preserving, so its determinant is 1.
Eigen::Matrix2d tangent_jacobian(const SpherePoint& pt, KickStrength k);

/// Newton iteration on a tangent-plane chart re-anchored every step.
/// Converges when |step(p) - p| < 1e-12; throws NoConvergence after 100 steps.
SpherePoint find_fixed_point(const SpherePoint& seed, KickStrength k);

struct StabilityReport {
  SpherePoint fixed_point;
  std::array<std::complex<double>, 2> multipliers;
  bool is_stable = false;
};

/// Linear stability of a fixed point (residual must be below 1e-9, otherwise
/// NotAFixedPoint). Stable means max |multiplier| <= 1 + 1e-9.
StabilityReport stability(const SpherePoint& pt, KickStrength k);

/// Eigenvalues of a real 2x2 matrix.
std::array<std::complex<double>, 2> eigenvalues_2x2(const Eigen::Matrix2d& m);

struct BifurcationScanOptions {
  double k_min = 0.0;
  double k_max = 6.8;
  double k_step = 0.01;
  SpherePoint seed = SpherePoint{0.0, -1.0, 0.0};
  double displacement = 1e-3;  // radians, applied to theta
  int transient = 1000;
  int record = 100;
  int workers = 1;
};

struct BifurcationSample {
  double k = 0.0;
  int iterate = 0;
  double theta = 0.0;
  double phi = 0.0;
};

/// Uniform grid k_min + i*k_step up to k_max (inclusive within 1e-9 of a step).
std::vector<double> k_grid(double k_min, double k_max, double k_step);

/// Seed displaced by `displacement` in theta (towards the interior of [0, pi]).
SpherePoint displaced_seed(const SpherePoint& seed, double displacement);

/// For each k: iterate the displaced seed `transient` times, then record
/// `record` successive iterates. Rows ordered by k then iterate index and
/// independent of the worker count.
std::vector<BifurcationSample> bifurcation_scan(const BifurcationScanOptions& opts);

}  // namespace qkt
