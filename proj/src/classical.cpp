#include "qkt/classical.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qkt/error.hpp"
#include "qkt/parallel.hpp"

namespace qkt {

namespace {

constexpr double kPoleSinTol = 1e-9;
constexpr double kNewtonTol = 1e-12;
constexpr int kNewtonMaxIter = 100;
constexpr double kNewtonMaxStep = 0.5;
constexpr double kFixedPointTol = 1e-9;
constexpr double kStableTol = 1e-9;

SpherePoint from_vec(const Eigen::Vector3d& v) { return SpherePoint::normalized(v.x(), v.y(), v.z()); }

// Full 3x3 derivative of the map in embedding coordinates.
Eigen::Matrix3d embedding_jacobian(const SpherePoint& p, double k) {
  const double c = std::cos(k * p.x);
  const double s = std::sin(k * p.x);
  const double xn = p.z * c + p.y * s;
  const double yn = -p.z * s + p.y * c;
  Eigen::Matrix3d d;
  d << k * yn, s, c,
      -k * xn, c, -s,
      -1.0, 0.0, 0.0;
  return d;
}

}  // namespace

KickStrength::KickStrength(double k) : k_(k) {
  if (!std::isfinite(k) || k < 0.0) {
    throw InvalidArgument("kick strength must be finite and >= 0, got " + std::to_string(k));
  }
}

SpherePoint SpherePoint::from_angles(double theta, double phi) {
  const double st = std::sin(theta);
  return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
}

SpherePoint SpherePoint::normalized(double x, double y, double z) {
  const double n = std::sqrt(x * x + y * y + z * z);
  if (!(n > 0.0)) throw InvalidArgument("cannot normalize a zero vector onto the sphere");
  return {x / n, y / n, z / n};
}

SphereAngles SpherePoint::angles() const {
  SphereAngles a;
  a.theta = std::acos(std::clamp(z, -1.0, 1.0));
  a.phi = (std::sqrt(x * x + y * y) < kPoleSinTol) ? 0.0 : std::atan2(y, x);
  return a;
}

double distance(const SpherePoint& a, const SpherePoint& b) { return (a.vec() - b.vec()).norm(); }

SpherePoint classical_step(const SpherePoint& pt, KickStrength k) {
  const double kx = k.value() * pt.x;
  const double c = std::cos(kx);
  const double s = std::sin(kx);
  return {pt.z * c + pt.y * s, -pt.z * s + pt.y * c, -pt.x};
}

std::vector<SpherePoint> trajectory(const SpherePoint& pt, KickStrength k, int n) {
  if (n < 0) throw InvalidArgument("trajectory length must be >= 0");
  std::vector<SpherePoint> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  out.push_back(pt);
  for (int i = 0; i < n; ++i) out.push_back(classical_step(out.back(), k));
  return out;
}

std::array<Eigen::Vector3d, 2> tangent_frame(const SpherePoint& pt) {
  const Eigen::Vector3d p = pt.vec();
  // Least-aligned coordinate axis as the reference direction.
  Eigen::Index axis = 0;
  p.cwiseAbs().minCoeff(&axis);
  Eigen::Vector3d ref = Eigen::Vector3d::Zero();
  ref(axis) = 1.0;
  const Eigen::Vector3d e1 = (ref - ref.dot(p) * p).normalized();
  const Eigen::Vector3d e2 = p.cross(e1);
  return {e1, e2};
}

Eigen::Matrix2d tangent_jacobian(const SpherePoint& pt, KickStrength k) {
  const Eigen::Matrix3d d = embedding_jacobian(pt, k.value());
  const auto from = tangent_frame(pt);
  const auto to = tangent_frame(classical_step(pt, k));
  Eigen::Matrix2d jac;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) jac(a, b) = to[a].dot(d * from[b]);
  return jac;
}

SpherePoint find_fixed_point(const SpherePoint& seed, KickStrength k) {
  SpherePoint p = SpherePoint::normalized(seed.x, seed.y, seed.z);
  for (int iter = 0; iter <= kNewtonMaxIter; ++iter) {
    const SpherePoint image = classical_step(p, k);
    if (distance(image, p) < kNewtonTol) return p;
    if (iter == kNewtonMaxIter) break;

    // Chart anchored at p: q(u) = normalize(p + u1 e1 + u2 e2). Linearizing
    // step(q(u)) = q(u) and projecting on (e1, e2) gives (A - I) u = -g.
    const auto frame = tangent_frame(p);
    const Eigen::Matrix3d d = embedding_jacobian(p, k.value());
    Eigen::Matrix2d a;
    Eigen::Vector2d g;
    for (int r = 0; r < 2; ++r) {
      g(r) = frame[r].dot(image.vec());
      for (int c = 0; c < 2; ++c) a(r, c) = frame[r].dot(d * frame[c]);
    }
    Eigen::Vector2d u = (a - Eigen::Matrix2d::Identity()).fullPivLu().solve(-g);
    if (!u.allFinite()) break;
    const double len = u.norm();
    if (len > kNewtonMaxStep) u *= kNewtonMaxStep / len;
    p = from_vec(p.vec() + u(0) * frame[0] + u(1) * frame[1]);
  }
  const SphereAngles a = seed.angles();
  throw NoConvergence("fixed-point Newton iteration did not converge from seed (theta=" +
                      std::to_string(a.theta) + ", phi=" + std::to_string(a.phi) +
                      ") at k=" + std::to_string(k.value()));
}

std::array<std::complex<double>, 2> eigenvalues_2x2(const Eigen::Matrix2d& m) {
  const double half_tr = 0.5 * m.trace();
  const double det = m.determinant();
  const std::complex<double> disc = std::sqrt(std::complex<double>(half_tr * half_tr - det, 0.0));
  return {half_tr + disc, half_tr - disc};
}

StabilityReport stability(const SpherePoint& pt, KickStrength k) {
  const double residual = distance(classical_step(pt, k), pt);
  if (residual > kFixedPointTol) {
    throw NotAFixedPoint("stability: point is not fixed (residual " + std::to_string(residual) + ")");
  }
  StabilityReport rep;
  rep.fixed_point = pt;
  rep.multipliers = eigenvalues_2x2(tangent_jacobian(pt, k));
  const double largest = std::max(std::abs(rep.multipliers[0]), std::abs(rep.multipliers[1]));
  rep.is_stable = largest <= 1.0 + kStableTol;
  return rep;
}

std::vector<double> k_grid(double k_min, double k_max, double k_step) {
  if (!(k_step > 0.0)) throw InvalidArgument("k_step must be > 0");
  if (!(k_min <= k_max)) throw InvalidArgument("k_min must not exceed k_max");
  const auto count = static_cast<std::size_t>(std::floor((k_max - k_min) / k_step + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) grid[i] = k_min + static_cast<double>(i) * k_step;
  return grid;
}

SpherePoint displaced_seed(const SpherePoint& seed, double displacement) {
  const SphereAngles a = seed.angles();
  const double theta =
      (a.theta + displacement <= std::numbers::pi) ? a.theta + displacement : a.theta - displacement;
  return SpherePoint::from_angles(theta, a.phi);
}

std::vector<BifurcationSample> bifurcation_scan(const BifurcationScanOptions& opts) {
  if (opts.transient < 1 || opts.record < 1) {
    throw InvalidArgument("bifurcation_scan: transient and record must be >= 1");
  }
  const std::vector<double> ks = k_grid(opts.k_min, opts.k_max, opts.k_step);
  const SpherePoint start = displaced_seed(opts.seed, opts.displacement);
  const auto per_k = static_cast<std::size_t>(opts.record);

  std::vector<BifurcationSample> rows(ks.size() * per_k);
  parallel_for(ks.size(), opts.workers, [&](std::size_t ik) {
    const KickStrength k(ks[ik]);
    SpherePoint p = start;
    for (int i = 0; i < opts.transient; ++i) p = classical_step(p, k);
    for (std::size_t r = 0; r < per_k; ++r) {
      p = classical_step(p, k);
      const SphereAngles a = p.angles();
      rows[ik * per_k + r] = {ks[ik], static_cast<int>(r), a.theta, a.phi};
    }
  });
  return rows;
}

}  // namespace qkt
