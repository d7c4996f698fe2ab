#pragma once

#include <complex>
#include <numbers>
#include <random>

#include <Eigen/Dense>

namespace qkt::test {

inline double max_abs(const Eigen::MatrixXcd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Eigen::VectorXcd random_state(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = {g(rng), g(rng)};
  return v.normalized();
}

inline Eigen::MatrixXcd random_hermitian(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) a(i, j) = {g(rng), g(rng)};
  return 0.5 * (a + a.adjoint());
}

inline double random_theta(std::mt19937_64& rng) { return uniform(rng, 0.0, std::numbers::pi); }
inline double random_phi(std::mt19937_64& rng) { return uniform(rng, -std::numbers::pi, std::numbers::pi); }

}  // namespace qkt::test
