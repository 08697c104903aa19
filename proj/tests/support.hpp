#pragma once

#include <Eigen/Dense>

#include <random>

#include "hermlab/forms.hpp"

namespace hermlab::testing {

// Random positive definite Hermitian matrix, eigenvalues in [0.5, 2.5].
inline Eigen::MatrixXcd random_metric(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXcd A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = cplx(u(rng), u(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(A);
  const Eigen::MatrixXcd Q = qr.householderQ();
  Eigen::VectorXd d(n);
  for (int i = 0; i < n; ++i) d(i) = 1.5 + u(rng);
  return Q * d.asDiagonal() * Q.adjoint();
}

inline Form random_form(int n, int p, int q, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Form f(n, p, q);
  for (std::size_t x = 0; x < f.size(); ++x) f[x] = cplx(u(rng), u(rng));
  return f;
}

inline Point random_point(int n, double radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Point z(n);
  for (auto& c : z) c = cplx(u(rng), u(rng));
  double r = std::sqrt(norm2(z));
  for (auto& c : z) c *= radius / std::max(r, 1.0) * 0.7;
  return z;
}

}  // namespace hermlab::testing
