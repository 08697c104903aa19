#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#ifndef HERMLAB_MAX_DIM
#define HERMLAB_MAX_DIM 6
#endif

namespace hermlab {

using cplx = std::complex<double>;

// A point of the coordinate chart, z = (z_1, ..., z_n).
using Point = std::vector<cplx>;

inline constexpr int kMaxDimension = HERMLAB_MAX_DIM;
inline constexpr cplx kI{0.0, 1.0};

// Error hierarchy. Every error the library raises derives from Error so callers
// (the CLI in particular) can map classes onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: shapes, degrees, parameters, unknown identifiers.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Point outside the admissible region of a metric.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Metric is not Hermitian positive definite, or too badly conditioned.
class MetricError : public Error {
 public:
  using Error::Error;
};

// Non-finite samples or other floating point breakdown.
class NumericError : public Error {
 public:
  using Error::Error;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

constexpr long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

constexpr double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

inline double norm2(const Point& z) {
  double r = 0.0;
  for (const auto& c : z) r += std::norm(c);
  return r;
}

// Dense complex array with rank-3 or rank-4 index access over a common
// dimension n. Storage is row-major in the order the indices are written.
template <int Rank>
class Tensor {
  static_assert(Rank == 3 || Rank == 4);

 public:
  Tensor() = default;
  explicit Tensor(int n) : n_(n), data_(size_for(n), cplx{}) {}

  int dim() const { return n_; }
  std::size_t size() const { return data_.size(); }

  cplx& operator()(int i, int j, int k)
    requires(Rank == 3)
  {
    return data_[(static_cast<std::size_t>(i) * n_ + j) * n_ + k];
  }
  const cplx& operator()(int i, int j, int k) const
    requires(Rank == 3)
  {
    return data_[(static_cast<std::size_t>(i) * n_ + j) * n_ + k];
  }
  cplx& operator()(int i, int j, int k, int l)
    requires(Rank == 4)
  {
    return data_[((static_cast<std::size_t>(i) * n_ + j) * n_ + k) * n_ + l];
  }
  const cplx& operator()(int i, int j, int k, int l) const
    requires(Rank == 4)
  {
    return data_[((static_cast<std::size_t>(i) * n_ + j) * n_ + k) * n_ + l];
  }

  const std::vector<cplx>& data() const { return data_; }
  std::vector<cplx>& data() { return data_; }

  double max_abs() const {
    double m = 0.0;
    for (const auto& c : data_) m = std::max(m, std::abs(c));
    return m;
  }

 private:
  static std::size_t size_for(int n) {
    std::size_t s = 1;
    for (int r = 0; r < Rank; ++r) s *= static_cast<std::size_t>(n);
    return s;
  }

  int n_ = 0;
  std::vector<cplx> data_;
};

using Tensor3 = Tensor<3>;
using Tensor4 = Tensor<4>;

template <int Rank>
double max_abs_diff(const Tensor<Rank>& a, const Tensor<Rank>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

// Residual normalisation used throughout the identity checks: the max-abs
// difference divided by 1 + the larger of the two max-abs magnitudes.
inline double normalized_residual(double diff, double lhs_norm, double rhs_norm) {
  return diff / (1.0 + std::max(lhs_norm, rhs_norm));
}

}  // namespace hermlab
