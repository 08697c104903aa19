#pragma once

// Wirtinger derivatives of sampled fields by central differences in the real
// coordinates z_k = x_k + i y_k, Richardson-extrapolated over steps h and h/2
// (fourth order). The field value type V needs +, - and scalar multiplication
// by cplx; Eigen matrices, Form and cplx all qualify.

#include <Eigen/Dense>

#include <cmath>
#include <type_traits>
#include <utility>
#include <vector>

#include "hermlab/core.hpp"

namespace hermlab::fd {

inline Point shifted(const Point& z, int real_var, double t) {
  const int n = static_cast<int>(z.size());
  Point out = z;
  if (real_var < n)
    out[real_var] += t;
  else
    out[real_var - n] += cplx(0.0, t);
  return out;
}

inline bool finite_value(const cplx& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }
inline bool finite_value(const Eigen::MatrixXcd& m) { return m.allFinite(); }
inline bool finite_value(const Eigen::VectorXcd& v) { return v.allFinite(); }
template <class V>
bool finite_value(const V& v) {
  for (const auto& c : v.coeffs())
    if (!finite_value(c)) return false;
  return true;
}

template <class F>
auto sample(F& f, const Point& z) {
  auto v = f(z);
  if (!finite_value(v)) throw NumericError("non-finite sample during finite differencing");
  return v;
}

template <class V>
V richardson(const V& coarse, const V& fine) {
  return (fine * cplx(4.0) - coarse) * cplx(1.0 / 3.0);
}

// First Wirtinger derivatives (d/dz_k, d/dzbar_k), k = 0..n-1.
template <class F>
auto wirtinger_gradient(F&& f, const Point& z, double step) {
  using V = std::decay_t<decltype(f(z))>;
  if (!(step > 0.0)) throw ConfigError("finite difference step must be positive");
  const int n = static_cast<int>(z.size());
  std::vector<V> real_deriv;
  real_deriv.reserve(2 * n);
  for (int a = 0; a < 2 * n; ++a) {
    auto central = [&](double h) -> V {
      return (sample(f, shifted(z, a, h)) - sample(f, shifted(z, a, -h))) * cplx(1.0 / (2.0 * h));
    };
    real_deriv.push_back(richardson(central(step), central(0.5 * step)));
  }
  std::vector<V> d, dbar;
  d.reserve(n);
  dbar.reserve(n);
  for (int k = 0; k < n; ++k) {
    d.push_back((real_deriv[k] - real_deriv[n + k] * kI) * cplx(0.5));
    dbar.push_back((real_deriv[k] + real_deriv[n + k] * kI) * cplx(0.5));
  }
  return std::make_pair(std::move(d), std::move(dbar));
}

// Mixed Wirtinger Hessian: result[k * n + l] = d/dz_k d/dzbar_l f.
template <class F>
auto wirtinger_mixed_hessian(F&& f, const Point& z, double step) {
  using V = std::decay_t<decltype(f(z))>;
  if (!(step > 0.0)) throw ConfigError("finite difference step must be positive");
  const int n = static_cast<int>(z.size());
  const int m = 2 * n;
  const V center = sample(f, z);

  auto second = [&](int a, int b, double h) -> V {
    if (a == b) {
      return (sample(f, shifted(z, a, h)) - center * cplx(2.0) + sample(f, shifted(z, a, -h))) *
             cplx(1.0 / (h * h));
    }
    auto at = [&](double sa, double sb) { return sample(f, shifted(shifted(z, a, sa), b, sb)); };
    return (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) * cplx(1.0 / (4.0 * h * h));
  };

  std::vector<V> hess(static_cast<std::size_t>(m) * m, center * cplx(0.0));
  for (int a = 0; a < m; ++a) {
    for (int b = a; b < m; ++b) {
      V v = richardson(second(a, b, step), second(a, b, 0.5 * step));
      hess[static_cast<std::size_t>(b) * m + a] = v;
      hess[static_cast<std::size_t>(a) * m + b] = std::move(v);
    }
  }
  auto H = [&](int a, int b) -> const V& { return hess[static_cast<std::size_t>(a) * m + b]; };

  std::vector<V> out;
  out.reserve(static_cast<std::size_t>(n) * n);
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      // (d_xk - i d_yk)(d_xl + i d_yl) / 4
      out.push_back((H(k, l) + H(k, n + l) * kI - H(n + k, l) * kI + H(n + k, n + l)) * cplx(0.25));
    }
  }
  return out;
}

}  // namespace hermlab::fd
