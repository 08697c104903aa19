#pragma once

// Chern connection quantities of a Hermitian metric at a point, computed from
// a MetricJet by direct index contractions.
//
// Index conventions: P(k, l) = h^{k lbar}; R(i, j, k, l) = R_{i jbar k lbar};
// Gamma(i, j, k) = Gamma_{ij}^k; T_low(i, j, k) = T_{i j kbar}.

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "hermlab/core.hpp"
#include "hermlab/forms.hpp"
#include "hermlab/jets.hpp"

namespace hermlab {

struct CurvatureBundle {
  int n = 0;
  Tensor3 Gamma;    // Gamma_{ij}^k
  Tensor3 T_mixed;  // T_{ij}^k
  Tensor3 T_low;    // T_{i j kbar}
  std::vector<cplx> tau;
  Eigen::MatrixXcd dbar_tau;  // dbar_tau(i, j) = d_jbar tau_i
  Tensor4 R;                  // R_{i jbar k lbar}
  std::array<Eigen::MatrixXcd, 4> rho;  // rho[a](i, j) = rho^(a+1)_{i jbar}
  double s = 0.0;
  double s_hat = 0.0;
  double s_imag = 0.0;      // imaginary parts before projection, kept for reporting
  double s_hat_imag = 0.0;
  Tensor4 K;
  Tensor4 nablaT_bar;  // (i, j, k, l) -> nabla_jbar T_{i k lbar}
  Tensor4 nablaT_hol;  // (i, j, l, k) -> nabla_i T_{jbar lbar k}
  Form xi_sq;          // (2,2)-form t(xi) ^ h conj(xi)
  Eigen::MatrixXcd xi_lambda;  // M(k, l) with Lambda(xi_sq) = sqrt(-1) M_{k lbar} dz^k ^ dzbar^l

  double tau_norm_squared(const Eigen::MatrixXcd& P) const {
    cplx v{};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) v += P(i, j) * tau[i] * std::conj(tau[j]);
    return v.real();
  }
};

inline Tensor3 christoffel(const MetricJet& jet, const Eigen::MatrixXcd& P) {
  const int n = jet.dim();
  Tensor3 G(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        cplx v{};
        for (int l = 0; l < n; ++l) v += P(k, l) * jet.dh(i, j, l);
        G(i, j, k) = v;
      }
  return G;
}

inline Tensor3 christoffel(const MetricJet& jet) { return christoffel(jet, inverse_metric(jet).h_inv()); }

struct TorsionData {
  Tensor3 T_mixed;
  Tensor3 T_low;
  std::vector<cplx> tau;
};

inline TorsionData torsion(const MetricJet& jet, const Tensor3& Gamma) {
  const int n = jet.dim();
  TorsionData t{Tensor3(n), Tensor3(n), std::vector<cplx>(n)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        t.T_mixed(i, j, k) = Gamma(i, j, k) - Gamma(j, i, k);
        t.T_low(i, j, k) = jet.dh(i, j, k) - jet.dh(j, i, k);
      }
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) t.tau[i] += t.T_mixed(i, k, k);
  return t;
}

// R_{i jbar k lbar} = -d_i d_jbar h_{k lbar} + h^{a mbar} d_i h_{k mbar} d_jbar h_{a lbar}
inline Tensor4 curvature_tensor(const MetricJet& jet, const Eigen::MatrixXcd& P) {
  const int n = jet.dim();
  Tensor4 R(n);
  // W(i, k, a) = sum_m P(a, m) d_i h_{k mbar}
  Tensor3 W(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int a = 0; a < n; ++a) {
        cplx v{};
        for (int m = 0; m < n; ++m) v += P(a, m) * jet.dh(i, k, m);
        W(i, k, a) = v;
      }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          cplx v = -jet.ddbar_h(i, j, k, l);
          for (int a = 0; a < n; ++a) v += W(i, k, a) * jet.dbar_h(j, a, l);
          R(i, j, k, l) = v;
        }
  return R;
}

inline Tensor4 curvature_tensor(const MetricJet& jet) { return curvature_tensor(jet, inverse_metric(jet).h_inv()); }

struct CovariantTorsion {
  Tensor4 bar;  // nabla_jbar T_{i k lbar} at (i, j, k, l)
  Tensor4 hol;  // nabla_i T_{jbar lbar k} at (i, j, l, k)
};

inline CovariantTorsion covariant_torsion_derivatives(const MetricJet& jet, const Tensor3& Gamma,
                                                      const Tensor3& T_low) {
  const int n = jet.dim();
  CovariantTorsion c{Tensor4(n), Tensor4(n)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          cplx v = jet.ddbar_h(i, j, k, l) - jet.ddbar_h(k, j, i, l);
          for (int p = 0; p < n; ++p) v -= std::conj(Gamma(j, l, p)) * T_low(i, k, p);
          c.bar(i, j, k, l) = v;
        }
  // d_i conj(T_{j l kbar}) = conj(d_ibar T_{j l kbar})
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l)
        for (int k = 0; k < n; ++k) {
          cplx v = std::conj(jet.ddbar_h(j, i, l, k) - jet.ddbar_h(l, i, j, k));
          for (int p = 0; p < n; ++p) v -= Gamma(i, k, p) * std::conj(T_low(j, l, p));
          c.hol(i, j, l, k) = v;
        }
  return c;
}

inline std::array<Eigen::MatrixXcd, 4> ricci_forms(const Tensor4& R, const Eigen::MatrixXcd& P) {
  const int n = R.dim();
  std::array<Eigen::MatrixXcd, 4> rho;
  for (auto& m : rho) m = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const cplx p = P(k, l);
          rho[0](i, j) += p * R(i, j, k, l);
          rho[1](i, j) += p * R(k, l, i, j);
          rho[2](i, j) += p * R(i, l, k, j);
          rho[3](i, j) += p * R(k, j, i, l);
        }
  return rho;
}

struct ScalarCurvatures {
  cplx s, s_hat;
};

inline ScalarCurvatures scalar_curvatures(const Tensor4& R, const Eigen::MatrixXcd& P) {
  const int n = R.dim();
  ScalarCurvatures out{};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          out.s += P(i, j) * P(k, l) * R(i, j, k, l);
          out.s_hat += P(i, l) * P(k, j) * R(i, j, k, l);
        }
  return out;
}

// H(X) = R(X, Xbar, X, Xbar) / |X|^4
inline double holomorphic_sectional_curvature(const Tensor4& R, const Eigen::MatrixXcd& h,
                                              std::span<const cplx> X) {
  const int n = R.dim();
  if (static_cast<int>(X.size()) != n) throw ConfigError("direction has the wrong number of components");
  cplx norm{};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) norm += h(i, j) * X[i] * std::conj(X[j]);
  if (!(norm.real() > 0.0)) throw ConfigError("holomorphic sectional curvature needs a nonzero direction");
  cplx v{};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) v += R(i, j, k, l) * X[i] * std::conj(X[j]) * X[k] * std::conj(X[l]);
  return v.real() / (norm.real() * norm.real());
}

inline Tensor4 symmetrized_curvature(const Tensor4& R) {
  const int n = R.dim();
  Tensor4 K(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          K(i, j, k, l) = 0.25 * (R(i, j, k, l) + R(k, j, i, l) + R(i, l, k, j) + R(k, l, i, j));
  return K;
}

// (2,2)-form t(xi) ^ h conj(xi): canonical coefficient at (jk, rs) is
// sum_l T_{j k lbar} conj(T_{rs}^l).
inline Form torsion_square_form(const Tensor3& T_low, const Tensor3& T_mixed) {
  const int n = T_low.dim();
  Form f(n, std::min(2, n), std::min(2, n));
  if (n < 2) return f;
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      for (int r = 0; r < n; ++r)
        for (int s = r + 1; s < n; ++s) {
          cplx v{};
          for (int l = 0; l < n; ++l) v += T_low(j, k, l) * std::conj(T_mixed(r, s, l));
          f.at((1u << j) | (1u << k), (1u << r) | (1u << s)) = v;
        }
  return f;
}

// M(k, l) = h^{i jbar} h^{p qbar} T_{i k qbar} conj(T_{j l pbar})
inline Eigen::MatrixXcd torsion_square_contraction(const Tensor3& T_low, const Eigen::MatrixXcd& P) {
  const int n = T_low.dim();
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      cplx v{};
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) v += P(i, j) * P(p, q) * T_low(i, k, q) * std::conj(T_low(j, l, p));
      M(k, l) = v;
    }
  return M;
}

// d_jbar tau_i with d(P) = -P (dH)^T P.
inline Eigen::MatrixXcd dbar_torsion_form(const MetricJet& jet, const Eigen::MatrixXcd& P) {
  const int n = jet.dim();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    Eigen::MatrixXcd dH(n, n);  // dH(a, b) = d_jbar h_{a bbar}
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) dH(a, b) = jet.dbar_h(j, a, b);
    const Eigen::MatrixXcd dP = -P * dH.transpose() * P;
    for (int i = 0; i < n; ++i) {
      cplx v{};
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const cplx T = jet.dh(i, k, l) - jet.dh(k, i, l);
          const cplx dT = jet.ddbar_h(i, j, k, l) - jet.ddbar_h(k, j, i, l);
          v += dP(k, l) * T + P(k, l) * dT;
        }
      out(i, j) = v;
    }
  }
  return out;
}

inline CurvatureBundle compute_curvature(const MetricJet& jet) {
  const HermitianMatrixPair g = inverse_metric(jet);
  const Eigen::MatrixXcd& P = g.h_inv();
  CurvatureBundle b;
  b.n = jet.dim();
  b.Gamma = christoffel(jet, P);
  TorsionData t = torsion(jet, b.Gamma);
  b.T_mixed = std::move(t.T_mixed);
  b.T_low = std::move(t.T_low);
  b.tau = std::move(t.tau);
  b.dbar_tau = dbar_torsion_form(jet, P);
  b.R = curvature_tensor(jet, P);
  b.rho = ricci_forms(b.R, P);
  const auto sc = scalar_curvatures(b.R, P);
  b.s = sc.s.real();
  b.s_hat = sc.s_hat.real();
  b.s_imag = sc.s.imag();
  b.s_hat_imag = sc.s_hat.imag();
  b.K = symmetrized_curvature(b.R);
  auto cov = covariant_torsion_derivatives(jet, b.Gamma, b.T_low);
  b.nablaT_bar = std::move(cov.bar);
  b.nablaT_hol = std::move(cov.hol);
  b.xi_sq = torsion_square_form(b.T_low, b.T_mixed);
  b.xi_lambda = torsion_square_contraction(b.T_low, P);
  return b;
}

struct ConstantHTest {
  bool is_constant = false;
  double c = 0.0;         // (s + s_hat) / (n (n + 1))
  double residual = 0.0;  // normalized max |K - c/2 (h h + swap)|
  double H_min = 0.0, H_max = 0.0;
  double spread() const { return H_max - H_min; }
};

// Unit-free random direction set, fixed by seed.
inline std::vector<std::vector<cplx>> sample_directions(int n, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uni = [&rng] { return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0; };
  std::vector<std::vector<cplx>> dirs;
  dirs.reserve(static_cast<std::size_t>(count));
  while (static_cast<int>(dirs.size()) < count) {
    std::vector<cplx> X(n);
    double norm = 0.0;
    for (auto& x : X) {
      x = cplx(uni(), uni());
      norm += std::norm(x);
    }
    if (norm > 1e-6) dirs.push_back(std::move(X));
  }
  return dirs;
}

inline ConstantHTest pointwise_constant_H_test(const CurvatureBundle& b, const Eigen::MatrixXcd& h, double tol,
                                               int directions = 200, std::uint64_t seed = 0x5eed) {
  const int n = b.n;
  ConstantHTest t;
  t.c = (b.s + b.s_hat) / (n * (n + 1.0));
  double diff = 0.0, kmax = 0.0, rmax = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const cplx model = 0.5 * t.c * (h(i, j) * h(k, l) + h(i, l) * h(k, j));
          diff = std::max(diff, std::abs(b.K(i, j, k, l) - model));
          kmax = std::max(kmax, std::abs(b.K(i, j, k, l)));
          rmax = std::max(rmax, std::abs(model));
        }
  t.residual = normalized_residual(diff, kmax, rmax);
  t.is_constant = t.residual < tol;
  t.H_min = std::numeric_limits<double>::infinity();
  t.H_max = -std::numeric_limits<double>::infinity();
  for (const auto& X : sample_directions(n, directions, seed)) {
    const double H = holomorphic_sectional_curvature(b.R, h, X);
    t.H_min = std::min(t.H_min, H);
    t.H_max = std::max(t.H_max, H);
  }
  return t;
}

struct LeeData {
  std::vector<cplx> theta10;  // (1,0) part of theta; theta = theta10 + conj(theta10)
  double residual = 0.0;      // normalized max |del omega - theta10 ^ omega|
};

inline Form del_omega_from_jet(const MetricJet& jet) {
  const int n = jet.dim();
  Form out(n, std::min(2, n), 1);
  if (n < 2) return out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) out.at((1u << i) | (1u << j), 1u << k) = kI * (jet.dh(i, j, k) - jet.dh(j, i, k));
  return out;
}

inline LeeData lee_form(const MetricJet& jet, const CurvatureBundle& b) {
  const int n = jet.dim();
  if (n < 2) throw ConfigError("lee_form needs n >= 2");
  const HermitianMatrixPair g = inverse_metric(jet);
  LeeData d;
  d.theta10.resize(n);
  Form t(n, 1, 0);
  for (int i = 0; i < n; ++i) {
    d.theta10[i] = b.tau[i] / static_cast<double>(n - 1);
    t.at(1u << i, 0u) = d.theta10[i];
  }
  const Form lhs = del_omega_from_jet(jet);
  const Form rhs = wedge(t, omega_form(g));
  d.residual = normalized_residual(max_abs_diff(lhs, rhs), lhs.max_abs(), rhs.max_abs());
  return d;
}

// Curvature of e^f omega from that of omega by the conformal change laws.
struct ConformalCurvature {
  Tensor4 R;
  Eigen::MatrixXcd rho1, rho2, rho3;
  double scalar_gap = 0.0;  // s~ - s^~
};

inline ConformalCurvature conformal_transform(const MetricJet& jet, const CurvatureBundle& b, const ScalarJet& f) {
  const int n = jet.dim();
  if (f.dim() != n) throw ConfigError("conformal_transform: dimension mismatch");
  const HermitianMatrixPair g = inverse_metric(jet);
  const Eigen::MatrixXcd& P = g.h_inv();
  const double ef = std::exp(f.value);
  ConformalCurvature out;
  out.R = Tensor4(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) out.R(i, j, k, l) = ef * (b.R(i, j, k, l) - f.ddbar_f(i, j) * jet.h(k, l));
  cplx lap{};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) lap += P(i, j) * f.ddbar_f(i, j);
  out.rho1 = b.rho[0] - static_cast<double>(n) * f.ddbar_f;
  out.rho2 = b.rho[1] - lap.real() * jet.h;
  out.rho3 = b.rho[2] - f.ddbar_f;
  out.scalar_gap = std::exp(-f.value) * (b.s - b.s_hat) - (n - 1) * std::exp(-f.value) * lap.real();
  return out;
}

}  // namespace hermlab
