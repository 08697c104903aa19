#pragma once

// Pointwise exterior algebra of complex (p,q)-forms on C^n.
//
// A (p,q)-form is stored on the canonical basis dz^I ^ dzbar^J, I and J
// strictly increasing, with no 1/(p!q!) prefactor: the coefficient at (I,J) is
// the fully antisymmetric component phi_{I Jbar}. All holomorphic factors are
// ordered before the anti-holomorphic ones. Internally a monomial is a bitmask
// over 2n generators, bits [0,n) for dz^i and [n,2n) for dzbar^j, so that the
// wedge sign is the parity of the generator inversions.

#include <Eigen/Dense>

#include <array>
#include <bit>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "hermlab/core.hpp"

namespace hermlab {

class IllConditionedError : public MetricError {
 public:
  using MetricError::MetricError;
};

namespace detail {

// Size-p subsets of {0..n-1} as bitmasks in lexicographic order of their
// sorted index tuples, plus the inverse lookup mask -> rank.
struct SubsetTable {
  std::vector<unsigned> masks;
  std::array<int, (1u << kMaxDimension)> rank{};
};

inline const SubsetTable& subsets(int n, int p) {
  static const auto tables = [] {
    std::vector<std::vector<SubsetTable>> t(kMaxDimension + 1);
    for (int dim = 0; dim <= kMaxDimension; ++dim) {
      t[dim].resize(dim + 1);
      for (int size = 0; size <= dim; ++size) {
        auto& tab = t[dim][size];
        tab.rank.fill(-1);
        std::vector<int> idx(size);
        for (int i = 0; i < size; ++i) idx[i] = i;
        while (true) {
          unsigned m = 0;
          for (int i : idx) m |= 1u << i;
          tab.rank[m] = static_cast<int>(tab.masks.size());
          tab.masks.push_back(m);
          int pos = size - 1;
          while (pos >= 0 && idx[pos] == dim - size + pos) --pos;
          if (pos < 0) break;
          ++idx[pos];
          for (int i = pos + 1; i < size; ++i) idx[i] = idx[i - 1] + 1;
        }
      }
    }
    return t;
  }();
  return tables[n][p];
}

// Number of bits of `mask` strictly below bit `bit`.
inline int bits_below(unsigned mask, int bit) {
  return std::popcount(mask & ((1u << bit) - 1u));
}

// Sign of moving the generators of b past those of a when concatenating
// a ^ b into sorted order: (-1)^{#{(x in a, y in b) : x > y}}.
inline int wedge_sign(unsigned a, unsigned b) {
  int inversions = 0;
  while (b) {
    const int y = std::countr_zero(b);
    b &= b - 1;
    inversions += std::popcount(a >> (y + 1));
  }
  return (inversions & 1) ? -1 : 1;
}

inline double odd_sign(int k) { return (k & 1) ? -1.0 : 1.0; }

}  // namespace detail

// Pointwise metric data: h_{i jbar} and h^{i jbar}, the latter in the
// transposed-inverse convention sum_j h^{k jbar} h_{i jbar} = delta_i^k.
class HermitianMatrixPair {
 public:
  // Validates Hermiticity, positive definiteness (eigenvalue floor) and the
  // condition number before inverting.
  explicit HermitianMatrixPair(Eigen::MatrixXcd h, double eigen_floor = 1e-10,
                               double max_condition = 1e12)
      : h_(std::move(h)) {
    const int n = static_cast<int>(h_.rows());
    if (n < 1 || n > kMaxDimension || h_.cols() != n)
      throw ConfigError("metric must be square with 1 <= n <= " + std::to_string(kMaxDimension));
    if (!h_.allFinite()) throw NumericError("metric has non-finite entries");
    const double asym = (h_ - h_.adjoint()).cwiseAbs().maxCoeff();
    if (asym > 1e-8 * (1.0 + h_.cwiseAbs().maxCoeff()))
      throw MetricError("metric is not Hermitian (violation " + std::to_string(asym) + ")");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h_, Eigen::EigenvaluesOnly);
    min_eigen_ = es.eigenvalues().minCoeff();
    max_eigen_ = es.eigenvalues().maxCoeff();
    if (!(min_eigen_ > eigen_floor))
      throw MetricError("metric is not positive definite (min eigenvalue " +
                        std::to_string(min_eigen_) + ")");
    if (max_eigen_ / min_eigen_ > max_condition)
      throw IllConditionedError("metric condition number exceeds " + std::to_string(max_condition));
    h_inv_ = h_.inverse().transpose();
  }

  int dim() const { return static_cast<int>(h_.rows()); }
  // h(i, j) = h_{i jbar}
  const Eigen::MatrixXcd& h() const { return h_; }
  // h_inv(i, j) = h^{i jbar}
  const Eigen::MatrixXcd& h_inv() const { return h_inv_; }
  double min_eigenvalue() const { return min_eigen_; }
  double condition_number() const { return max_eigen_ / min_eigen_; }

 private:
  Eigen::MatrixXcd h_;
  Eigen::MatrixXcd h_inv_;
  double min_eigen_ = 0.0;
  double max_eigen_ = 0.0;
};

class Form {
 public:
  Form() = default;
  Form(int n, int p, int q) : n_(n), p_(p), q_(q) {
    if (n < 0 || n > kMaxDimension)
      throw ConfigError("form dimension must lie in [0, " + std::to_string(kMaxDimension) + "]");
    if (p < 0 || q < 0 || p > n || q > n)
      throw ConfigError("bidegree (" + std::to_string(p) + "," + std::to_string(q) +
                        ") out of range for n=" + std::to_string(n));
    coeffs_.assign(static_cast<std::size_t>(binomial(n, p) * binomial(n, q)), cplx{});
  }

  static Form scalar(int n, cplx value) {
    Form f(n, 0, 0);
    f.coeffs_[0] = value;
    return f;
  }
  static Form dz(int n, int i) {
    Form f(n, 1, 0);
    f.at(1u << i, 0u) = 1.0;
    return f;
  }
  static Form dzbar(int n, int j) {
    Form f(n, 0, 1);
    f.at(0u, 1u << j) = 1.0;
    return f;
  }

  int dim() const { return n_; }
  int p() const { return p_; }
  int q() const { return q_; }
  int degree() const { return p_ + q_; }
  std::size_t size() const { return coeffs_.size(); }

  std::size_t index(unsigned holo, unsigned anti) const {
    const auto& ti = detail::subsets(n_, p_);
    const auto& tj = detail::subsets(n_, q_);
    return static_cast<std::size_t>(ti.rank[holo]) * tj.masks.size() +
           static_cast<std::size_t>(tj.rank[anti]);
  }
  unsigned holo_mask(std::size_t idx) const {
    return detail::subsets(n_, p_).masks[idx / detail::subsets(n_, q_).masks.size()];
  }
  unsigned anti_mask(std::size_t idx) const {
    const auto& tj = detail::subsets(n_, q_);
    return tj.masks[idx % tj.masks.size()];
  }
  // Generator mask over 2n bits.
  unsigned full_mask(std::size_t idx) const { return holo_mask(idx) | (anti_mask(idx) << n_); }

  cplx& at(unsigned holo, unsigned anti) { return coeffs_[index(holo, anti)]; }
  cplx at(unsigned holo, unsigned anti) const { return coeffs_[index(holo, anti)]; }
  cplx& operator[](std::size_t idx) { return coeffs_[idx]; }
  const cplx& operator[](std::size_t idx) const { return coeffs_[idx]; }
  // Adds c * (monomial with generator mask `full`) in canonical order.
  void add_monomial(unsigned full, cplx c) {
    const unsigned lo = (1u << n_) - 1u;
    at(full & lo, full >> n_) += c;
  }

  std::span<const cplx> coeffs() const { return coeffs_; }
  std::span<cplx> coeffs() { return coeffs_; }

  double max_abs() const {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
  }
  bool same_shape(const Form& o) const { return n_ == o.n_ && p_ == o.p_ && q_ == o.q_; }

  Form& operator+=(const Form& o) {
    check_shape(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  Form& operator-=(const Form& o) {
    check_shape(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  Form& operator*=(cplx s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
  }
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(Form a, cplx s) { return a *= s; }
  friend Form operator*(cplx s, Form a) { return a *= s; }
  friend Form operator*(double s, Form a) { return a *= cplx(s); }
  friend Form operator-(Form a) { return a *= cplx(-1.0); }

 private:
  void check_shape(const Form& o) const {
    if (!same_shape(o))
      throw ConfigError("form shape mismatch: (" + std::to_string(p_) + "," + std::to_string(q_) +
                        ") vs (" + std::to_string(o.p_) + "," + std::to_string(o.q_) + ")");
  }

  int n_ = 0;
  int p_ = 0;
  int q_ = 0;
  std::vector<cplx> coeffs_;
};

inline double max_abs_diff(const Form& a, const Form& b) { return (a - b).max_abs(); }

inline Form wedge(const Form& a, const Form& b) {
  if (a.dim() != b.dim()) throw ConfigError("wedge: dimension mismatch");
  const int n = a.dim();
  if (a.p() + b.p() > n || a.q() + b.q() > n) throw ConfigError("wedge: degree overflow");
  Form out(n, a.p() + b.p(), a.q() + b.q());
  for (std::size_t x = 0; x < a.size(); ++x) {
    if (a[x] == cplx{}) continue;
    const unsigned ma = a.full_mask(x);
    for (std::size_t y = 0; y < b.size(); ++y) {
      if (b[y] == cplx{}) continue;
      const unsigned mb = b.full_mask(y);
      if (ma & mb) continue;
      out.add_monomial(ma | mb, static_cast<double>(detail::wedge_sign(ma, mb)) * a[x] * b[y]);
    }
  }
  return out;
}

inline Form wedge_power(const Form& a, int r) {
  Form out = Form::scalar(a.dim(), 1.0);
  for (int i = 0; i < r; ++i) out = wedge(out, a);
  return out;
}

// Complex conjugate: (p,q) -> (q,p), coefficient (J,I) = (-1)^{pq} conj(phi_{I J}).
inline Form conj(const Form& a) {
  Form out(a.dim(), a.q(), a.p());
  const double s = detail::odd_sign(a.p() * a.q());
  for (std::size_t x = 0; x < a.size(); ++x)
    out.at(a.anti_mask(x), a.holo_mask(x)) = s * std::conj(a[x]);
  return out;
}

// Contraction with d/dz^i (holomorphic) or d/dzbar^j (anti-holomorphic) on a
// single generator. Degree-0 inputs or inputs without the generator give zero.
inline Form interior_generator(int bit, const Form& a, bool anti) {
  const int n = a.dim();
  if ((anti ? a.q() : a.p()) == 0) return Form(n, a.p(), a.q());
  Form out(n, a.p() - (anti ? 0 : 1), a.q() - (anti ? 1 : 0));
  const int g = anti ? n + bit : bit;
  for (std::size_t x = 0; x < a.size(); ++x) {
    const unsigned m = a.full_mask(x);
    if (!(m & (1u << g)) || a[x] == cplx{}) continue;
    out.add_monomial(m & ~(1u << g), detail::odd_sign(detail::bits_below(m, g)) * a[x]);
  }
  return out;
}

// iota_X for X = X^i d/dz^i.
inline Form interior_product(std::span<const cplx> x, const Form& a) {
  if (static_cast<int>(x.size()) != a.dim()) throw ConfigError("interior_product: vector size mismatch");
  if (a.p() == 0) return Form(a.dim(), a.p(), a.q());
  Form out(a.dim(), a.p() - 1, a.q());
  for (int i = 0; i < a.dim(); ++i)
    if (x[i] != cplx{}) out += x[i] * interior_generator(i, a, false);
  return out;
}

// iota_Y for Y = Y^j d/dzbar^j.
inline Form interior_product_conj(std::span<const cplx> y, const Form& a) {
  if (static_cast<int>(y.size()) != a.dim()) throw ConfigError("interior_product: vector size mismatch");
  if (a.q() == 0) return Form(a.dim(), a.p(), a.q());
  Form out(a.dim(), a.p(), a.q() - 1);
  for (int j = 0; j < a.dim(); ++j)
    if (y[j] != cplx{}) out += y[j] * interior_generator(j, a, true);
  return out;
}

// Metric dual of X = X^j d/dz^j under the sesquilinear pairing: the (1,0)-form
// sum_i (sum_j h_{i jbar} conj(X^j)) dz^i, so that <iota_X phi, psi> = <phi, X~ ^ psi>.
inline Form metric_dual(std::span<const cplx> x, const HermitianMatrixPair& g) {
  const int n = g.dim();
  Form out(n, 1, 0);
  for (int i = 0; i < n; ++i) {
    cplx c{};
    for (int j = 0; j < n; ++j) c += g.h()(i, j) * std::conj(x[j]);
    out.at(1u << i, 0u) = c;
  }
  return out;
}

// Metric dual of Y = Y^j d/dzbar^j: the (0,1)-form sum_i (sum_j h_{j ibar} conj(Y^j)) dzbar^i.
inline Form metric_dual_conj(std::span<const cplx> y, const HermitianMatrixPair& g) {
  const int n = g.dim();
  Form out(n, 0, 1);
  for (int i = 0; i < n; ++i) {
    cplx c{};
    for (int j = 0; j < n; ++j) c += g.h()(j, i) * std::conj(y[j]);
    out.at(0u, 1u << i) = c;
  }
  return out;
}

namespace detail {

// det(h^{I_a, I'_b}) for every pair of size-k subsets (I, I').
inline Eigen::MatrixXcd minor_table(const Eigen::MatrixXcd& h_inv, int k) {
  const int n = static_cast<int>(h_inv.rows());
  const auto& tab = subsets(n, k);
  const auto m = static_cast<Eigen::Index>(tab.masks.size());
  Eigen::MatrixXcd out(m, m);
  std::vector<int> rows, cols;
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) {
      if (k == 0) {
        out(a, b) = 1.0;
        continue;
      }
      rows.clear();
      cols.clear();
      for (int i = 0; i < n; ++i) {
        if (tab.masks[a] & (1u << i)) rows.push_back(i);
        if (tab.masks[b] & (1u << i)) cols.push_back(i);
      }
      Eigen::MatrixXcd sub(k, k);
      for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c) sub(r, c) = h_inv(rows[r], cols[c]);
      out(a, b) = sub.determinant();
    }
  }
  return out;
}

}  // namespace detail

// <phi, psi> = (1/p!q!) h^{i1 j1bar}...h^{k1 l1bar}... phi_{I Lbar} conj(psi_{J Kbar}),
// i.e. on canonical coefficients sum phi_{IJ} conj(psi_{I'J'}) det h^{I,I'} det h^{J',J}.
inline cplx inner_product(const Form& a, const Form& b, const HermitianMatrixPair& g) {
  if (!a.same_shape(b) || a.dim() != g.dim()) throw ConfigError("inner_product: bidegree mismatch");
  const auto dp = detail::minor_table(g.h_inv(), a.p());
  const auto dq = detail::minor_table(g.h_inv(), a.q());
  const int n = a.dim();
  const auto& tp = detail::subsets(n, a.p());
  const auto& tq = detail::subsets(n, a.q());
  cplx sum{};
  for (std::size_t x = 0; x < a.size(); ++x) {
    if (a[x] == cplx{}) continue;
    const int ia = tp.rank[a.holo_mask(x)];
    const int ja = tq.rank[a.anti_mask(x)];
    for (std::size_t y = 0; y < b.size(); ++y) {
      if (b[y] == cplx{}) continue;
      const int ib = tp.rank[b.holo_mask(y)];
      const int jb = tq.rank[b.anti_mask(y)];
      sum += a[x] * std::conj(b[y]) * dp(ia, ib) * dq(jb, ja);
    }
  }
  return sum;
}

inline double norm_squared(const Form& a, const HermitianMatrixPair& g) {
  return inner_product(a, a, g).real();
}

// omega = sqrt(-1) h_{i jbar} dz^i ^ dzbar^j
inline Form omega_form(const HermitianMatrixPair& g) {
  const int n = g.dim();
  Form w(n, 1, 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w.at(1u << i, 1u << j) = kI * g.h()(i, j);
  return w;
}

// dv = omega^n / n!
inline Form volume_form(const HermitianMatrixPair& g) {
  return wedge_power(omega_form(g), g.dim()) * cplx(1.0 / factorial(g.dim()));
}

inline Form lefschetz_L(const Form& a, const Form& omega) { return wedge(omega, a); }

// Lambda = sqrt(-1) h^{i jbar} iota_i iota_jbar
inline Form lambda_contract(const Form& a, const HermitianMatrixPair& g) {
  const int n = a.dim();
  if (n != g.dim()) throw ConfigError("lambda_contract: dimension mismatch");
  if (a.p() == 0 || a.q() == 0) {
    return Form(n, std::max(a.p() - 1, 0), std::max(a.q() - 1, 0));
  }
  Form out(n, a.p() - 1, a.q() - 1);
  for (std::size_t x = 0; x < a.size(); ++x) {
    if (a[x] == cplx{}) continue;
    const unsigned m = a.full_mask(x);
    const unsigned holo = a.holo_mask(x);
    const unsigned anti = a.anti_mask(x);
    for (int j = 0; j < n; ++j) {
      if (!(anti & (1u << j))) continue;
      const unsigned m1 = m & ~(1u << (n + j));
      const double s1 = detail::odd_sign(detail::bits_below(m, n + j));
      for (int i = 0; i < n; ++i) {
        if (!(holo & (1u << i))) continue;
        const double s2 = detail::odd_sign(detail::bits_below(m1, i));
        out.add_monomial(m1 & ~(1u << i), kI * g.h_inv()(i, j) * (s1 * s2) * a[x]);
      }
    }
  }
  return out;
}

inline Form lambda_power(const Form& a, const HermitianMatrixPair& g, int r) {
  Form out = a;
  for (int i = 0; i < r; ++i) out = lambda_contract(out, g);
  return out;
}

// Hodge star *: (p,q) -> (n-q, n-p), the unique complex-linear operator with
// phi ^ *conj(psi) = <phi, psi> dv. Solved on the canonical basis: pairing a
// basis element with its complement is a signed permutation, so each output
// coefficient is <e_m, conj(chi)> dv_top / sign.
inline Form hodge_star(const Form& chi, const HermitianMatrixPair& g) {
  const int n = chi.dim();
  if (n != g.dim()) throw ConfigError("hodge_star: dimension mismatch");
  const int a = chi.p();
  const int b = chi.q();
  const Form target = conj(chi);  // bidegree (b, a)
  const cplx dv_top = volume_form(g)[0];
  const unsigned all = (1u << n) - 1u;
  const unsigned top = all | (all << n);

  const auto dp = detail::minor_table(g.h_inv(), b);
  const auto dq = detail::minor_table(g.h_inv(), a);
  const auto& tp = detail::subsets(n, b);
  const auto& tq = detail::subsets(n, a);

  Form out(n, n - b, n - a);
  for (std::size_t im = 0; im < tp.masks.size(); ++im) {
    for (std::size_t jm = 0; jm < tq.masks.size(); ++jm) {
      const unsigned hm = tp.masks[im];
      const unsigned am = tq.masks[jm];
      cplx ip{};
      for (std::size_t y = 0; y < target.size(); ++y) {
        if (target[y] == cplx{}) continue;
        ip += std::conj(target[y]) * dp(static_cast<Eigen::Index>(im), tp.rank[target.holo_mask(y)]) *
              dq(tq.rank[target.anti_mask(y)], static_cast<Eigen::Index>(jm));
      }
      if (ip == cplx{}) continue;
      const unsigned em = hm | (am << n);
      const unsigned ec = top & ~em;
      const int s = detail::wedge_sign(em, ec);
      out.add_monomial(ec, ip * dv_top / static_cast<double>(s));
    }
  }
  return out;
}

// Value of a top-degree (n,n) form as a multiple of dv, i.e. *(top form).
inline cplx top_form_ratio(const Form& top, const HermitianMatrixPair& g) {
  if (top.p() != g.dim() || top.q() != g.dim()) throw ConfigError("top_form_ratio: not an (n,n)-form");
  return top[0] / volume_form(g)[0];
}

struct PrimitivityReport {
  bool primitive = false;
  double lambda_norm = 0.0;         // max |coeff of Lambda a|
  double norm_identity_residual = 0.0;  // | |a^omega|^2 - (n-k)|a|^2 |, normalized
};

// Lambda a = 0 within tol; for primitive a also evaluates |a ^ omega|^2 = (n-k)|a|^2.
inline PrimitivityReport is_primitive(const Form& a, const HermitianMatrixPair& g, double tol) {
  PrimitivityReport r;
  r.lambda_norm = lambda_contract(a, g).max_abs();
  r.primitive = r.lambda_norm < tol;
  const int n = a.dim();
  const int k = a.degree();
  if (a.p() + 1 <= n && a.q() + 1 <= n) {
    const double lhs = norm_squared(wedge(a, omega_form(g)), g);
    const double rhs = (n - k) * norm_squared(a, g);
    r.norm_identity_residual = normalized_residual(std::abs(lhs - rhs), std::abs(lhs), std::abs(rhs));
  }
  return r;
}

}  // namespace hermlab
