#pragma once

// Metric jets: h_{i jbar} at a point with its first and mixed second Wirtinger
// derivatives, from closed-form evaluators or by finite differences of a
// black-box metric function.

#include <Eigen/Dense>

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "hermlab/core.hpp"
#include "hermlab/finite_difference.hpp"
#include "hermlab/forms.hpp"

namespace hermlab {

enum class JetSource { analytic, finite_difference };

inline const char* to_string(JetSource s) { return s == JetSource::analytic ? "analytic" : "fd"; }

struct MetricJet {
  Point point;
  Eigen::MatrixXcd h;  // h(i, j) = h_{i jbar}
  Tensor3 dh;          // dh(k, i, j) = d_k h_{i jbar}
  Tensor4 ddbar_h;     // ddbar_h(k, l, i, j) = d_k d_lbar h_{i jbar}
  JetSource source = JetSource::analytic;

  int dim() const { return static_cast<int>(h.rows()); }
  // d_kbar h_{i jbar} = conj(d_k h_{j ibar})
  cplx dbar_h(int k, int i, int j) const { return std::conj(dh(k, j, i)); }

  static MetricJet zero(const Point& z, JetSource source = JetSource::analytic) {
    const int n = static_cast<int>(z.size());
    MetricJet j;
    j.point = z;
    j.h = Eigen::MatrixXcd::Zero(n, n);
    j.dh = Tensor3(n);
    j.ddbar_h = Tensor4(n);
    j.source = source;
    return j;
  }
};

// A real function f with d_i f and d_i d_jbar f at a point.
struct ScalarJet {
  double value = 0.0;
  std::vector<cplx> df;     // d_i f
  Eigen::MatrixXcd ddbar_f;  // ddbar_f(i, j) = d_i d_jbar f

  int dim() const { return static_cast<int>(df.size()); }
  static ScalarJet zero(int n) { return {0.0, std::vector<cplx>(n), Eigen::MatrixXcd::Zero(n, n)}; }
};

// Admissible region of a chart: the open ball |z| < radius (infinite for C^n).
struct DomainGuard {
  double radius = std::numeric_limits<double>::infinity();

  bool admits(const Point& z) const { return std::sqrt(norm2(z)) < radius; }
  std::string describe() const {
    return std::isinf(radius) ? std::string("C^n") : "|z| < " + std::to_string(radius);
  }
};

using MetricFunction = std::function<Eigen::MatrixXcd(const Point&)>;
using JetFunction = std::function<MetricJet(const Point&)>;

struct MetricSpec {
  std::string id;
  int n = 0;
  std::map<std::string, double> params;
  DomainGuard guard;
  // Default radius for sampling points (always inside the guard).
  double sample_radius = 1.0;
  MetricFunction metric;     // h at a point; always present
  JetFunction analytic_jet;  // empty for metrics that only support the FD path
  // Optional JSON description (custom / random_poly expression trees).
  std::string expression_json;

  bool has_analytic_jet() const { return static_cast<bool>(analytic_jet); }
};

struct JetOptions {
  // nullopt picks analytic when the spec provides it and FD otherwise.
  std::optional<JetSource> source;
  double fd_step = 1e-3;
  // Off only for neighbour samples taken by field differencing near the guard.
  bool enforce_guard = true;
};

inline MetricJet finite_difference_jet(const MetricFunction& metric_fn, const Point& z, double step) {
  const int n = static_cast<int>(z.size());
  auto f = [&](const Point& p) -> Eigen::MatrixXcd { return metric_fn(p); };
  MetricJet jet = MetricJet::zero(z, JetSource::finite_difference);
  jet.h = fd::sample(f, z);
  if (jet.h.rows() != n || jet.h.cols() != n) throw ConfigError("metric function returned wrong shape");
  const auto [d, dbar] = fd::wirtinger_gradient(f, z, step);
  (void)dbar;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) jet.dh(k, i, j) = d[k](i, j);
  const auto hess = fd::wirtinger_mixed_hessian(f, z, step);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) jet.ddbar_h(k, l, i, j) = hess[static_cast<std::size_t>(k) * n + l](i, j);
  return jet;
}

inline HermitianMatrixPair inverse_metric(const MetricJet& jet) { return HermitianMatrixPair(jet.h); }

struct JetValidation {
  double hermiticity = 0.0;      // max |h_{i jbar} - conj(h_{j ibar})|
  double ddbar_symmetry = 0.0;   // max |d_k d_lbar h_{i jbar} - conj(d_l d_kbar h_{j ibar})|
  double min_eigenvalue = 0.0;
  bool positive_definite = false;

  double max_violation() const { return std::max(hermiticity, ddbar_symmetry); }
};

inline JetValidation validate_jet(const MetricJet& jet, double eigen_floor = 1e-10) {
  const int n = jet.dim();
  JetValidation v;
  v.hermiticity = (jet.h - jet.h.adjoint()).cwiseAbs().maxCoeff();
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          v.ddbar_symmetry = std::max(
              v.ddbar_symmetry, std::abs(jet.ddbar_h(k, l, i, j) - std::conj(jet.ddbar_h(l, k, j, i))));
  const Eigen::MatrixXcd herm = 0.5 * (jet.h + jet.h.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm, Eigen::EigenvaluesOnly);
  v.min_eigenvalue = es.eigenvalues().minCoeff();
  v.positive_definite = v.min_eigenvalue > eigen_floor;
  return v;
}

inline MetricJet evaluate_jet(const MetricSpec& spec, const Point& z, const JetOptions& opt = {}) {
  if (static_cast<int>(z.size()) != spec.n)
    throw ConfigError("point has " + std::to_string(z.size()) + " coordinates, metric '" + spec.id +
                      "' expects " + std::to_string(spec.n));
  for (const auto& c : z)
    if (!fd::finite_value(c)) throw NumericError("point has non-finite coordinates");
  if (opt.enforce_guard && !spec.guard.admits(z))
    throw DomainError("point outside the domain of '" + spec.id + "' (" + spec.guard.describe() + ")");
  const JetSource src =
      opt.source.value_or(spec.has_analytic_jet() ? JetSource::analytic : JetSource::finite_difference);
  MetricJet jet;
  if (src == JetSource::analytic) {
    if (!spec.has_analytic_jet()) throw ConfigError("metric '" + spec.id + "' has no analytic jet");
    jet = spec.analytic_jet(z);
    jet.source = JetSource::analytic;
  } else {
    jet = finite_difference_jet(spec.metric, z, opt.fd_step);
  }
  const auto v = validate_jet(jet);
  if (!v.positive_definite)
    throw MetricError("metric '" + spec.id + "' is not positive definite at the point (min eigenvalue " +
                      std::to_string(v.min_eigenvalue) + ")");
  return jet;
}

// Jet of e^f h from the jets of h and f at the same point.
inline MetricJet conformal_jet(const MetricJet& base, const ScalarJet& f) {
  const int n = base.dim();
  if (f.dim() != n) throw ConfigError("conformal_jet: dimension mismatch");
  const double ef = std::exp(f.value);
  MetricJet out = MetricJet::zero(base.point, base.source);
  out.h = ef * base.h;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out.dh(k, i, j) = ef * (f.df[k] * base.h(i, j) + base.dh(k, i, j));
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      const cplx fl_bar = std::conj(f.df[l]);
      const cplx coeff = f.ddbar_f(k, l) + f.df[k] * fl_bar;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          out.ddbar_h(k, l, i, j) = ef * (coeff * base.h(i, j) + f.df[k] * base.dbar_h(l, i, j) +
                                          fl_bar * base.dh(k, i, j) + base.ddbar_h(k, l, i, j));
    }
  }
  return out;
}

// Relabel coordinates: new coordinate a is old coordinate perm[a].
inline Point permute_point(const Point& z, const std::vector<int>& perm) {
  Point out(z.size());
  for (std::size_t a = 0; a < z.size(); ++a) out[a] = z[perm[a]];
  return out;
}

inline Point unpermute_point(const Point& zp, const std::vector<int>& perm) {
  Point out(zp.size());
  for (std::size_t a = 0; a < zp.size(); ++a) out[perm[a]] = zp[a];
  return out;
}

inline MetricSpec permute_coordinates(const MetricSpec& spec, const std::vector<int>& perm) {
  const int n = spec.n;
  std::vector<int> check = perm;
  std::sort(check.begin(), check.end());
  std::vector<int> iota(n);
  std::iota(iota.begin(), iota.end(), 0);
  if (check != iota) throw ConfigError("permute_coordinates: not a permutation of 0..n-1");

  MetricSpec out = spec;
  out.id = spec.id + "[permuted]";
  const auto base_metric = spec.metric;
  out.metric = [base_metric, perm, n](const Point& zp) {
    const Eigen::MatrixXcd h = base_metric(unpermute_point(zp, perm));
    Eigen::MatrixXcd hp(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) hp(a, b) = h(perm[a], perm[b]);
    return hp;
  };
  if (spec.has_analytic_jet()) {
    const auto base_jet = spec.analytic_jet;
    out.analytic_jet = [base_jet, perm, n](const Point& zp) {
      const MetricJet j = base_jet(unpermute_point(zp, perm));
      MetricJet o = MetricJet::zero(zp, j.source);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) o.h(a, b) = j.h(perm[a], perm[b]);
      for (int k = 0; k < n; ++k)
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) o.dh(k, a, b) = j.dh(perm[k], perm[a], perm[b]);
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
              o.ddbar_h(k, l, a, b) = j.ddbar_h(perm[k], perm[l], perm[a], perm[b]);
      return o;
    };
  }
  return out;
}

}  // namespace hermlab
