#pragma once

// Pointwise identity checks. Each check compares two sides computed along
// different routes from the same MetricJet: the component route goes through
// curvature.hpp (Christoffels, torsion, R), the forms route through
// form_jet.hpp and the Hodge star. Fields that involve the star or the inverse
// metric are differentiated by sampling jets at neighbouring points.

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "hermlab/catalog.hpp"
#include "hermlab/curvature.hpp"
#include "hermlab/finite_difference.hpp"
#include "hermlab/form_jet.hpp"
#include "hermlab/forms.hpp"
#include "hermlab/jets.hpp"

namespace hermlab {

inline const std::vector<std::string>& all_check_ids() {
  static const std::vector<std::string> ids = {
      "lee",           "tau1",           "scal2",           "c1",
      "c2",            "c3",             "ricci2",          "L4",
      "dbar1",         "xi-lambda",      "lck-torsion",     "lck-ricci",
      "lck-norm",      "surface-gap",    "sum1",            "sum2",
      "conf-313",      "conf-ssh2",      "gauduchon-L41",   "L42",
      "primitive-L42", "kgauduchon-L44", "kgauduchon-P45",  "kgauduchon-pak",
      "cor46",         "cor47",          "star1f",          "star-involution",
      "lefschetz-commutator", "primitive-norm"};
  return ids;
}

struct SuiteOptions {
  JetOptions jet;
  std::optional<double> tol;        // default: 1e-8 analytic, 1e-4 FD
  std::optional<double> lck_gate;   // default: 1e-7 analytic, 1e-4 FD
  // Step for differencing fields built with the star or the inverse metric;
  // default 2.5e-4 on analytic jets, 1e-3 on FD jets.
  std::optional<double> field_step;
  std::vector<std::string> checks;  // empty: all
  int threads = 0;                  // 0: HERMLAB_THREADS or hardware concurrency
  int directions = 200;             // random directions for H sampling

  JetSource resolved_source(const MetricSpec& spec) const {
    return jet.source.value_or(spec.has_analytic_jet() ? JetSource::analytic : JetSource::finite_difference);
  }
  double resolved_tol(const MetricSpec& spec) const {
    return tol.value_or(resolved_source(spec) == JetSource::analytic ? 1e-8 : 1e-4);
  }
  double resolved_field_step(const MetricSpec& spec) const {
    return field_step.value_or(resolved_source(spec) == JetSource::analytic ? 2.5e-4 : 1e-3);
  }
  double resolved_gate(const MetricSpec& spec) const {
    return lck_gate.value_or(resolved_source(spec) == JetSource::analytic ? 1e-7 : 1e-4);
  }
};

struct CheckValue {
  double residual = 0.0;
  bool applicable = true;
  double lhs = 0.0;  // max-abs magnitude of each side
  double rhs = 0.0;
};

namespace detail {

inline CheckValue compare(const Form& a, const Form& b) {
  const double la = a.max_abs(), lb = b.max_abs();
  return {normalized_residual(max_abs_diff(a, b), la, lb), true, la, lb};
}

inline CheckValue compare(cplx a, cplx b) {
  return {normalized_residual(std::abs(a - b), std::abs(a), std::abs(b)), true, std::abs(a), std::abs(b)};
}

inline CheckValue compare(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  const double la = a.cwiseAbs().maxCoeff(), lb = b.cwiseAbs().maxCoeff();
  return {normalized_residual((a - b).cwiseAbs().maxCoeff(), la, lb), true, la, lb};
}

inline CheckValue compare(const Tensor4& a, const Tensor4& b) {
  const double la = a.max_abs(), lb = b.max_abs();
  return {normalized_residual(max_abs_diff(a, b), la, lb), true, la, lb};
}

inline CheckValue worst(std::initializer_list<CheckValue> vs) {
  CheckValue out{0.0, true, 0.0, 0.0};
  for (const auto& v : vs) {
    if (v.residual >= out.residual) out = v;
  }
  return out;
}

inline CheckValue inapplicable() { return {0.0, false, 0.0, 0.0}; }

// sqrt(-1) A_{i jbar} dz^i ^ dzbar^j
inline Form one_one_form(const Eigen::MatrixXcd& A) {
  const int n = static_cast<int>(A.rows());
  Form f(n, 1, 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) f.at(1u << i, 1u << j) = kI * A(i, j);
  return f;
}

inline Form one_zero_form(const std::vector<cplx>& v) {
  const int n = static_cast<int>(v.size());
  Form f(n, 1, 0);
  for (int i = 0; i < n; ++i) f.at(1u << i, 0u) = v[i];
  return f;
}

inline Form random_form(int n, int p, int q, std::mt19937_64& rng) {
  Form f(n, p, q);
  for (std::size_t x = 0; x < f.size(); ++x) {
    const double re = 2.0 * unit_uniform(rng) - 1.0;
    const double im = 2.0 * unit_uniform(rng) - 1.0;
    f[x] = cplx(re, im);
  }
  return f;
}

inline Eigen::VectorXcd pack(std::initializer_list<const Form*> forms) {
  Eigen::Index total = 0;
  for (const Form* f : forms) total += static_cast<Eigen::Index>(f->size());
  Eigen::VectorXcd v(total);
  Eigen::Index at = 0;
  for (const Form* f : forms)
    for (std::size_t x = 0; x < f->size(); ++x) v(at++) = (*f)[x];
  return v;
}

inline Form unpack(const Eigen::VectorXcd& v, Eigen::Index& at, int n, int p, int q) {
  Form f(n, p, q);
  for (std::size_t x = 0; x < f.size(); ++x) f[x] = v(at++);
  return f;
}

}  // namespace detail

// All quantities at one point, computed on demand.
class PointContext {
 public:
  PointContext(const MetricSpec& spec, const Point& z, const SuiteOptions& opt)
      : spec_(spec), z_(z), opt_(opt), n_(spec.n) {
    jet_ = evaluate_jet(spec, z, opt.jet);
    g_.emplace(jet_.h);
    bundle_ = compute_curvature(jet_);
    om_ = omega_jet(jet_);
  }

  int n() const { return n_; }
  const MetricJet& jet() const { return jet_; }
  const HermitianMatrixPair& g() const { return *g_; }
  const CurvatureBundle& bundle() const { return bundle_; }
  const Eigen::MatrixXcd& P() const { return g_->h_inv(); }
  const Form& omega() const { return om_.value; }

  const FormJet& omega_power(int k) {
    if (powers_.empty()) powers_.push_back(FormJet::constant(Form::scalar(n_, 1.0)));
    while (static_cast<int>(powers_.size()) <= k) powers_.push_back(wedge(powers_.back(), om_));
    return powers_[k];
  }

  const Form& del_omega() {
    if (!del_omega_) del_omega_ = del(om_);
    return *del_omega_;
  }
  const Form& delbar_omega() {
    if (!delbar_omega_) delbar_omega_ = delbar(om_);
    return *delbar_omega_;
  }

  // del* omega = -* delbar * omega and delbar* omega = -* del * omega, with
  // * omega = omega^{n-1} / (n-1)! differentiated through the jet.
  const Form& dstar_omega() {
    if (!dstar_) dstar_ = adjoints(jet_, *g_).first;
    return *dstar_;
  }
  const Form& dbarstar_omega() {
    if (!dbarstar_) dbarstar_ = adjoints(jet_, *g_).second;
    return *dbarstar_;
  }

  struct FieldDerivatives {
    Form ddstar_omega;        // del del* omega
    Form dbar_dbarstar_omega;  // delbar delbar* omega
    Form dstar_del_omega;     // del* del omega = -* delbar * del omega
    cplx dstar_tau;           // del* tau = -* delbar * tau
  };

  const FieldDerivatives& fields() {
    if (!fields_) fields_ = difference_fields();
    return *fields_;
  }

  const ConstantHTest& constant_H(double tol) {
    if (!constant_h_) constant_h_ = pointwise_constant_H_test(bundle_, jet_.h, tol, opt_.directions);
    return *constant_h_;
  }

  const LeeData& lee() {
    if (!lee_) lee_ = lee_form(jet_, bundle_);
    return *lee_;
  }

 private:
  static std::pair<Form, Form> adjoints(const MetricJet& jet, const HermitianMatrixPair& g) {
    const int n = jet.dim();
    const FormJet w = omega_jet(jet);
    const FormJet star_w = cplx(1.0 / factorial(n - 1)) * wedge_power(w, n - 1);
    return {-hodge_star(delbar(star_w), g), -hodge_star(del(star_w), g)};
  }

  FieldDerivatives difference_fields() const {
    const int n = n_;
    JetOptions nopt = opt_.jet;
    nopt.enforce_guard = false;
    const MetricSpec& spec = spec_;
    auto field = [&spec, nopt, n](const Point& p) -> Eigen::VectorXcd {
      const MetricJet jet = evaluate_jet(spec, p, nopt);
      const HermitianMatrixPair g(jet.h);
      const auto [dstar, dbarstar] = adjoints(jet, g);
      const Form star_domega = hodge_star(del(omega_jet(jet)), g);
      const CurvatureBundle b = compute_curvature(jet);
      const Form star_tau = hodge_star(detail::one_zero_form(b.tau), g);
      return detail::pack({&dstar, &dbarstar, &star_domega, &star_tau});
    };
    const auto [d, dbar] = fd::wirtinger_gradient(field, z_, opt_.resolved_field_step(spec_));

    FieldDerivatives out{Form(n, 1, 1), Form(n, 1, 1), Form(n, 1, 1), cplx{}};
    const int sp = std::max(n - 1, 0), sq = std::max(n - 2, 0);
    Form dbar_star_domega(n, sp, std::min(sq + 1, n));
    Form dbar_star_tau(n, n, n);
    for (int k = 0; k < n; ++k) {
      Eigen::Index at = 0;
      const Form dk_dstar = detail::unpack(d[k], at, n, 0, 1);
      at = 0;
      detail::unpack(dbar[k], at, n, 0, 1);
      const Form dkb_dbarstar = detail::unpack(dbar[k], at, n, 1, 0);
      const Form dkb_star_domega = detail::unpack(dbar[k], at, n, sp, sq);
      const Form dkb_star_tau = detail::unpack(dbar[k], at, n, n, n - 1);
      out.ddstar_omega += wedge(Form::dz(n, k), dk_dstar);
      out.dbar_dbarstar_omega += wedge(Form::dzbar(n, k), dkb_dbarstar);
      dbar_star_domega += wedge(Form::dzbar(n, k), dkb_star_domega);
      dbar_star_tau += wedge(Form::dzbar(n, k), dkb_star_tau);
    }
    out.dstar_del_omega = -hodge_star(dbar_star_domega, *g_);
    out.dstar_tau = -hodge_star(dbar_star_tau, *g_)[0];
    return out;
  }

  const MetricSpec& spec_;
  Point z_;
  SuiteOptions opt_;
  int n_;
  MetricJet jet_;
  std::optional<HermitianMatrixPair> g_;
  CurvatureBundle bundle_;
  FormJet om_;
  std::vector<FormJet> powers_;
  std::optional<Form> del_omega_, delbar_omega_, dstar_, dbarstar_;
  std::optional<FieldDerivatives> fields_;
  std::optional<ConstantHTest> constant_h_;
  std::optional<LeeData> lee_;
};

struct PointChecks {
  std::map<std::string, CheckValue> values;
  double lee_residual = 0.0;
  bool lck = false;
};

namespace detail {

inline bool wants(const std::vector<std::string>& filter, const std::string& id) {
  return filter.empty() || std::find(filter.begin(), filter.end(), id) != filter.end();
}

struct KGauduchonData {
  std::vector<double> star_value;  // * (sqrt(-1) ddbar omega^k ^ omega^{n-k-1}), k = 1..n-1
  std::vector<double> rhs;         // closed form
  std::vector<double> lambda_value;  // Lambda^{k+1}(sqrt(-1) ddbar omega^k) / (k+1)!, scaled
  std::vector<double> star_scaled;   // star_value / (n-k-1)!
  std::vector<CheckValue> pak;
};

}  // namespace detail

// Evaluate the requested checks at one point.
inline PointChecks check_point(const MetricSpec& spec, const Point& z, const SuiteOptions& opt,
                               const std::optional<ConformalDecomposition>& decomposition) {
  using namespace detail;
  PointContext ctx(spec, z, opt);
  const int n = ctx.n();
  const double tol = opt.resolved_tol(spec);
  const auto& b = ctx.bundle();
  const auto& g = ctx.g();
  const Eigen::MatrixXcd& P = ctx.P();
  const Form& w = ctx.omega();
  const auto& filter = opt.checks;
  PointChecks out;
  auto& V = out.values;

  out.lee_residual = ctx.lee().residual;
  out.lck = out.lee_residual < opt.resolved_gate(spec);

  const Form tau = one_zero_form(b.tau);
  const Form rho_gap = one_one_form(b.rho[0] - b.rho[1]);
  const double ds = b.s - b.s_hat;

  if (wants(filter, "lee")) {
    const Form lhs = del(ctx.omega_power(n - 1));
    const Form rhs = wedge(tau, ctx.omega_power(n - 1).value);
    V["lee"] = compare(lhs, rhs);
  }
  if (wants(filter, "tau1")) {
    const Form via_lambda = lambda_contract(ctx.del_omega(), g);
    const Form via_adjoint = -kI * ctx.dbarstar_omega();
    V["tau1"] = worst({compare(tau, via_lambda), compare(tau, via_adjoint), compare(via_lambda, via_adjoint)});
  }
  if (wants(filter, "scal2")) {
    V["scal2"] = compare(cplx(ds), inner_product(ctx.fields().ddstar_omega, w, g));
  }
  if (wants(filter, "c1") || wants(filter, "c2") || wants(filter, "c3")) {
    Tensor4 l1(n), r1(n), l2(n), r2(n), l3(n), r3(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            l1(i, j, k, l) = b.R(i, j, k, l) - b.R(k, j, i, l);
            r1(i, j, k, l) = -b.nablaT_bar(i, j, k, l);
            l2(i, j, k, l) = b.R(i, j, k, l) - b.R(i, l, k, j);
            r2(i, j, k, l) = -b.nablaT_hol(i, j, l, k);
            l3(i, j, k, l) = b.R(i, j, k, l) - b.R(k, l, i, j);
            r3(i, j, k, l) = -b.nablaT_bar(i, j, k, l) - b.nablaT_hol(k, j, l, i);
          }
    if (wants(filter, "c1")) V["c1"] = compare(l1, r1);
    if (wants(filter, "c2")) V["c2"] = compare(l2, r2);
    if (wants(filter, "c3")) V["c3"] = compare(l3, r3);
  }

  const bool need_ricci_terms = wants(filter, "ricci2") || wants(filter, "L4");
  if (need_ricci_terms) {
    const Form lam_ddbar = lambda_contract(kI * del_delbar(ctx.omega_power(1)), g);
    const Form lam_xi = lambda_contract(b.xi_sq, g);
    const auto& f = ctx.fields();
    if (wants(filter, "ricci2"))
      V["ricci2"] = compare(rho_gap, lam_ddbar + f.ddstar_omega + f.dbar_dbarstar_omega - lam_xi);
    if (wants(filter, "L4")) {
      Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(n, n);
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) A(k, l) += P(i, j) * b.nablaT_hol(i, j, l, k);
      V["L4"] = compare(one_one_form(A), lam_ddbar + f.ddstar_omega - lam_xi);
    }
  }
  if (wants(filter, "dbar1")) {
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) A(i, j) += P(k, l) * b.nablaT_bar(i, j, k, l);
    // -sqrt(-1) A_{i jbar} dz^i ^ dzbar^j
    V["dbar1"] = compare(ctx.fields().dbar_dbarstar_omega, -one_one_form(A));
  }
  if (wants(filter, "xi-lambda")) {
    V["xi-lambda"] = n >= 2 ? compare(lambda_contract(b.xi_sq, g), one_one_form(b.xi_lambda)) : inapplicable();
  }

  // LCK-gated checks. For n = 2 the torsion relation and the surface formula
  // hold for every metric.
  const bool lck_ok = out.lck || n == 2;
  if (wants(filter, "lck-torsion")) {
    if (lck_ok) {
      double diff = 0.0, lmax = 0.0, rmax = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k) {
            const cplx lhs = static_cast<double>(n - 1) * b.T_low(i, j, k);
            const cplx rhs = ctx.jet().h(j, k) * b.tau[i] - ctx.jet().h(i, k) * b.tau[j];
            diff = std::max(diff, std::abs(lhs - rhs));
            lmax = std::max(lmax, std::abs(lhs));
            rmax = std::max(rmax, std::abs(rhs));
          }
      V["lck-torsion"] = {normalized_residual(diff, lmax, rmax), true, lmax, rmax};
    } else {
      V["lck-torsion"] = inapplicable();
    }
  }
  if (wants(filter, "lck-ricci")) {
    const auto& f = ctx.fields();
    if (n == 2) {
      V["lck-ricci"] = compare(rho_gap, cplx(-ds) * w + f.ddstar_omega + f.dbar_dbarstar_omega);
    } else if (out.lck) {
      V["lck-ricci"] =
          compare(rho_gap, cplx(1.0 / (n - 1)) * (cplx(-ds) * w + cplx(static_cast<double>(n)) * f.ddstar_omega));
    } else {
      V["lck-ricci"] = inapplicable();
    }
  }
  if (wants(filter, "lck-norm")) {
    V["lck-norm"] = lck_ok ? compare(cplx(norm_squared(ctx.del_omega(), g)), cplx(b.tau_norm_squared(P) / (n - 1)))
                           : inapplicable();
  }
  if (wants(filter, "surface-gap")) {
    if (n == 2) {
      const auto& f = ctx.fields();
      V["surface-gap"] = compare(rho_gap, f.ddstar_omega - f.dstar_del_omega);
    } else {
      V["surface-gap"] = inapplicable();
    }
  }

  if (wants(filter, "sum1") || wants(filter, "sum2")) {
    const auto& t = ctx.constant_H(tol);
    if (t.is_constant) {
      // c read off H along one fixed direction, independent of the trace.
      const std::vector<cplx> X(n, cplx(1.0, 0.0));
      const double c = holomorphic_sectional_curvature(b.R, ctx.jet().h, X);
      const Eigen::MatrixXcd lhs = b.rho[0] + b.rho[1] + b.rho[2] + b.rho[2].adjoint();
      const Eigen::MatrixXcd rhs = 2.0 * (n + 1) * c * ctx.jet().h;
      if (wants(filter, "sum1")) V["sum1"] = compare(lhs, rhs);
      if (wants(filter, "sum2")) V["sum2"] = compare(cplx(b.s + b.s_hat), cplx(n * (n + 1.0) * c));
    } else {
      if (wants(filter, "sum1")) V["sum1"] = inapplicable();
      if (wants(filter, "sum2")) V["sum2"] = inapplicable();
    }
  }

  if (wants(filter, "conf-313") || wants(filter, "conf-ssh2")) {
    // Either the catalog decomposition omega = e^f omega_0, or the metric itself
    // as base with a generic test factor.
    MetricJet base;
    ScalarJet f;
    MetricJet direct;
    if (decomposition) {
      base = evaluate_jet(decomposition->base, z, opt.jet);
      f = decomposition->factor(z);
      direct = ctx.jet();
    } else {
      base = ctx.jet();
      f = generic_conformal_factor(z);
      direct = conformal_jet(base, f);
    }
    const CurvatureBundle bb = compute_curvature(base);
    const ConformalCurvature law = conformal_transform(base, bb, f);
    const CurvatureBundle db = decomposition ? ctx.bundle() : compute_curvature(direct);
    if (wants(filter, "conf-313"))
      V["conf-313"] = worst({compare(law.R, db.R), compare(law.rho1, db.rho[0]), compare(law.rho2, db.rho[1]),
                             compare(law.rho3, db.rho[2])});
    if (wants(filter, "conf-ssh2")) V["conf-ssh2"] = compare(cplx(law.scalar_gap), cplx(db.s - db.s_hat));
  }

  const double dstar_sq = (wants(filter, "gauduchon-L41") || n >= 3) ? norm_squared(ctx.dstar_omega(), g) : 0.0;
  if (wants(filter, "gauduchon-L41")) {
    const cplx lhs = top_form_ratio(kI * del_delbar(ctx.omega_power(n - 1)), g);
    const double rhs = factorial(n - 1) * (-ds + dstar_sq);
    V["gauduchon-L41"] = compare(lhs, cplx(rhs));
  }

  const bool n3 = n >= 3;
  const double domega_sq = n3 ? norm_squared(ctx.del_omega(), g) : 0.0;
  if (wants(filter, "L42")) {
    if (n3) {
      const Form prod = kI * wedge(ctx.del_omega(), ctx.delbar_omega());
      const cplx star_side =
          top_form_ratio(wedge(prod, ctx.omega_power(n - 3).value) * cplx(1.0 / factorial(n - 3)), g);
      const cplx lambda_side = lambda_power(prod, g, 3)[0];
      const double rhs = dstar_sq - domega_sq;
      V["L42"] = worst({compare(star_side, cplx(rhs)), compare(lambda_side, cplx(6.0 * rhs))});
    } else {
      V["L42"] = inapplicable();
    }
  }
  if (wants(filter, "primitive-L42")) {
    if (n3) {
      const Form alpha = ctx.del_omega() + kI * cplx(1.0 / (n - 1)) * wedge(w, ctx.dbarstar_omega());
      const Form lam = lambda_contract(alpha, g);
      CheckValue prim{normalized_residual(lam.max_abs(), alpha.max_abs(), 0.0), true, lam.max_abs(), 0.0};
      // * alpha = (-1)^p (sqrt(-1))^{k^2} L^{n-k} alpha / (n-k)!, p = 2, k = 3
      const Form rhs = kI * wedge(ctx.omega_power(n - 3).value, alpha) * cplx(1.0 / factorial(n - 3));
      V["primitive-L42"] = worst({prim, compare(hodge_star(alpha, g), rhs)});
    } else {
      V["primitive-L42"] = inapplicable();
    }
  }

  const bool want_k = wants(filter, "kgauduchon-L44") || wants(filter, "kgauduchon-P45") ||
                      wants(filter, "kgauduchon-pak") || wants(filter, "cor46") || wants(filter, "cor47");
  if (want_k) {
    if (n3) {
      CheckValue l44{0.0, true, 0.0, 0.0}, p45{0.0, true, 0.0, 0.0}, pak{0.0, true, 0.0, 0.0};
      std::vector<int> gauduchon_k;
      const Form ddbar_top = del_delbar(ctx.omega_power(n - 1));
      const Form domega_dbaromega = wedge(ctx.del_omega(), ctx.delbar_omega());
      for (int k = 1; k <= n - 1; ++k) {
        const Form ddbar_k = kI * del_delbar(ctx.omega_power(k));
        const cplx star_value = top_form_ratio(wedge(ddbar_k, ctx.omega_power(n - k - 1).value), g);
        const double rhs = k * factorial(n - 2) *
                           ((k - 1.0) / (n - 2) * dstar_sq + (n - k - 1.0) / (n - 2) * domega_sq - ds);
        const CheckValue c44 = compare(star_value, cplx(rhs));
        if (c44.residual >= l44.residual) l44 = c44;

        const cplx lam = lambda_power(ddbar_k, g, k + 1)[0] / factorial(k + 1);
        const CheckValue c45 = compare(lam, star_value / factorial(n - k - 1));
        if (c45.residual >= p45.residual) p45 = c45;

        const Form lhs = wedge(del_delbar(ctx.omega_power(k)), ctx.omega_power(n - 1 - k).value);
        const Form rhs_form = cplx(static_cast<double>(k) / (n - 1)) * ddbar_top -
                              cplx(static_cast<double>(k) * (n - k - 1)) *
                                  wedge(domega_dbaromega, ctx.omega_power(n - 3).value);
        const CheckValue cp = compare(lhs, rhs_form);
        if (cp.residual >= pak.residual) pak = cp;

        if (normalized_residual(std::abs(star_value), std::abs(star_value), 0.0) < tol) gauduchon_k.push_back(k);
      }
      if (wants(filter, "kgauduchon-L44")) V["kgauduchon-L44"] = l44;
      if (wants(filter, "kgauduchon-P45")) V["kgauduchon-P45"] = p45;
      if (wants(filter, "kgauduchon-pak")) V["kgauduchon-pak"] = pak;
      if (wants(filter, "cor46")) {
        if (!gauduchon_k.empty()) {
          const double deficit = std::max(0.0, b.s_hat - b.s);
          V["cor46"] = {normalized_residual(deficit, std::abs(b.s), std::abs(b.s_hat)), true, b.s, b.s_hat};
        } else {
          V["cor46"] = inapplicable();
        }
      }
      if (wants(filter, "cor47")) {
        if (gauduchon_k.size() >= 2) {
          const cplx ddstar_pair = inner_product(ctx.fields().ddstar_omega, w, g);
          V["cor47"] = worst({compare(cplx(domega_sq), cplx(dstar_sq)), compare(cplx(dstar_sq), ddstar_pair)});
        } else {
          V["cor47"] = inapplicable();
        }
      }
    } else {
      for (const char* id : {"kgauduchon-L44", "kgauduchon-P45", "kgauduchon-pak", "cor46", "cor47"})
        if (wants(filter, id)) V[id] = inapplicable();
    }
  }

  if (wants(filter, "star1f")) {
    // delbar tau = -d_lbar tau_i dz^i ^ dzbar^l
    Form dbar_tau(n, 1, 1);
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) dbar_tau.at(1u << i, 1u << l) = -b.dbar_tau(i, l);
    const cplx rhs = inner_product(kI * dbar_tau, w, g) + inner_product(tau, kI * ctx.dbarstar_omega(), g);
    V["star1f"] = compare(ctx.fields().dstar_tau, rhs);
  }

  // Operator identities of the exterior algebra at this point's metric, on
  // fixed pseudo-random forms.
  if (wants(filter, "star-involution")) {
    std::mt19937_64 rng(0x51a7);
    CheckValue acc{0.0, true, 0.0, 0.0};
    for (int p = 0; p <= n; ++p)
      for (int q = 0; q <= n; ++q) {
        const Form phi = random_form(n, p, q, rng);
        const Form psi = random_form(n, p, q, rng);
        const Form sphi = hodge_star(phi, g);
        const CheckValue inv = compare(hodge_star(sphi, g), cplx((p + q) % 2 ? -1.0 : 1.0) * phi);
        const CheckValue iso = compare(inner_product(sphi, hodge_star(psi, g), g), inner_product(phi, psi, g));
        const CheckValue cnj = compare(conj(sphi), hodge_star(conj(phi), g));
        acc = worst({acc, inv, iso, cnj});
      }
    const CheckValue star_omega =
        compare(hodge_star(w, g), ctx.omega_power(n - 1).value * cplx(1.0 / factorial(n - 1)));
    V["star-involution"] = worst({acc, star_omega});
  }
  if (wants(filter, "lefschetz-commutator")) {
    std::mt19937_64 rng(0x1e75);
    CheckValue acc{0.0, true, 0.0, 0.0};
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        const int k = p + q;
        const Form phi = random_form(n, p, q, rng);
        // L Lambda phi vanishes when phi has no (1,1) part to contract.
        const bool contractible = p > 0 && q > 0;
        Form comm = -lambda_contract(wedge(w, phi), g);
        if (contractible) comm += wedge(w, lambda_contract(phi, g));
        acc = worst({acc, compare(comm, cplx(static_cast<double>(k - n)) * phi)});
        const int r = std::min(n - p, n - q);
        if (r >= 2) {
          const Form Lr = ctx.omega_power(r).value;
          Form lhs = -lambda_contract(wedge(Lr, phi), g);
          if (contractible) lhs += wedge(Lr, lambda_contract(phi, g));
          const Form rhs = cplx(static_cast<double>(r) * (k - n + r - 1)) * wedge(ctx.omega_power(r - 1).value, phi);
          acc = worst({acc, compare(lhs, rhs)});
        }
        // adjointness <L phi, psi> = <phi, Lambda psi>
        const Form psi = random_form(n, p + 1, q + 1, rng);
        acc = worst({acc, compare(inner_product(wedge(w, phi), psi, g), inner_product(phi, lambda_contract(psi, g), g))});
      }
    V["lefschetz-commutator"] = acc;
  }
  if (wants(filter, "primitive-norm")) {
    std::mt19937_64 rng(0x9817);
    std::vector<Form> prims;
    prims.push_back(random_form(n, 1, 0, rng));
    prims.push_back(random_form(n, 0, 1, rng));
    const Form phi11 = random_form(n, 1, 1, rng);
    prims.push_back(phi11 - (lambda_contract(phi11, g)[0] / static_cast<double>(n)) * w);
    if (n3) prims.push_back(ctx.del_omega() + kI * cplx(1.0 / (n - 1)) * wedge(w, ctx.dbarstar_omega()));
    CheckValue acc{0.0, true, 0.0, 0.0};
    for (const Form& a : prims) {
      const int k = a.degree();
      const double lhs = norm_squared(wedge(a, w), g);
      const double rhs = (n - k) * norm_squared(a, g);
      acc = worst({acc, compare(cplx(lhs), cplx(rhs))});
      const Form lam = lambda_contract(a, g);
      acc = worst({acc, CheckValue{normalized_residual(lam.max_abs(), a.max_abs(), 0.0), true, lam.max_abs(), 0.0}});
      if (n - k + 1 >= 0 && a.p() + n - k + 1 <= n && a.q() + n - k + 1 <= n) {
        const Form top = wedge(ctx.omega_power(n - k + 1).value, a);
        acc = worst({acc, CheckValue{normalized_residual(top.max_abs(), a.max_abs(), 0.0), true, top.max_abs(), 0.0}});
      }
    }
    V["primitive-norm"] = acc;
  }
  return out;
}

struct CheckStats {
  double max_residual = 0.0;
  double mean_residual = 0.0;
  bool applicable = false;
  bool pass = false;
  int applicable_points = 0;
};

struct PointError {
  std::size_t index = 0;
  std::string kind;
  std::string message;
};

struct SuiteReport {
  std::string metric;
  int n = 0;
  double tol = 0.0;
  double lck_gate = 0.0;
  JetSource jet = JetSource::analytic;
  std::vector<Point> points;
  std::vector<std::string> check_order;
  std::map<std::string, CheckStats> checks;
  std::vector<std::optional<PointChecks>> per_point;
  std::vector<PointError> errors;
  bool pass = false;
  double wall_time = 0.0;  // seconds; kept out of the JSON document
};

inline std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const DomainError*>(&e)) return "domain";
  if (dynamic_cast<const MetricError*>(&e)) return "metric";
  if (dynamic_cast<const NumericError*>(&e)) return "numeric";
  if (dynamic_cast<const ConfigError*>(&e)) return "config";
  return "error";
}

inline int resolve_threads(int requested, std::size_t work) {
  int t = requested;
  if (t <= 0) {
    if (const char* env = std::getenv("HERMLAB_THREADS")) t = std::atoi(env);
  }
  if (t <= 0) t = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(t), std::max<std::size_t>(work, 1)));
}

// Run indexed work items on a small pool; results land in their own slots, so
// the outcome never depends on scheduling.
inline void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) body(i);
    });
  for (auto& th : pool) th.join();
}

inline SuiteReport run_suite(const MetricSpec& spec, const std::vector<Point>& points, const SuiteOptions& opt) {
  for (const auto& id : opt.checks)
    if (std::find(all_check_ids().begin(), all_check_ids().end(), id) == all_check_ids().end())
      throw ConfigError("unknown check '" + id + "'");
  if (spec.n < 2) throw ConfigError("identity suite needs n >= 2");
  if (opt.field_step && !(*opt.field_step > 0.0)) throw ConfigError("field step must be positive");
  if (opt.tol && !(*opt.tol > 0.0)) throw ConfigError("tolerance must be positive");
  if (opt.resolved_source(spec) == JetSource::analytic && !spec.has_analytic_jet())
    throw ConfigError("metric '" + spec.id + "' has no analytic jet; use the fd jet");

  const auto start = std::chrono::steady_clock::now();
  SuiteReport rep;
  rep.metric = spec.id;
  rep.n = spec.n;
  rep.tol = opt.resolved_tol(spec);
  rep.lck_gate = opt.resolved_gate(spec);
  rep.jet = opt.resolved_source(spec);
  rep.points = points;
  for (const auto& id : all_check_ids())
    if (detail::wants(opt.checks, id)) rep.check_order.push_back(id);

  const auto decomposition = conformal_decomposition(spec);
  rep.per_point.resize(points.size());
  std::vector<std::optional<PointError>> errs(points.size());
  parallel_for(points.size(), resolve_threads(opt.threads, points.size()), [&](std::size_t i) {
    try {
      rep.per_point[i] = check_point(spec, points[i], opt, decomposition);
    } catch (const Error& e) {
      errs[i] = PointError{i, error_kind(e), e.what()};
    }
  });
  for (auto& e : errs)
    if (e) rep.errors.push_back(*e);

  bool all = rep.errors.empty() && !points.empty();
  for (const auto& id : rep.check_order) {
    CheckStats st;
    double sum = 0.0;
    for (const auto& pc : rep.per_point) {
      if (!pc) continue;
      const auto it = pc->values.find(id);
      if (it == pc->values.end() || !it->second.applicable) continue;
      st.applicable = true;
      ++st.applicable_points;
      st.max_residual = std::max(st.max_residual, it->second.residual);
      sum += it->second.residual;
    }
    if (st.applicable_points > 0) st.mean_residual = sum / st.applicable_points;
    st.pass = st.applicable && st.max_residual < rep.tol && rep.errors.empty();
    if (st.applicable && !st.pass) all = false;
    rep.checks[id] = st;
  }
  rep.pass = all;
  rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace hermlab
