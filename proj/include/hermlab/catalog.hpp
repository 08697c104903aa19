#pragma once

// Catalog of metrics with closed-form jets, plus synthetic metrics for fuzzing.
//
// The radial entries all have the shape h_{i jbar} = A(r) delta_ij + B(r) zbar_i z_j
// with r = |z|^2, which gives one jet evaluator for all of them.

#include <Eigen/Dense>
#include <json.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hermlab/core.hpp"
#include "hermlab/expr.hpp"
#include "hermlab/jets.hpp"

namespace hermlab {

// Value and first two r-derivatives of a radial profile.
struct Profile {
  double v = 0.0, d1 = 0.0, d2 = 0.0;
};

using RadialFn = std::function<Profile(double)>;

namespace detail {

inline Eigen::MatrixXcd radial_metric(const RadialFn& A, const RadialFn& B, const Point& z) {
  const int n = static_cast<int>(z.size());
  const double r = norm2(z);
  const double a = A(r).v, b = B(r).v;
  Eigen::MatrixXcd h(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) h(i, j) = (i == j ? a : 0.0) + b * std::conj(z[i]) * z[j];
  return h;
}

inline MetricJet radial_jet(const RadialFn& A, const RadialFn& B, const Point& z) {
  const int n = static_cast<int>(z.size());
  const double r = norm2(z);
  const Profile a = A(r), b = B(r);
  MetricJet jet = MetricJet::zero(z);
  jet.h = radial_metric(A, B, z);
  auto d = [](int i, int j) { return i == j ? 1.0 : 0.0; };
  std::vector<cplx> zb(n);
  for (int i = 0; i < n; ++i) zb[i] = std::conj(z[i]);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        jet.dh(k, i, j) = a.d1 * zb[k] * d(i, j) + b.d1 * zb[k] * zb[i] * z[j] + b.v * zb[i] * d(j, k);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          jet.ddbar_h(k, l, i, j) =
              a.d2 * z[l] * zb[k] * d(i, j) + a.d1 * d(k, l) * d(i, j) + b.d2 * z[l] * zb[k] * zb[i] * z[j] +
              b.d1 * (d(k, l) * zb[i] * z[j] + zb[k] * d(i, l) * z[j] + z[l] * zb[i] * d(j, k)) +
              b.v * d(i, l) * d(j, k);
  return jet;
}

inline RadialFn constant_profile(double c) {
  return [c](double) { return Profile{c, 0.0, 0.0}; };
}

inline std::string normalize_id(std::string id) {
  for (auto& ch : id)
    if (ch == '-') ch = '_';
  return id;
}

inline double param_or(const std::map<std::string, double>& p, const std::string& key, double fallback) {
  const auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

// Deterministic uniform double in [0,1) from a 64-bit engine, independent of
// the standard library's distribution implementations.
inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace detail

// A real radial function F(r), r = |z|^2, lifted to a ScalarJet:
// d_i F = F' zbar_i, d_i d_jbar F = F'' zbar_i z_j + F' delta_ij.
inline ScalarJet radial_scalar_jet(const RadialFn& F, const Point& z) {
  const int n = static_cast<int>(z.size());
  const Profile p = F(norm2(z));
  ScalarJet s = ScalarJet::zero(n);
  s.value = p.v;
  for (int i = 0; i < n; ++i) s.df[i] = p.d1 * std::conj(z[i]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s.ddbar_f(i, j) = p.d2 * std::conj(z[i]) * z[j] + (i == j ? p.d1 : 0.0);
  return s;
}

struct KnownFacts {
  bool kahler = false;
  bool lck = false;
  // Expected holomorphic sectional curvature where it is pointwise constant.
  std::function<double(const Point&)> expected_H;
  bool symmetric_part_vanishes = false;  // K == 0
  bool curvature_nonvanishing = false;   // R != 0 everywhere
  std::string note;
};

// omega = e^f * base, with f given as a ScalarJet evaluator.
struct ConformalDecomposition {
  MetricSpec base;
  std::function<ScalarJet(const Point&)> factor;
  std::string factor_description;
};

namespace detail {

struct RadialEntry {
  RadialFn A, B;
  double guard_radius;
  double sample_radius;
};

inline std::optional<RadialEntry> radial_entry(const std::string& id, const std::map<std::string, double>& params) {
  const double inf = std::numeric_limits<double>::infinity();
  if (id == "flat") return RadialEntry{constant_profile(1.0), constant_profile(0.0), inf, 1.0};
  if (id == "fubini_study")
    return RadialEntry{[](double r) {
                         const double u = 1.0 + r;
                         return Profile{1.0 / u, -1.0 / (u * u), 2.0 / (u * u * u)};
                       },
                       [](double r) {
                         const double u = 1.0 + r;
                         return Profile{-1.0 / (u * u), 2.0 / (u * u * u), -6.0 / (u * u * u * u)};
                       },
                       inf, 1.0};
  if (id == "bergman")
    return RadialEntry{[](double r) {
                         const double u = 1.0 - r;
                         return Profile{1.0 / u, 1.0 / (u * u), 2.0 / (u * u * u)};
                       },
                       [](double r) {
                         const double u = 1.0 - r;
                         return Profile{1.0 / (u * u), 2.0 / (u * u * u), 6.0 / (u * u * u * u)};
                       },
                       0.9, 0.9};
  if (id == "example31") {
    const double c = param_or(params, "c", 1.0);
    return RadialEntry{[c](double r) {
                         const double e = std::exp(c * r);
                         return Profile{e, c * e, c * c * e};
                       },
                       constant_profile(0.0), inf, 1.0};
  }
  if (id == "example32")
    return RadialEntry{[](double r) { return Profile{1.0 + r, 1.0, 0.0}; }, constant_profile(-1.0), inf, 1.0};
  if (id == "example33")
    return RadialEntry{[](double r) { return Profile{1.0 - r, -1.0, 0.0}; }, constant_profile(1.0), 0.9, 0.9};
  return std::nullopt;
}

inline const std::vector<std::string>& radial_ids() {
  static const std::vector<std::string> ids = {"flat",      "fubini_study", "bergman",
                                               "example31", "example32",    "example33"};
  return ids;
}

inline MetricSpec make_radial(const std::string& id, int n, const std::map<std::string, double>& params) {
  const auto e = radial_entry(id, params);
  MetricSpec spec;
  spec.id = id;
  spec.n = n;
  spec.params = params;
  spec.guard.radius = e->guard_radius;
  spec.sample_radius = e->sample_radius;
  spec.metric = [A = e->A, B = e->B](const Point& z) { return radial_metric(A, B, z); };
  spec.analytic_jet = [A = e->A, B = e->B](const Point& z) { return radial_jet(A, B, z); };
  return spec;
}

}  // namespace detail

// Synthetic Hermitian metric h = I + eps * P(z, zbar), P a random Hermitian
// matrix of polynomials of degree <= 2. eps is halved until a Gershgorin bound
// keeps the smallest eigenvalue above 1/2 on the ball |z| <= box.
inline MetricSpec make_random_poly(int n, std::map<std::string, double> params) {
  const auto seed = static_cast<std::uint64_t>(detail::param_or(params, "seed", 1.0));
  double eps = detail::param_or(params, "eps", 0.2);
  const double box = detail::param_or(params, "box", 1.0);
  if (!(eps > 0.0)) throw ConfigError("random_poly: eps must be positive");
  if (!(box > 0.0)) throw ConfigError("random_poly: box must be positive");

  std::mt19937_64 rng(seed);
  auto uni = [&rng] { return 2.0 * detail::unit_uniform(rng) - 1.0; };
  auto pick = [&rng](int m) { return static_cast<int>(rng() % static_cast<std::uint64_t>(m)); };

  // One monomial: coefficient times a product of up to two coordinates.
  auto monomial = [&](double& bound) {
    const cplx coef(uni(), uni());
    const int type = pick(5);
    const int a = pick(n), b = pick(n);
    std::vector<Expr::Ptr> f{Expr::constant(coef)};
    int degree = 1;
    switch (type) {
      case 0: f.push_back(Expr::z(a)); break;
      case 1: f.push_back(Expr::zbar(a)); break;
      case 2: f.push_back(Expr::z(a)); f.push_back(Expr::z(b)); degree = 2; break;
      case 3: f.push_back(Expr::z(a)); f.push_back(Expr::zbar(b)); degree = 2; break;
      default: f.push_back(Expr::zbar(a)); f.push_back(Expr::zbar(b)); degree = 2; break;
    }
    bound += std::abs(coef) * std::pow(box, degree);
    return Expr::node(Expr::Kind::mul, std::move(f));
  };

  constexpr int kTerms = 4;
  std::vector<std::vector<Expr::Ptr>> P(n, std::vector<Expr::Ptr>(n));
  Eigen::MatrixXd bounds = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      double bound = 0.0;
      std::vector<Expr::Ptr> terms;
      for (int t = 0; t < kTerms; ++t) terms.push_back(monomial(bound));
      Expr::Ptr p = Expr::node(Expr::Kind::add, std::move(terms));
      if (i == j) {
        p = Expr::node(Expr::Kind::mul,
                       {Expr::constant(0.5), Expr::node(Expr::Kind::add, {p, conjugate_expr(p)})});
        P[i][i] = p;
      } else {
        P[i][j] = p;
        P[j][i] = conjugate_expr(p);
      }
      bounds(i, j) = bounds(j, i) = bound;
    }
  }
  const double gershgorin = bounds.rowwise().sum().maxCoeff();
  while (1.0 - eps * gershgorin < 0.5) eps *= 0.5;
  params["eps"] = eps;

  std::vector<std::vector<Expr::Ptr>> H(n, std::vector<Expr::Ptr>(n));
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Expr::Ptr scaled = Expr::node(Expr::Kind::mul, {Expr::constant(eps), P[i][j]});
      H[i][j] = i == j ? Expr::node(Expr::Kind::add, {Expr::constant(1.0), scaled}) : scaled;
      if (j >= i) entries.push_back({{"i", i + 1}, {"j", j + 1}, {"expr", H[i][j]->to_json()}});
    }
  }

  MetricSpec spec;
  spec.id = "random_poly";
  spec.n = n;
  spec.params = params;
  spec.sample_radius = box;
  spec.guard.radius = box * (1.0 + 1e-9);
  spec.metric = [H, n](const Point& z) {
    Eigen::MatrixXcd h(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) h(i, j) = H[i][j]->eval(z);
    return h;
  };
  spec.expression_json = nlohmann::ordered_json{{"id", "random_poly"}, {"n", n}, {"entries", entries}}.dump();
  return spec;
}

// Metric from a custom JSON document (see expr.hpp for the grammar):
//   {"id":"custom","n":2,"entries":[{"i":1,"j":1,"expr":...}, ...],
//    "domain":{"radius":r}}
// Entries give the upper triangle (i <= j, 1-based); the lower triangle is its
// conjugate and missing entries are zero. Only the FD jet path applies.
inline MetricSpec make_custom(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("custom metric: document must be a JSON object");
  if (!doc.contains("n") || !doc.at("n").is_number_integer()) throw ConfigError("custom metric: integer \"n\" required");
  const int n = doc.at("n").get<int>();
  if (n < 1 || n > kMaxDimension) throw ConfigError("custom metric: n out of range");
  if (!doc.contains("entries") || !doc.at("entries").is_array())
    throw ConfigError("custom metric: \"entries\" array required");

  std::vector<std::vector<Expr::Ptr>> H(n, std::vector<Expr::Ptr>(n, Expr::constant(0.0)));
  for (const auto& e : doc.at("entries")) {
    if (!e.contains("i") || !e.contains("j") || !e.contains("expr"))
      throw ConfigError("custom metric: each entry needs i, j and expr");
    const int i = e.at("i").get<int>() - 1;
    const int j = e.at("j").get<int>() - 1;
    if (i < 0 || j < 0 || i >= n || j >= n) throw ConfigError("custom metric: entry index out of range");
    if (i > j) throw ConfigError("custom metric: give entries with i <= j; the rest follows by conjugation");
    const Expr::Ptr ex = parse_expr(e.at("expr"));
    if (ex->max_variable() >= n) throw ConfigError("custom metric: expression uses a coordinate beyond n");
    if (i == j) {
      H[i][i] = Expr::node(Expr::Kind::mul,
                           {Expr::constant(0.5), Expr::node(Expr::Kind::add, {ex, conjugate_expr(ex)})});
    } else {
      H[i][j] = ex;
      H[j][i] = conjugate_expr(ex);
    }
  }

  MetricSpec spec;
  spec.id = doc.value("id", std::string("custom"));
  spec.n = n;
  spec.sample_radius = 0.5;
  if (doc.contains("domain")) {
    const auto& d = doc.at("domain");
    if (d.contains("radius")) {
      spec.guard.radius = d.at("radius").get<double>();
      if (!(spec.guard.radius > 0.0)) throw ConfigError("custom metric: domain radius must be positive");
      spec.sample_radius = std::min(0.5, 0.9 * spec.guard.radius);
    }
  }
  spec.metric = [H, n](const Point& z) {
    Eigen::MatrixXcd h(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) h(i, j) = H[i][j]->eval(z);
    return h;
  };
  spec.expression_json = doc.dump();
  return spec;
}

inline MetricSpec make_metric(const std::string& id, int n, const std::map<std::string, double>& params = {});

namespace detail {

// "product(a,b)" -> {"a","b"}; top-level comma only.
inline std::optional<std::pair<std::string, std::string>> split_product(const std::string& id) {
  const std::string head = "product(";
  if (id.rfind(head, 0) != 0 || id.back() != ')') return std::nullopt;
  const std::string inner = id.substr(head.size(), id.size() - head.size() - 1);
  int depth = 0;
  for (std::size_t i = 0; i < inner.size(); ++i) {
    if (inner[i] == '(') ++depth;
    if (inner[i] == ')') --depth;
    if (inner[i] == ',' && depth == 0) return std::make_pair(inner.substr(0, i), inner.substr(i + 1));
  }
  return std::nullopt;
}

inline MetricSpec make_product(const std::string& id, const std::string& a, const std::string& b, int n,
                               std::map<std::string, double> params) {
  const int n1 = static_cast<int>(param_or(params, "split", n - 1));
  if (n1 < 1 || n1 >= n) throw ConfigError("product: split must lie in [1, n-1]");
  const int n2 = n - n1;
  auto sub_params = [&params](const std::string& sub_id) {
    std::map<std::string, double> sub = params;
    sub.erase("split");
    const std::string norm = normalize_id(sub_id);
    if (norm != "example31" && !split_product(norm)) sub.erase("c");
    return sub;
  };
  const MetricSpec s1 = make_metric(a, n1, sub_params(a));
  const MetricSpec s2 = make_metric(b, n2, sub_params(b));

  auto part = [n1](const Point& z, bool first) {
    return first ? Point(z.begin(), z.begin() + n1) : Point(z.begin() + n1, z.end());
  };
  MetricSpec spec;
  spec.id = id;
  spec.n = n;
  params["split"] = n1;
  spec.params = params;
  // The product domain is contained in the product of the two balls; use the
  // smaller radius as a conservative guard on the full point.
  spec.guard.radius = std::min(s1.guard.radius, s2.guard.radius);
  spec.sample_radius = std::min(s1.sample_radius, s2.sample_radius);
  spec.metric = [s1, s2, part, n, n1](const Point& z) {
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
    h.topLeftCorner(n1, n1) = s1.metric(part(z, true));
    h.bottomRightCorner(n - n1, n - n1) = s2.metric(part(z, false));
    return h;
  };
  if (s1.has_analytic_jet() && s2.has_analytic_jet()) {
    spec.analytic_jet = [s1, s2, part, n, n1](const Point& z) {
      MetricJet out = MetricJet::zero(z);
      const MetricJet j1 = s1.analytic_jet(part(z, true));
      const MetricJet j2 = s2.analytic_jet(part(z, false));
      for (int block = 0; block < 2; ++block) {
        const MetricJet& j = block == 0 ? j1 : j2;
        const int off = block == 0 ? 0 : n1;
        const int m = j.dim();
        for (int i = 0; i < m; ++i)
          for (int k = 0; k < m; ++k) out.h(off + i, off + k) = j.h(i, k);
        for (int k = 0; k < m; ++k)
          for (int i = 0; i < m; ++i)
            for (int jj = 0; jj < m; ++jj) out.dh(off + k, off + i, off + jj) = j.dh(k, i, jj);
        for (int k = 0; k < m; ++k)
          for (int l = 0; l < m; ++l)
            for (int i = 0; i < m; ++i)
              for (int jj = 0; jj < m; ++jj)
                out.ddbar_h(off + k, off + l, off + i, off + jj) = j.ddbar_h(k, l, i, jj);
      }
      return out;
    };
  }
  return spec;
}

inline void check_params(const std::string& id, const std::map<std::string, double>& params,
                         const std::vector<std::string>& allowed) {
  for (const auto& [k, v] : params) {
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
      throw ConfigError("metric '" + id + "' does not take parameter '" + k + "'");
    if (!std::isfinite(v)) throw ConfigError("parameter '" + k + "' must be finite");
  }
}

}  // namespace detail

// Build a catalog metric. Identifiers accept '-' for '_'.
inline MetricSpec make_metric(const std::string& raw_id, int n, const std::map<std::string, double>& params) {
  const std::string id = detail::normalize_id(raw_id);
  if (n < 1 || n > kMaxDimension)
    throw ConfigError("dimension n must lie in [1, " + std::to_string(kMaxDimension) + "]");
  if (const auto prod = detail::split_product(id)) {
    if (n < 2) throw ConfigError("product metrics need n >= 2");
    return detail::make_product(id, prod->first, prod->second, n, params);
  }
  if (id == "random_poly") {
    detail::check_params(id, params, {"seed", "eps", "box"});
    return make_random_poly(n, params);
  }
  if (id == "custom") throw ConfigError("metric 'custom' needs a spec file");
  if (!detail::radial_entry(id, params)) throw ConfigError("unknown metric '" + raw_id + "'");
  detail::check_params(id, params, id == "example31" ? std::vector<std::string>{"c"} : std::vector<std::string>{});
  return detail::make_radial(id, n, params);
}

inline KnownFacts known_facts(const MetricSpec& spec) {
  KnownFacts f;
  const std::string& id = spec.id;
  if (id == "flat") {
    f.kahler = f.lck = true;
    f.expected_H = [](const Point&) { return 0.0; };
    f.symmetric_part_vanishes = true;
  } else if (id == "fubini_study") {
    f.kahler = f.lck = true;
    f.expected_H = [](const Point&) { return 2.0; };
  } else if (id == "bergman") {
    f.kahler = f.lck = true;
    f.expected_H = [](const Point&) { return -2.0; };
  } else if (id == "example31") {
    const double c = detail::param_or(spec.params, "c", 1.0);
    f.kahler = c == 0.0;
    f.lck = true;
    f.expected_H = [c](const Point& z) { return -c * std::exp(-c * norm2(z)); };
    f.curvature_nonvanishing = c != 0.0;
    if (c == 0.0) f.note = "c = 0 reduces to the flat metric";
  } else if (id == "example32" || id == "example33") {
    f.lck = true;
    f.expected_H = [](const Point&) { return 0.0; };
    f.symmetric_part_vanishes = true;
    f.curvature_nonvanishing = true;
  } else if (detail::split_product(id)) {
    const auto parts = detail::split_product(id);
    const bool k1 = std::find(detail::radial_ids().begin(), detail::radial_ids().begin() + 3, parts->first) !=
                    detail::radial_ids().begin() + 3;
    const bool k2 = std::find(detail::radial_ids().begin(), detail::radial_ids().begin() + 3, parts->second) !=
                    detail::radial_ids().begin() + 3;
    f.kahler = k1 && k2;
    f.lck = f.kahler;
    f.note = "block metric";
  } else {
    f.note = "no closed-form facts";
  }
  return f;
}

inline std::optional<ConformalDecomposition> conformal_decomposition(const MetricSpec& spec) {
  const int n = spec.n;
  if (spec.id == "example31") {
    const double c = detail::param_or(spec.params, "c", 1.0);
    return ConformalDecomposition{
        make_metric("flat", n),
        [c](const Point& z) { return radial_scalar_jet([c](double r) { return Profile{c * r, c, 0.0}; }, z); },
        "c|z|^2"};
  }
  if (spec.id == "example32") {
    return ConformalDecomposition{make_metric("fubini_study", n),
                                  [](const Point& z) {
                                    return radial_scalar_jet(
                                        [](double r) {
                                          const double u = 1.0 + r;
                                          return Profile{2.0 * std::log(u), 2.0 / u, -2.0 / (u * u)};
                                        },
                                        z);
                                  },
                                  "2log(1+|z|^2)"};
  }
  if (spec.id == "example33") {
    return ConformalDecomposition{make_metric("bergman", n),
                                  [](const Point& z) {
                                    return radial_scalar_jet(
                                        [](double r) {
                                          const double u = 1.0 - r;
                                          return Profile{2.0 * std::log(u), -2.0 / u, -2.0 / (u * u)};
                                        },
                                        z);
                                  },
                                  "2log(1-|z|^2)"};
  }
  return std::nullopt;
}

// Generic real test factor f = 0.3|z|^2 + Re(0.4 z_1).
inline ScalarJet generic_conformal_factor(const Point& z) {
  const int n = static_cast<int>(z.size());
  ScalarJet s = ScalarJet::zero(n);
  s.value = 0.3 * norm2(z) + 0.4 * z[0].real();
  for (int i = 0; i < n; ++i) s.df[i] = 0.3 * std::conj(z[i]) + (i == 0 ? 0.2 : 0.0);
  for (int i = 0; i < n; ++i) s.ddbar_f(i, i) = 0.3;
  return s;
}

// Deterministic points in the ball |z| <= box intersected with the guard.
inline std::vector<Point> sample_points(const MetricSpec& spec, int count, std::uint64_t seed,
                                        std::optional<double> box = std::nullopt) {
  if (count < 0) throw ConfigError("sample count must be non-negative");
  const double radius = box.value_or(spec.sample_radius);
  if (!(radius > 0.0)) throw ConfigError("sample box radius must be positive");
  std::mt19937_64 rng(seed);
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(count));
  constexpr int kMaxRejections = 100000;
  int rejections = 0;
  while (static_cast<int>(pts.size()) < count) {
    Point z(spec.n);
    for (auto& c : z) {
      const double re = radius * (2.0 * detail::unit_uniform(rng) - 1.0);
      const double im = radius * (2.0 * detail::unit_uniform(rng) - 1.0);
      c = cplx(re, im);
    }
    if (norm2(z) <= radius * radius && spec.guard.admits(z)) {
      pts.push_back(std::move(z));
      rejections = 0;
    } else if (++rejections > kMaxRejections) {
      throw ConfigError("no admissible sample points for '" + spec.id + "' in the requested box");
    }
  }
  return pts;
}

// Catalog listing for the CLI.
inline nlohmann::ordered_json catalog_listing() {
  using J = nlohmann::ordered_json;
  J out = J::array();
  auto entry = [](const std::string& id, const std::string& desc, J params, const std::string& domain,
                  bool analytic, const KnownFacts& f) {
    J facts = {{"kahler", f.kahler}, {"lck", f.lck}};
    if (f.symmetric_part_vanishes) facts["symmetric_curvature_vanishes"] = true;
    if (f.curvature_nonvanishing) facts["curvature_nonvanishing"] = true;
    return J{{"id", id},          {"description", desc}, {"n_min", id == "custom" ? 1 : 2},
             {"n_max", kMaxDimension}, {"params", params}, {"domain", domain},
             {"analytic_jet", analytic}, {"facts", facts}};
  };
  auto facts_of = [](const std::string& id) { return known_facts(make_metric(id, 2)); };
  out.push_back(entry("flat", "Euclidean metric on C^n", J::object(), "C^n", true, facts_of("flat")));
  out.push_back(entry("fubini_study", "((1+|z|^2) delta - zbar_i z_j) / (1+|z|^2)^2, H = 2", J::object(), "C^n",
                      true, facts_of("fubini_study")));
  out.push_back(entry("bergman", "((1-|z|^2) delta + zbar_i z_j) / (1-|z|^2)^2, H = -2", J::object(),
                      "|z| < 0.9", true, facts_of("bergman")));
  out.push_back(entry("example31", "e^{c|z|^2} delta, H = -c e^{-c|z|^2}", J{{"c", 1.0}}, "C^n", true,
                      facts_of("example31")));
  out.push_back(entry("example32", "(1+|z|^2) delta - zbar_i z_j, H = 0, R != 0", J::object(), "C^n", true,
                      facts_of("example32")));
  out.push_back(entry("example33", "(1-|z|^2) delta + zbar_i z_j, H = 0, R != 0", J::object(), "|z| < 0.9", true,
                      facts_of("example33")));
  KnownFacts none;
  out.push_back(entry("random_poly", "I + eps * random Hermitian polynomial of degree <= 2",
                      J{{"seed", 1.0}, {"eps", 0.2}, {"box", 1.0}}, "|z| <= box", false, none));
  out.push_back(entry("product(a,b)", "block metric of two catalog metrics", J{{"split", "n-1"}},
                      "both factor domains", true, none));
  out.push_back(entry("custom", "metric from a JSON expression file (--spec-file)", J::object(),
                      "optional radius", false, none));
  return out;
}

}  // namespace hermlab
