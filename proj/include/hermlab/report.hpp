#pragma once

// Point summaries, grid scans and their JSON / CSV / text renderings.
// Floats are written in shortest round-trip form so output is reproducible
// byte for byte.

#include <charconv>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hermlab/catalog.hpp"
#include "hermlab/curvature.hpp"
#include "hermlab/identities.hpp"
#include "hermlab/jets.hpp"

namespace hermlab {

using ordered_json = nlohmann::ordered_json;

enum class Format { json, csv, text };

inline Format parse_format(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  if (s == "text") return Format::text;
  throw ConfigError("unknown format '" + s + "' (json, csv, text)");
}

inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

// RFC 4180: quote when the field holds a comma, quote or line break.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string csv_row(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) line += ',';
    line += csv_field(fields[i]);
  }
  return line + "\r\n";
}

inline std::string point_string(const Point& z) {
  std::string s;
  for (std::size_t k = 0; k < z.size(); ++k) {
    if (k) s += ';';
    s += format_double(z[k].real()) + "," + format_double(z[k].imag());
  }
  return s;
}

inline ordered_json point_json(const Point& z) {
  ordered_json a = ordered_json::array();
  for (const auto& c : z) a.push_back(ordered_json::array({c.real(), c.imag()}));
  return a;
}

// Curvature summary at one point.
struct PointSummary {
  std::string metric;
  int n = 0;
  Point point;
  JetSource jet = JetSource::analytic;
  double s = 0.0, s_hat = 0.0;
  double tau_norm2 = 0.0;
  ConstantHTest H;
  double lck_residual = 0.0;
  double max_abs_R = 0.0;
  double max_abs_K = 0.0;
};

struct SummaryOptions {
  JetOptions jet;
  double tol = 1e-8;  // constancy test tolerance
  int directions = 200;
};

inline PointSummary summarize_point(const MetricSpec& spec, const Point& z, const SummaryOptions& opt) {
  const MetricJet jet = evaluate_jet(spec, z, opt.jet);
  const CurvatureBundle b = compute_curvature(jet);
  const HermitianMatrixPair g(jet.h);
  PointSummary out;
  out.metric = spec.id;
  out.n = spec.n;
  out.point = z;
  out.jet = jet.source;
  out.s = b.s;
  out.s_hat = b.s_hat;
  out.tau_norm2 = b.tau_norm_squared(g.h_inv());
  out.H = pointwise_constant_H_test(b, jet.h, opt.tol, opt.directions);
  out.lck_residual = spec.n >= 2 ? lee_form(jet, b).residual : 0.0;
  out.max_abs_R = b.R.max_abs();
  out.max_abs_K = b.K.max_abs();
  return out;
}

inline ordered_json to_json(const PointSummary& p) {
  return ordered_json{{"metric", p.metric},
                      {"n", p.n},
                      {"point", point_json(p.point)},
                      {"jet", to_string(p.jet)},
                      {"s", p.s},
                      {"s_hat", p.s_hat},
                      {"tau_norm2", p.tau_norm2},
                      {"H", {{"min", p.H.H_min}, {"max", p.H.H_max}, {"spread", p.H.spread()}}},
                      {"constant_H", {{"verdict", p.H.is_constant}, {"c", p.H.c}, {"residual", p.H.residual}}},
                      {"lck_residual", p.lck_residual},
                      {"max_abs_R", p.max_abs_R},
                      {"max_abs_K", p.max_abs_K}};
}

inline std::vector<std::string> summary_header(int n) {
  std::vector<std::string> h{"index"};
  for (int k = 1; k <= n; ++k) {
    h.push_back("re_z" + std::to_string(k));
    h.push_back("im_z" + std::to_string(k));
  }
  for (const char* c : {"s", "s_hat", "tau_norm2", "H_min", "H_max", "constant_H", "c", "lck_residual", "max_abs_R",
                        "max_abs_K"})
    h.emplace_back(c);
  return h;
}

inline std::vector<std::string> summary_fields(std::size_t index, const PointSummary& p) {
  std::vector<std::string> f{std::to_string(index)};
  for (const auto& c : p.point) {
    f.push_back(format_double(c.real()));
    f.push_back(format_double(c.imag()));
  }
  for (double v : {p.s, p.s_hat, p.tau_norm2, p.H.H_min, p.H.H_max}) f.push_back(format_double(v));
  f.emplace_back(p.H.is_constant ? "true" : "false");
  for (double v : {p.H.c, p.lck_residual, p.max_abs_R, p.max_abs_K}) f.push_back(format_double(v));
  return f;
}

inline std::string render_summary(const PointSummary& p, Format fmt) {
  switch (fmt) {
    case Format::json:
      return to_json(p).dump(2) + "\n";
    case Format::csv:
      return csv_row(summary_header(p.n)) + csv_row(summary_fields(0, p));
    case Format::text: {
      std::ostringstream os;
      os << p.metric << "  n=" << p.n << "  jet=" << to_string(p.jet) << "\n";
      os << "point          " << point_string(p.point) << "\n";
      os << "s              " << format_double(p.s) << "\n";
      os << "s_hat          " << format_double(p.s_hat) << "\n";
      os << "|tau|^2        " << format_double(p.tau_norm2) << "\n";
      os << "H min/max      " << format_double(p.H.H_min) << " / " << format_double(p.H.H_max) << "  (spread "
         << format_double(p.H.spread()) << ")\n";
      os << "constant H     " << (p.H.is_constant ? "yes" : "no") << "  c=" << format_double(p.H.c)
         << "  residual=" << format_double(p.H.residual) << "\n";
      os << "LCK residual   " << format_double(p.lck_residual) << "\n";
      os << "max |R|, |K|   " << format_double(p.max_abs_R) << ", " << format_double(p.max_abs_K) << "\n";
      return os.str();
    }
  }
  return {};
}

// Grid along one complex coordinate: |z_k| from lo to hi in `steps` points on
// the ray of the given angle, the other coordinates fixed.
struct GridSpec {
  int coordinate = 0;  // 0-based
  double lo = 0.0, hi = 1.0;
  int steps = 2;
  double angle = 0.0;
};

inline GridSpec parse_grid(const std::string& text, int n) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 4 && parts.size() != 5)
    throw ConfigError("grid must be k:min:max:steps[:angle], got '" + text + "'");
  auto number = [&](const std::string& s) {
    double v = 0.0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size() || !std::isfinite(v))
      throw ConfigError("bad number '" + s + "' in grid");
    return v;
  };
  GridSpec g;
  const double k = number(parts[0]);
  const double steps = number(parts[3]);
  if (k != std::floor(k) || k < 1 || k > n) throw ConfigError("grid coordinate must be in 1.." + std::to_string(n));
  if (steps != std::floor(steps) || steps < 1 || steps > 1e6) throw ConfigError("grid steps must be a positive integer");
  g.coordinate = static_cast<int>(k) - 1;
  g.lo = number(parts[1]);
  g.hi = number(parts[2]);
  g.steps = static_cast<int>(steps);
  if (parts.size() == 5) g.angle = number(parts[4]);
  if (g.lo < 0.0 || g.hi < g.lo) throw ConfigError("grid needs 0 <= min <= max");
  return g;
}

inline std::vector<Point> grid_points(const GridSpec& g, const Point& base) {
  std::vector<Point> pts;
  pts.reserve(g.steps);
  const cplx dir = std::polar(1.0, g.angle);
  for (int i = 0; i < g.steps; ++i) {
    const double t = g.steps == 1 ? g.lo : g.lo + (g.hi - g.lo) * i / (g.steps - 1);
    Point z = base;
    z[g.coordinate] = t * dir;
    pts.push_back(z);
  }
  return pts;
}

struct ScanResult {
  std::string metric;
  int n = 0;
  std::vector<std::optional<PointSummary>> rows;
  std::vector<PointError> errors;
  std::vector<Point> points;
};

inline ScanResult run_scan(const MetricSpec& spec, const std::vector<Point>& points, const SummaryOptions& opt,
                           int threads = 0) {
  ScanResult out;
  out.metric = spec.id;
  out.n = spec.n;
  out.points = points;
  out.rows.resize(points.size());
  std::vector<std::optional<PointError>> errs(points.size());
  parallel_for(points.size(), resolve_threads(threads, points.size()), [&](std::size_t i) {
    try {
      out.rows[i] = summarize_point(spec, points[i], opt);
    } catch (const Error& e) {
      errs[i] = PointError{i, error_kind(e), e.what()};
    }
  });
  for (auto& e : errs)
    if (e) out.errors.push_back(*e);
  return out;
}

inline ordered_json errors_json(const std::vector<PointError>& errors) {
  ordered_json a = ordered_json::array();
  for (const auto& e : errors) a.push_back({{"index", e.index}, {"kind", e.kind}, {"message", e.message}});
  return a;
}

inline std::string render_scan(const ScanResult& s, Format fmt) {
  switch (fmt) {
    case Format::json: {
      ordered_json rows = ordered_json::array();
      for (const auto& r : s.rows)
        if (r) rows.push_back(to_json(*r));
      ordered_json doc{{"metric", s.metric}, {"n", s.n}, {"rows", rows}, {"errors", errors_json(s.errors)}};
      return doc.dump(2) + "\n";
    }
    case Format::csv: {
      std::string out = csv_row(summary_header(s.n));
      for (std::size_t i = 0; i < s.rows.size(); ++i)
        if (s.rows[i]) out += csv_row(summary_fields(i, *s.rows[i]));
      return out;
    }
    case Format::text: {
      std::string out;
      for (std::size_t i = 0; i < s.rows.size(); ++i) {
        if (!s.rows[i]) continue;
        const auto& r = *s.rows[i];
        out += "[" + std::to_string(i) + "] " + point_string(r.point) + "  s=" + format_double(r.s) +
               "  s_hat=" + format_double(r.s_hat) + "  c=" + format_double(r.H.c) +
               (r.H.is_constant ? " (constant H)" : "") + "  lck=" + format_double(r.lck_residual) + "\n";
      }
      for (const auto& e : s.errors)
        out += "[" + std::to_string(e.index) + "] " + e.kind + " error: " + e.message + "\n";
      return out;
    }
  }
  return {};
}

inline ordered_json to_json(const SuiteReport& r) {
  ordered_json points = ordered_json::array();
  for (const auto& z : r.points) points.push_back(point_json(z));
  ordered_json checks = ordered_json::object();
  for (const auto& id : r.check_order) {
    const auto& c = r.checks.at(id);
    checks[id] = {{"max_residual", c.max_residual},
                  {"mean_residual", c.mean_residual},
                  {"applicable", c.applicable},
                  {"pass", c.pass},
                  {"applicable_points", c.applicable_points}};
  }
  return ordered_json{{"metric", r.metric},     {"n", r.n},
                      {"tol", r.tol},           {"jet", to_string(r.jet)},
                      {"points", points},       {"checks", checks},
                      {"pass", r.pass},         {"lck_gate", r.lck_gate},
                      {"errors", errors_json(r.errors)}};
}

inline std::string render_suite(const SuiteReport& r, Format fmt) {
  switch (fmt) {
    case Format::json:
      return to_json(r).dump(2) + "\n";
    case Format::csv: {
      std::string out = csv_row({"point", "z", "check", "applicable", "residual", "pass"});
      for (std::size_t i = 0; i < r.per_point.size(); ++i) {
        const auto& pc = r.per_point[i];
        if (!pc) continue;
        for (const auto& id : r.check_order) {
          const auto it = pc->values.find(id);
          if (it == pc->values.end()) continue;
          const auto& v = it->second;
          const bool ok = v.applicable && v.residual < r.tol;
          out += csv_row({std::to_string(i), point_string(r.points[i]), id, v.applicable ? "true" : "false",
                          format_double(v.residual), ok ? "true" : "false"});
        }
      }
      return out;
    }
    case Format::text: {
      std::ostringstream os;
      os << r.metric << "  n=" << r.n << "  jet=" << to_string(r.jet) << "  tol=" << format_double(r.tol)
         << "  points=" << r.points.size() << "\n";
      for (const auto& id : r.check_order) {
        const auto& c = r.checks.at(id);
        os << "  " << id << std::string(id.size() < 22 ? 22 - id.size() : 1, ' ');
        if (!c.applicable)
          os << "inapplicable\n";
        else
          os << (c.pass ? "ok    " : "FAIL  ") << "max " << format_double(c.max_residual) << "  mean "
             << format_double(c.mean_residual) << "  (" << c.applicable_points << " pts)\n";
      }
      for (const auto& e : r.errors) os << "  point " << e.index << ": " << e.kind << " error: " << e.message << "\n";
      os << (r.pass ? "PASS" : "FAIL") << "\n";
      return os.str();
    }
  }
  return {};
}

}  // namespace hermlab
