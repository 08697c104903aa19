#pragma once

// Command-line front end: eval, verify, scan and list.
// Exit codes: 0 ok, 1 verify failed, 2 configuration, 3 domain, 4 numeric.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hermlab/catalog.hpp"
#include "hermlab/identities.hpp"
#include "hermlab/report.hpp"

namespace hermlab::cli {

enum ExitCode : int { ok = 0, verify_failed = 1, config_error = 2, domain_error = 3, numeric_error = 4 };

inline int exit_code_for(const std::string& kind) {
  if (kind == "domain" || kind == "metric") return domain_error;
  if (kind == "numeric") return numeric_error;
  return config_error;
}

inline double parse_number(const std::string& s, const std::string& what) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  if (b == std::string::npos) throw ConfigError("empty number in " + what);
  const std::string t = s.substr(b, e - b + 1);
  double v = 0.0;
  const auto r = std::from_chars(t.data(), t.data() + t.size(), v);
  if (r.ec != std::errc() || r.ptr != t.data() + t.size()) throw ConfigError("bad number '" + t + "' in " + what);
  return v;
}

// "re,im;re,im;..." with "re" alone meaning a real coordinate.
inline Point parse_point(const std::string& text) {
  Point z;
  std::stringstream ss(text);
  for (std::string coord; std::getline(ss, coord, ';');) {
    const auto comma = coord.find(',');
    if (comma == std::string::npos) {
      z.emplace_back(parse_number(coord, "point"), 0.0);
    } else {
      if (coord.find(',', comma + 1) != std::string::npos) throw ConfigError("coordinate '" + coord + "' has extra commas");
      z.emplace_back(parse_number(coord.substr(0, comma), "point"), parse_number(coord.substr(comma + 1), "point"));
    }
  }
  if (z.empty()) throw ConfigError("empty point");
  return z;
}

inline std::map<std::string, double> parse_params(const std::vector<std::string>& items) {
  std::map<std::string, double> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("parameter must be key=value, got '" + item + "'");
    out[item.substr(0, eq)] = parse_number(item.substr(eq + 1), "parameter '" + item.substr(0, eq) + "'");
  }
  return out;
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

struct Config {
  std::string command;
  std::string metric;
  std::optional<int> n;
  std::vector<std::string> params;
  std::vector<std::string> points;
  std::string grid;
  int count = 10;
  std::uint64_t seed = 1;
  std::optional<double> box;
  std::optional<double> tol;
  double fd_step = 1e-3;
  std::string jet = "auto";
  std::string format = "json";
  std::string checks;
  std::string output;
  std::string spec_file;
  int directions = 200;
};

inline MetricSpec build_metric(const Config& c) {
  std::string id = c.metric;
  if (id.empty() && !c.spec_file.empty()) id = "custom";
  if (id.empty()) throw ConfigError("--metric is required");
  if (detail::normalize_id(id) == "custom") {
    if (c.spec_file.empty()) throw ConfigError("metric 'custom' needs --spec-file");
    std::ifstream in(c.spec_file);
    if (!in) throw ConfigError("cannot read spec file '" + c.spec_file + "'");
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("spec file is not valid JSON: ") + e.what());
    }
    if (!c.params.empty()) throw ConfigError("custom metrics take no --param");
    MetricSpec spec = make_custom(doc);
    if (c.n && *c.n != spec.n)
      throw ConfigError("--n " + std::to_string(*c.n) + " disagrees with spec file n = " + std::to_string(spec.n));
    return spec;
  }
  if (!c.spec_file.empty()) throw ConfigError("--spec-file only applies to metric 'custom'");
  if (!c.n) throw ConfigError("--n is required");
  return make_metric(id, *c.n, parse_params(c.params));
}

inline JetOptions jet_options(const Config& c) {
  JetOptions o;
  if (c.jet == "analytic")
    o.source = JetSource::analytic;
  else if (c.jet == "fd")
    o.source = JetSource::finite_difference;
  else if (c.jet != "auto")
    throw ConfigError("--jet must be analytic, fd or auto");
  if (!(c.fd_step > 0.0) || !std::isfinite(c.fd_step)) throw ConfigError("--fd-step must be positive");
  o.fd_step = c.fd_step;
  return o;
}

inline void check_points(const MetricSpec& spec, const std::vector<Point>& pts) {
  for (const auto& z : pts) {
    if (static_cast<int>(z.size()) != spec.n)
      throw ConfigError("point has " + std::to_string(z.size()) + " coordinates, expected " + std::to_string(spec.n));
    for (const auto& v : z)
      if (!fd::finite_value(v)) throw NumericError("point has non-finite coordinates");
    if (!spec.guard.admits(z)) throw DomainError("point outside the domain (" + spec.guard.describe() + ")");
  }
}

inline std::vector<Point> gather_points(const Config& c, const MetricSpec& spec, bool allow_random) {
  std::vector<Point> pts;
  for (const auto& p : c.points) pts.push_back(parse_point(p));
  if (!c.grid.empty()) {
    const GridSpec g = parse_grid(c.grid, spec.n);
    Point base = pts.empty() ? Point(spec.n) : pts.front();
    if (pts.size() > 1) throw ConfigError("--grid takes at most one --point as its base");
    if (static_cast<int>(base.size()) != spec.n) throw ConfigError("grid base point has the wrong dimension");
    pts = grid_points(g, base);
  } else if (pts.empty() && allow_random) {
    if (c.count < 1) throw ConfigError("--count must be positive");
    pts = sample_points(spec, c.count, c.seed, c.box);
  }
  if (pts.empty()) throw ConfigError("no points given (use --point or --grid)");
  check_points(spec, pts);
  return pts;
}

inline void emit(const Config& c, const std::string& text, std::ostream& out) {
  if (c.output.empty() || c.output == "-") {
    out << text;
    return;
  }
  std::ofstream f(c.output, std::ios::binary);
  if (!f) throw ConfigError("cannot write output file '" + c.output + "'");
  f << text;
}

inline int run_eval(const Config& c, std::ostream& out) {
  const MetricSpec spec = build_metric(c);
  if (c.points.size() != 1 || !c.grid.empty()) throw ConfigError("eval needs exactly one --point");
  const auto pts = gather_points(c, spec, false);
  SummaryOptions opt;
  opt.jet = jet_options(c);
  opt.tol = c.tol.value_or(opt.jet.source.value_or(spec.has_analytic_jet() ? JetSource::analytic
                                                                             : JetSource::finite_difference) ==
                                   JetSource::analytic
                               ? 1e-8
                               : 1e-4);
  opt.directions = c.directions;
  emit(c, render_summary(summarize_point(spec, pts.front(), opt), parse_format(c.format)), out);
  return ok;
}

inline int run_verify(const Config& c, std::ostream& out) {
  const MetricSpec spec = build_metric(c);
  const Format fmt = parse_format(c.format);
  const auto pts = gather_points(c, spec, true);
  SuiteOptions opt;
  opt.jet = jet_options(c);
  opt.tol = c.tol;
  opt.checks = split_list(c.checks);
  opt.directions = c.directions;
  const SuiteReport rep = run_suite(spec, pts, opt);
  emit(c, render_suite(rep, fmt), out);
  if (!rep.errors.empty()) return exit_code_for(rep.errors.front().kind);
  return rep.pass ? ok : verify_failed;
}

inline int run_scan(const Config& c, std::ostream& out) {
  const MetricSpec spec = build_metric(c);
  const Format fmt = parse_format(c.format);
  const auto pts = gather_points(c, spec, true);
  SummaryOptions opt;
  opt.jet = jet_options(c);
  opt.tol = c.tol.value_or(1e-8);
  opt.directions = c.directions;
  const ScanResult res = hermlab::run_scan(spec, pts, opt);
  emit(c, render_scan(res, fmt), out);
  if (!res.errors.empty()) return exit_code_for(res.errors.front().kind);
  return ok;
}

inline int run_list(const Config& c, std::ostream& out) {
  const Format fmt = parse_format(c.format);
  const ordered_json listing = catalog_listing();
  if (fmt == Format::json) {
    emit(c, listing.dump(2) + "\n", out);
  } else if (fmt == Format::csv) {
    std::string s = csv_row({"id", "description", "domain", "analytic_jet"});
    for (const auto& e : listing)
      s += csv_row({e["id"].get<std::string>(), e["description"].get<std::string>(), e["domain"].get<std::string>(),
                    e["analytic_jet"].get<bool>() ? "true" : "false"});
    emit(c, s, out);
  } else {
    std::string s;
    for (const auto& e : listing)
      s += e["id"].get<std::string>() + "  " + e["description"].get<std::string>() + "\n";
    emit(c, s, out);
  }
  return ok;
}

inline void add_common(CLI::App* sub, Config& c, bool points, bool suite) {
  sub->add_option("--format", c.format, "json, csv or text")->capture_default_str();
  sub->add_option("--output,-o", c.output, "write to this file instead of stdout");
  if (!points) return;
  sub->add_option("--metric,-m", c.metric, "catalog id, product(a,b) or custom");
  sub->add_option("--n", c.n, "complex dimension");
  sub->add_option("--param", c.params, "metric parameter key=value (repeatable)");
  sub->add_option("--spec-file", c.spec_file, "JSON expression file for metric 'custom'");
  sub->add_option("--point,-p", c.points, "point as re,im;re,im;... (repeatable)");
  sub->add_option("--jet", c.jet, "analytic, fd or auto")->capture_default_str();
  sub->add_option("--fd-step", c.fd_step, "finite-difference step")->capture_default_str();
  sub->add_option("--tol", c.tol, "tolerance (default 1e-8 analytic, 1e-4 fd)");
  sub->add_option("--directions", c.directions, "random directions for H")->capture_default_str();
  if (!suite) return;
  sub->add_option("--grid", c.grid, "k:min:max:steps[:angle] along coordinate k");
  sub->add_option("--count", c.count, "random points when no --point/--grid")->capture_default_str();
  sub->add_option("--seed", c.seed, "seed for random points")->capture_default_str();
  sub->add_option("--box", c.box, "radius of the sampling ball");
  sub->add_option("--checks", c.checks, "comma-separated check ids (verify)");
}

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"hermlab: curvature of Hermitian metrics and pointwise identity checks"};
  app.require_subcommand(1);
  Config c;
  CLI::App* eval = app.add_subcommand("eval", "curvature summary at one point");
  CLI::App* verify = app.add_subcommand("verify", "run the identity suite over points");
  CLI::App* scan = app.add_subcommand("scan", "curvature summary over a grid or sample");
  CLI::App* list = app.add_subcommand("list", "print the metric catalog");
  add_common(eval, c, true, false);
  add_common(verify, c, true, true);
  add_common(scan, c, true, true);
  add_common(list, c, false, false);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "hermlab: " << e.what() << "\n";
    return config_error;
  }

  try {
    if (eval->parsed()) return run_eval(c, out);
    if (verify->parsed()) return run_verify(c, out);
    if (scan->parsed()) return run_scan(c, out);
    return run_list(c, out);
  } catch (const DomainError& e) {
    err << "hermlab: domain error: " << e.what() << "\n";
    return domain_error;
  } catch (const MetricError& e) {
    err << "hermlab: domain error: " << e.what() << "\n";
    return domain_error;
  } catch (const NumericError& e) {
    err << "hermlab: numeric error: " << e.what() << "\n";
    return numeric_error;
  } catch (const ConfigError& e) {
    err << "hermlab: configuration error: " << e.what() << "\n";
    return config_error;
  } catch (const Error& e) {
    err << "hermlab: error: " << e.what() << "\n";
    return config_error;
  }
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(std::move(args), out, err);
}

}  // namespace hermlab::cli
