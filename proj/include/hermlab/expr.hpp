#pragma once

// Small arithmetic expression trees over z_k, conj(z_k) and complex constants,
// used for custom metric files and the synthetic random_poly metrics.
//
// JSON grammar:
//   number                         real constant
//   {"const":[re,im]}              complex constant
//   {"var":"z"|"zbar","k":K}       coordinate, 1-based
//   {"op":"+|-|*|/","args":[...]}  n-ary (unary "-" negates)
//   {"op":"exp|log|abs2","arg":e}

#include <json.hpp>

#include <memory>
#include <string>
#include <vector>

#include "hermlab/core.hpp"

namespace hermlab {

class Expr {
 public:
  enum class Kind { constant, z, zbar, add, sub, mul, div, exp, log, abs2 };
  using Ptr = std::shared_ptr<const Expr>;

  static Ptr constant(cplx v) { return Ptr(new Expr(Kind::constant, v, -1, {})); }
  static Ptr z(int k) { return Ptr(new Expr(Kind::z, {}, k, {})); }
  static Ptr zbar(int k) { return Ptr(new Expr(Kind::zbar, {}, k, {})); }
  static Ptr node(Kind kind, std::vector<Ptr> args) {
    return Ptr(new Expr(kind, {}, -1, std::move(args)));
  }

  Kind kind() const { return kind_; }
  const std::vector<Ptr>& args() const { return args_; }

  cplx eval(const Point& p) const {
    switch (kind_) {
      case Kind::constant:
        return value_;
      case Kind::z:
        return p.at(static_cast<std::size_t>(var_));
      case Kind::zbar:
        return std::conj(p.at(static_cast<std::size_t>(var_)));
      case Kind::add: {
        cplx s{};
        for (const auto& a : args_) s += a->eval(p);
        return s;
      }
      case Kind::sub: {
        if (args_.size() == 1) return -args_[0]->eval(p);
        cplx s = args_[0]->eval(p);
        for (std::size_t i = 1; i < args_.size(); ++i) s -= args_[i]->eval(p);
        return s;
      }
      case Kind::mul: {
        cplx s{1.0, 0.0};
        for (const auto& a : args_) s *= a->eval(p);
        return s;
      }
      case Kind::div: {
        cplx s = args_[0]->eval(p);
        for (std::size_t i = 1; i < args_.size(); ++i) s /= args_[i]->eval(p);
        return s;
      }
      case Kind::exp:
        return std::exp(args_[0]->eval(p));
      case Kind::log:
        return std::log(args_[0]->eval(p));
      case Kind::abs2:
        return std::norm(args_[0]->eval(p));
    }
    return {};
  }

  // Largest 0-based coordinate index referenced, or -1.
  int max_variable() const {
    int m = var_;
    for (const auto& a : args_) m = std::max(m, a->max_variable());
    return m;
  }

  nlohmann::ordered_json to_json() const {
    using J = nlohmann::ordered_json;
    switch (kind_) {
      case Kind::constant:
        if (value_.imag() == 0.0) return J(value_.real());
        return J{{"const", {value_.real(), value_.imag()}}};
      case Kind::z:
        return J{{"var", "z"}, {"k", var_ + 1}};
      case Kind::zbar:
        return J{{"var", "zbar"}, {"k", var_ + 1}};
      case Kind::exp:
      case Kind::log:
      case Kind::abs2:
        return J{{"op", op_name(kind_)}, {"arg", args_[0]->to_json()}};
      default: {
        J arr = J::array();
        for (const auto& a : args_) arr.push_back(a->to_json());
        return J{{"op", op_name(kind_)}, {"args", arr}};
      }
    }
  }

  static const char* op_name(Kind k) {
    switch (k) {
      case Kind::add: return "+";
      case Kind::sub: return "-";
      case Kind::mul: return "*";
      case Kind::div: return "/";
      case Kind::exp: return "exp";
      case Kind::log: return "log";
      case Kind::abs2: return "abs2";
      default: return "";
    }
  }

 private:
  Expr(Kind k, cplx v, int var, std::vector<Ptr> args)
      : kind_(k), value_(v), var_(var), args_(std::move(args)) {}

  Kind kind_;
  cplx value_;
  int var_;
  std::vector<Ptr> args_;
};

// Expression for conj(e): swaps z and zbar and conjugates constants. Not
// defined through log branch cuts; conj(log w) = log(conj w) away from them.
inline Expr::Ptr conjugate_expr(const Expr::Ptr& e) {
  switch (e->kind()) {
    case Expr::Kind::constant:
      return Expr::constant(std::conj(e->eval({})));
    case Expr::Kind::z:
      return Expr::zbar(e->max_variable());
    case Expr::Kind::zbar:
      return Expr::z(e->max_variable());
    default: {
      std::vector<Expr::Ptr> args;
      for (const auto& a : e->args()) args.push_back(conjugate_expr(a));
      return Expr::node(e->kind(), std::move(args));
    }
  }
}

template <class Json>
Expr::Ptr parse_expr(const Json& j) {
  if (j.is_number()) return Expr::constant(cplx(j.template get<double>(), 0.0));
  if (!j.is_object()) throw ConfigError("expression must be a number or an object");
  if (j.contains("const")) {
    const auto& c = j.at("const");
    if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number())
      throw ConfigError("\"const\" expects [re, im]");
    return Expr::constant(cplx(c[0].template get<double>(), c[1].template get<double>()));
  }
  if (j.contains("var")) {
    const std::string v = j.at("var").template get<std::string>();
    if (!j.contains("k") || !j.at("k").is_number_integer()) throw ConfigError("\"var\" needs integer \"k\"");
    const int k = j.at("k").template get<int>();
    if (k < 1) throw ConfigError("variable index k is 1-based");
    if (v == "z") return Expr::z(k - 1);
    if (v == "zbar") return Expr::zbar(k - 1);
    throw ConfigError("unknown variable '" + v + "' (expected z or zbar)");
  }
  if (j.contains("op")) {
    const std::string op = j.at("op").template get<std::string>();
    if (op == "exp" || op == "log" || op == "abs2") {
      if (!j.contains("arg")) throw ConfigError("operator '" + op + "' needs \"arg\"");
      const auto kind = op == "exp" ? Expr::Kind::exp : op == "log" ? Expr::Kind::log : Expr::Kind::abs2;
      return Expr::node(kind, {parse_expr(j.at("arg"))});
    }
    Expr::Kind kind;
    if (op == "+") kind = Expr::Kind::add;
    else if (op == "-") kind = Expr::Kind::sub;
    else if (op == "*") kind = Expr::Kind::mul;
    else if (op == "/") kind = Expr::Kind::div;
    else throw ConfigError("unknown operator '" + op + "'");
    if (!j.contains("args") || !j.at("args").is_array() || j.at("args").empty())
      throw ConfigError("operator '" + op + "' needs a non-empty \"args\" array");
    if (kind == Expr::Kind::div && j.at("args").size() < 2) throw ConfigError("'/' needs two or more args");
    std::vector<Expr::Ptr> args;
    for (const auto& a : j.at("args")) args.push_back(parse_expr(a));
    return Expr::node(kind, std::move(args));
  }
  throw ConfigError("expression object needs one of \"const\", \"var\", \"op\"");
}

}  // namespace hermlab
