#pragma once

// A form-valued field known at one point through its value and the Wirtinger
// derivatives of its coefficients: d_k, d_lbar and the mixed d_k d_lbar.
// Products follow the Leibniz rule, so polynomial expressions in omega (its
// powers, wedges with other jets) can be differentiated exactly from a metric
// jet without sampling neighbouring points.

#include <vector>

#include "hermlab/forms.hpp"
#include "hermlab/jets.hpp"

namespace hermlab {

struct FormJet {
  Form value;
  std::vector<Form> d;      // d[k]: coefficients differentiated by d_k
  std::vector<Form> dbar;   // dbar[l]: by d_lbar
  std::vector<Form> ddbar;  // ddbar[k * n + l]: by d_k d_lbar

  int dim() const { return value.dim(); }
  const Form& mixed(int k, int l) const { return ddbar[static_cast<std::size_t>(k) * dim() + l]; }

  static FormJet constant(const Form& v) {
    const int n = v.dim();
    const Form zero(n, v.p(), v.q());
    return {v, std::vector<Form>(n, zero), std::vector<Form>(n, zero),
            std::vector<Form>(static_cast<std::size_t>(n) * n, zero)};
  }
};

inline FormJet wedge(const FormJet& a, const FormJet& b) {
  const int n = a.dim();
  FormJet out;
  out.value = wedge(a.value, b.value);
  out.d.reserve(n);
  out.dbar.reserve(n);
  for (int k = 0; k < n; ++k) {
    out.d.push_back(wedge(a.d[k], b.value) + wedge(a.value, b.d[k]));
    out.dbar.push_back(wedge(a.dbar[k], b.value) + wedge(a.value, b.dbar[k]));
  }
  out.ddbar.reserve(static_cast<std::size_t>(n) * n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      out.ddbar.push_back(wedge(a.mixed(k, l), b.value) + wedge(a.d[k], b.dbar[l]) +
                          wedge(a.dbar[l], b.d[k]) + wedge(a.value, b.mixed(k, l)));
  return out;
}

inline FormJet operator*(cplx s, FormJet a) {
  a.value *= s;
  for (auto& f : a.d) f *= s;
  for (auto& f : a.dbar) f *= s;
  for (auto& f : a.ddbar) f *= s;
  return a;
}

inline FormJet wedge_power(const FormJet& a, int r) {
  const int n = a.dim();
  FormJet out = FormJet::constant(Form::scalar(n, 1.0));
  for (int i = 0; i < r; ++i) out = wedge(out, a);
  return out;
}

// d(phi) restricted to types: del phi = sum_k dz^k ^ d_k phi.
inline Form del(const FormJet& a) {
  const int n = a.dim();
  Form out(n, a.value.p() + 1, a.value.q());
  for (int k = 0; k < n; ++k) out += wedge(Form::dz(n, k), a.d[k]);
  return out;
}

inline Form delbar(const FormJet& a) {
  const int n = a.dim();
  Form out(n, a.value.p(), a.value.q() + 1);
  for (int l = 0; l < n; ++l) out += wedge(Form::dzbar(n, l), a.dbar[l]);
  return out;
}

// del delbar phi = sum_{k,l} dz^k ^ dzbar^l ^ d_k d_lbar phi.
inline Form del_delbar(const FormJet& a) {
  const int n = a.dim();
  Form out(n, a.value.p() + 1, a.value.q() + 1);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      out += wedge(wedge(Form::dz(n, k), Form::dzbar(n, l)), a.mixed(k, l));
  return out;
}

// omega = sqrt(-1) h_{i jbar} dz^i ^ dzbar^j with its jet.
inline FormJet omega_jet(const MetricJet& jet) {
  const int n = jet.dim();
  auto make = [n](auto coeff) {
    Form w(n, 1, 1);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) w.at(1u << i, 1u << j) = kI * coeff(i, j);
    return w;
  };
  FormJet out;
  out.value = make([&](int i, int j) { return jet.h(i, j); });
  for (int k = 0; k < n; ++k) {
    out.d.push_back(make([&](int i, int j) { return jet.dh(k, i, j); }));
    out.dbar.push_back(make([&](int i, int j) { return jet.dbar_h(k, i, j); }));
  }
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) out.ddbar.push_back(make([&](int i, int j) { return jet.ddbar_h(k, l, i, j); }));
  return out;
}

}  // namespace hermlab
