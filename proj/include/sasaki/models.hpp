#pragma once

// Catalogue of Sasakian model spaces with exact Taylor expansions, the
// closed-form curvature of Sasakian space forms, and a name registry.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <span>
#include <string>

#include "sasaki/contact.hpp"
#include "sasaki/error.hpp"
#include "sasaki/tensor.hpp"

namespace sasaki {

namespace models_detail {

using std::sqrt;

template <class S>
S zero_like(std::span<const S>) {
  return S(0.0);
}

// Standard structure on R^(2n+1), coordinates (x_1..x_n, y_1..y_n, z):
// eta = (dz - sum y_i dx_i) / 2, xi = 2 d/dz,
// g = eta (x) eta + (sum dx_i^2 + dy_i^2) / 4.
struct StandardEta {
  int n;
  template <class S>
  BasicTensor<S> operator()(std::span<const S> x) const {
    const int d = 2 * n + 1;
    BasicTensor<S> e(d, {Variance::down});
    for (int i = 0; i < d; ++i) e(i) = S(0.0);
    for (int i = 0; i < n; ++i) e(i) = x[n + i] * -0.5;
    e(2 * n) = S(0.5);
    return e;
  }
};

struct StandardMetric {
  int n;
  template <class S>
  BasicTensor<S> operator()(std::span<const S> x) const {
    const int d = 2 * n + 1;
    const auto e = StandardEta{n}(x);
    BasicTensor<S> g(d, {Variance::down, Variance::down});
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) g(a, b) = e(a) * e(b);
    }
    for (int a = 0; a < 2 * n; ++a) g(a, a) += S(0.25);
    return g;
  }
};

struct StandardXi {
  int n;
  template <class S>
  BasicTensor<S> operator()(std::span<const S>) const {
    const int d = 2 * n + 1;
    BasicTensor<S> v(d, {Variance::up});
    for (int i = 0; i < d; ++i) v(i) = S(0.0);
    v(2 * n) = S(2.0);
    return v;
  }
};

// phi d_{x_i} = -d_{y_i}, phi d_{y_i} = d_{x_i} + y_i d_z, phi d_z = 0.
struct StandardPhi {
  int n;
  template <class S>
  BasicTensor<S> operator()(std::span<const S> x) const {
    const int d = 2 * n + 1;
    BasicTensor<S> t(d, {Variance::down, Variance::up});
    for (auto& c : t.components()) c = S(0.0);
    for (int i = 0; i < n; ++i) {
      t(i, n + i) = S(-1.0);
      t(n + i, i) = S(1.0);
      t(n + i, 2 * n) = x[n + i];
    }
    return t;
  }
};

// Unit sphere S^(2n+1) in R^(2n+2) = C^(n+1) as the graph P = (u, w(u)),
// w = sqrt(1 - |u|^2).  J rotates each coordinate pair: J(a, b) = (-b, a).
template <class S>
std::vector<S> embedding(std::span<const S> u) {
  const int d = static_cast<int>(u.size());
  std::vector<S> p(u.begin(), u.end());
  S r2(0.0);
  for (int i = 0; i < d; ++i) r2 += u[i] * u[i];
  p.push_back(sqrt(S(1.0) - r2));
  return p;
}

template <class S>
std::vector<S> complex_rotate(const std::vector<S>& v) {
  std::vector<S> out(v.size(), S(0.0));
  for (std::size_t k = 0; k + 1 < v.size(); k += 2) {
    out[k] = -v[k + 1];
    out[k + 1] = v[k];
  }
  return out;
}

struct SphereMetric {
  int n;
  template <class S>
  BasicTensor<S> operator()(std::span<const S> u) const {
    const int d = 2 * n + 1;
    const auto p = embedding(u);
    const S w2 = p[d] * p[d];
    BasicTensor<S> g(d, {Variance::down, Variance::down});
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) g(i, j) = u[i] * u[j] / w2;
      g(i, i) += S(1.0);
    }
    return g;
  }
};

struct SphereXi {
  int n;
  template <class S>
  BasicTensor<S> operator()(std::span<const S> u) const {
    const int d = 2 * n + 1;
    const auto jp = complex_rotate(embedding(u));
    BasicTensor<S> v(d, {Variance::up});
    for (int i = 0; i < d; ++i) v(i) = jp[i];
    return v;
  }
};

struct SphereEta {
  int n;
  template <class S>
  BasicTensor<S> operator()(std::span<const S> u) const {
    const int d = 2 * n + 1;
    const auto p = embedding(u);
    const auto jp = complex_rotate(p);
    BasicTensor<S> e(d, {Variance::down});
    // <JP, dP/du_i> with dP/du_i = e_i - (u_i / w) e_last
    for (int i = 0; i < d; ++i) e(i) = jp[i] - jp[d] * u[i] / p[d];
    return e;
  }
};

// phi X = -(J X) projected onto the tangent space, so that nabla xi = -phi.
struct SpherePhi {
  int n;
  template <class S>
  BasicTensor<S> operator()(std::span<const S> u) const {
    const int d = 2 * n + 1;
    const auto p = embedding(u);
    BasicTensor<S> t(d, {Variance::down, Variance::up});
    for (int i = 0; i < d; ++i) {
      std::vector<S> tangent(static_cast<std::size_t>(d + 1), S(0.0));
      tangent[i] = S(1.0);
      tangent[d] = -u[i] / p[d];
      auto jx = complex_rotate(tangent);
      S radial(0.0);
      for (int k = 0; k <= d; ++k) radial += jx[k] * p[k];
      for (int a = 0; a < d; ++a) t(i, a) = -(jx[a] - radial * p[a]);
    }
    return t;
  }
};

template <class F>
ChartManifold::MetricJetFn metric_jet_of(F f) {
  return [f](const Point& p, int order) {
    const auto x = Jet::variables(p, order);
    return f(std::span<const Jet>(x));
  };
}
template <class F>
ChartManifold::MetricFn metric_value_of(F f) {
  return [f](const Point& p) { return f(std::span<const double>(p)); };
}

}  // namespace models_detail

inline ContactStructure standard_sasakian(int n, double half_width = 1.0) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "standard_sasakian: n must be positive");
  const int d = 2 * n + 1;
  Box box{Point(d, -half_width), Point(d, half_width)};
  using namespace models_detail;
  ContactStructure s;
  s.manifold = ChartManifold(n, box, metric_value_of(StandardMetric{n}), metric_jet_of(StandardMetric{n}));
  s.phi = make_exact_field({Variance::down, Variance::up}, StandardPhi{n});
  s.xi = make_exact_field({Variance::up}, StandardXi{n});
  s.eta = make_exact_field({Variance::down}, StandardEta{n});
  s.name = "r2n1";
  s.space_form_c = -3.0;
  return s;
}

/// Box used for the sphere chart: centred at 0.1 in every coordinate and
/// small enough that |u| stays below 0.85.
inline Box sphere_box(int n) {
  const int d = 2 * n + 1;
  const double half = std::min(0.4, 0.85 / std::sqrt(static_cast<double>(d)) - 0.1);
  return Box{Point(d, 0.1 - half), Point(d, 0.1 + half)};
}

inline ContactStructure unit_sphere(int n) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "unit_sphere: n must be positive");
  using namespace models_detail;
  ContactStructure s;
  s.manifold = ChartManifold(n, sphere_box(n), metric_value_of(SphereMetric{n}), metric_jet_of(SphereMetric{n}));
  s.phi = make_exact_field({Variance::down, Variance::up}, SpherePhi{n});
  s.xi = make_exact_field({Variance::up}, SphereXi{n});
  s.eta = make_exact_field({Variance::down}, SphereEta{n});
  s.name = "sphere";
  s.space_form_c = 1.0;
  return s;
}

/// Curvature R(X,Y)Z of a Sasakian space form with constant phi-sectional
/// curvature c, evaluated with the structure tensors of s at p.
inline TensorValue space_form_oracle(double c, int n, const ContactStructure& s, const Point& p, const TensorValue& x,
                                     const TensorValue& y, const TensorValue& z) {
  if (s.n() != n) throw Error(ErrorCode::invalid_argument, "space_form_oracle: dimension does not match the model");
  if (!s.space_form_c || std::abs(*s.space_form_c - c) > 1e-12) {
    throw Error(ErrorCode::invalid_argument, "space_form_oracle: model is not a space form with this constant");
  }
  ContactLocal loc(s, p, 0);
  auto g = [&](const TensorValue& a, const TensorValue& b) { return loc.g(a, b); };
  auto eta = [&](const TensorValue& a) { return loc.eta_of(a); };
  auto phi = [&](const TensorValue& a) { return loc.phi_of(a); };
  auto big_phi = [&](const TensorValue& a, const TensorValue& b) { return g(a, phi(b)); };
  const auto& xi = loc.xi();
  const double k1 = (c + 3.0) / 4.0, k2 = (c - 1.0) / 4.0;
  TensorValue r = (x * g(y, z) - y * g(x, z)) * k1;
  TensorValue t = y * (eta(x) * eta(z)) - x * (eta(y) * eta(z)) + xi * (g(x, z) * eta(y) - g(y, z) * eta(x)) +
                  phi(x) * big_phi(z, y) - phi(y) * big_phi(z, x) + phi(z) * (2.0 * big_phi(x, y));
  r += t * k2;
  return r;
}

namespace models_detail {

struct Dilation {
  int n;
  template <class S>
  BasicTensor<S> operator()(std::span<const S> x) const {
    const int d = 2 * n + 1;
    const double k = -(2.0 * n + 1.0);
    BasicTensor<S> v(d, {Variance::up});
    for (int i = 0; i < 2 * n; ++i) v(i) = x[i] * k;
    v(2 * n) = x[2 * n] * (2.0 * k);
    return v;
  }
};

}  // namespace models_detail

/// Dilation field V = -(2n+1)(sum x_i d_x_i + y_i d_y_i + 2z d_z) on the
/// standard structure; with lambda = 2(2n+1) it solves the *-Ricci soliton
/// equation.
inline TensorFieldFn dilation_soliton_field(int n) {
  return make_exact_field({Variance::up}, models_detail::Dilation{n});
}

// ---------------------------------------------------------------------------
// Registry

enum class ModelKind { standardR2n1, unitSphere, dHomothetic };

struct ModelSpec {
  std::string name;
  int n = 1;
  ModelKind kind = ModelKind::standardR2n1;
  ModelKind base = ModelKind::standardR2n1;
  double a = 1.0;
};

/// Parses `r2n1`, `sphere` or `<base>-deformed:a=<value>`.
inline ModelSpec parse_model(const std::string& name, int n) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "model: n must be positive");
  auto base_kind = [&](const std::string& b) {
    if (b == "r2n1") return ModelKind::standardR2n1;
    if (b == "sphere") return ModelKind::unitSphere;
    throw Error(ErrorCode::unknown_name, "unknown model: " + name);
  };
  ModelSpec spec{name, n};
  const std::string tag = "-deformed:a=";
  const auto pos = name.find(tag);
  if (pos == std::string::npos) {
    spec.kind = spec.base = base_kind(name);
    return spec;
  }
  spec.kind = ModelKind::dHomothetic;
  spec.base = base_kind(name.substr(0, pos));
  const std::string value = name.substr(pos + tag.size());
  char* end = nullptr;
  spec.a = std::strtod(value.c_str(), &end);
  if (value.empty() || *end != '\0' || !(spec.a > 0.0) || !std::isfinite(spec.a)) {
    throw Error(ErrorCode::unknown_name, "model: bad deformation parameter in " + name);
  }
  return spec;
}

inline ContactStructure build_model(const ModelSpec& spec) {
  ContactStructure base = spec.base == ModelKind::unitSphere ? unit_sphere(spec.n) : standard_sasakian(spec.n);
  if (spec.kind != ModelKind::dHomothetic) return base;
  ContactStructure s = d_homothetic_deform(base, spec.a);
  s.name = spec.name;
  return s;
}

inline ContactStructure make_model(const std::string& name, int n) { return build_model(parse_model(name, n)); }

}  // namespace sasaki
