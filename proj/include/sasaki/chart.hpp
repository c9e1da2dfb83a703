#pragma once

// Coordinate charts and tensor fields on them.
//
// Every field can be evaluated pointwise; fields that know their own Taylor
// expansion (the catalogue models) also expose it as a jet.  Fields without
// one are expanded with central finite differences.

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "sasaki/error.hpp"
#include "sasaki/jet.hpp"
#include "sasaki/tensor.hpp"

namespace sasaki {

struct DerivativeConfig {
  double h_first = 1e-6;
  double h_second = 1e-4;
  double h_third = 5e-4;
  bool richardson = true;  // applied to the third-order stencil

  /// Farthest a stencil for derivatives up to `order` reaches from the point.
  double reach(int order) const {
    double r = 0.0;
    if (order >= 1) r = std::max(r, h_first);
    if (order >= 2) r = std::max(r, h_second);
    if (order >= 3) r = std::max(r, 2.0 * h_third);
    return r;
  }
};

struct Box {
  Point lower;
  Point upper;

  int dim() const { return static_cast<int>(lower.size()); }
  bool contains(const Point& p, double margin = 0.0) const {
    if (static_cast<int>(p.size()) != dim()) return false;
    for (int i = 0; i < dim(); ++i) {
      if (p[i] < lower[i] + margin || p[i] > upper[i] - margin) return false;
    }
    return true;
  }
};

struct TensorFieldFn {
  Slots slots;
  std::function<TensorValue(const Point&)> evaluate;
  /// Optional exact Taylor expansion: (point, order) -> jet-valued tensor.
  std::function<TensorJet(const Point&, int)> jet;

  bool has_jet() const { return static_cast<bool>(jet); }
  TensorValue operator()(const Point& p) const { return evaluate(p); }
};

/// Wraps a generic functor `f(std::span<const S>) -> BasicTensor<S>` that
/// works for S = double and S = Jet into a field with an exact jet.
template <class F>
TensorFieldFn make_exact_field(Slots slots, F f) {
  TensorFieldFn field;
  field.slots = std::move(slots);
  field.evaluate = [f](const Point& p) { return f(std::span<const double>(p)); };
  field.jet = [f](const Point& p, int order) {
    const auto x = Jet::variables(p, order);
    return f(std::span<const Jet>(x));
  };
  return field;
}

inline TensorFieldFn make_field(Slots slots, std::function<TensorValue(const Point&)> f) {
  return TensorFieldFn{std::move(slots), std::move(f), {}};
}

inline TensorFieldFn without_jet(TensorFieldFn f) {
  f.jet = nullptr;
  return f;
}

namespace detail {

// Central-difference weights for the k-th derivative, step 1:
// offsets and weights such that sum w f(x + o h) / h^k ~ f^(k)(x).
inline const std::vector<std::pair<int, double>>& central_stencil(int k) {
  static const std::vector<std::pair<int, double>> s0{{0, 1.0}};
  static const std::vector<std::pair<int, double>> s1{{-1, -0.5}, {1, 0.5}};
  static const std::vector<std::pair<int, double>> s2{{-1, 1.0}, {0, -2.0}, {1, 1.0}};
  static const std::vector<std::pair<int, double>> s3{{-2, -0.5}, {-1, 1.0}, {1, -1.0}, {2, 0.5}};
  switch (k) {
    case 0: return s0;
    case 1: return s1;
    case 2: return s2;
    default: return s3;
  }
}

// Mixed partial d^alpha f by a tensor product of 1-D central stencils.
template <class Eval>
std::vector<double> mixed_partial(const Eval& eval, const Point& p, std::span<const std::uint8_t> alpha, double h) {
  const int dim = static_cast<int>(p.size());
  std::vector<int> vars;
  for (int v = 0; v < dim; ++v) {
    if (alpha[v]) vars.push_back(v);
  }
  std::vector<double> acc;
  std::vector<std::size_t> pos(vars.size(), 0);
  int degree = 0;
  for (auto a : alpha) degree += a;
  const double scale = std::pow(h, -degree);
  while (true) {
    Point q = p;
    double w = scale;
    for (std::size_t k = 0; k < vars.size(); ++k) {
      const auto& st = central_stencil(alpha[vars[k]]);
      q[vars[k]] += st[pos[k]].first * h;
      w *= st[pos[k]].second;
    }
    const auto val = eval(q);
    if (acc.empty()) acc.assign(val.size(), 0.0);
    for (std::size_t i = 0; i < val.size(); ++i) acc[i] += w * val[i];
    std::size_t k = 0;
    for (; k < vars.size(); ++k) {
      if (++pos[k] < central_stencil(alpha[vars[k]]).size()) break;
      pos[k] = 0;
    }
    if (k == vars.size()) break;
  }
  return acc;
}

}  // namespace detail

/// Taylor expansion of a pointwise tensor function by central differences.
/// Degree-k coefficients use step h_k from the config; the third-order
/// stencil is Richardson-extrapolated when enabled.
inline TensorJet finite_difference_jet(const std::function<TensorValue(const Point&)>& f, const Point& p, int order,
                                       const DerivativeConfig& cfg) {
  const int dim = static_cast<int>(p.size());
  const auto& layout = JetLayout::get(dim, order);
  const TensorValue center = f(p);
  std::vector<Jet> comps(center.size(), Jet::constant(layout, 0.0));
  for (std::size_t i = 0; i < center.size(); ++i) comps[i].coefficient(0) = center[i];
  auto eval = [&](const Point& q) {
    const auto t = f(q);
    return std::vector<double>(t.components().begin(), t.components().end());
  };
  for (int m = 1; m < layout.size(); ++m) {
    const auto alpha = layout.exponents(m);
    const int deg = layout.degree(m);
    const double h = deg == 1 ? cfg.h_first : deg == 2 ? cfg.h_second : cfg.h_third;
    auto d = detail::mixed_partial(eval, p, alpha, h);
    if (deg >= 3 && cfg.richardson) {
      const auto half = detail::mixed_partial(eval, p, alpha, 0.5 * h);
      for (std::size_t i = 0; i < d.size(); ++i) d[i] = (4.0 * half[i] - d[i]) / 3.0;
    }
    for (std::size_t i = 0; i < d.size(); ++i) comps[i].coefficient(m) = d[i] / layout.factorial(m);
  }
  return TensorJet(center.dim(), center.slots(), std::move(comps));
}

class ChartManifold {
 public:
  using MetricFn = std::function<TensorValue(const Point&)>;
  using MetricJetFn = std::function<TensorJet(const Point&, int)>;

  ChartManifold() = default;
  ChartManifold(int n, Box domain, MetricFn metric, MetricJetFn metric_jet = {}, DerivativeConfig fd = {})
      : n_(n), domain_(std::move(domain)), metric_(std::move(metric)), metric_jet_(std::move(metric_jet)), fd_(fd) {
    if (n < 1) throw Error(ErrorCode::invalid_argument, "chart: n must be positive");
    if (domain_.dim() != dim() || static_cast<int>(domain_.upper.size()) != dim()) {
      throw Error(ErrorCode::invalid_argument, "chart: domain box must have dimension 2n+1");
    }
  }

  int n() const { return n_; }
  int dim() const { return 2 * n_ + 1; }
  const Box& domain() const { return domain_; }
  const DerivativeConfig& fd_config() const { return fd_; }
  bool has_exact_derivatives() const { return static_cast<bool>(metric_jet_); }

  const MetricFn& metric_fn() const { return metric_; }
  const MetricJetFn& metric_jet_fn() const { return metric_jet_; }

  ChartManifold with_fd_config(DerivativeConfig cfg) const {
    ChartManifold m = *this;
    m.fd_ = cfg;
    return m;
  }
  ChartManifold without_exact_derivatives() const {
    ChartManifold m = *this;
    m.metric_jet_ = nullptr;
    return m;
  }

  TensorValue metric_value(const Point& p) const {
    require_inside(p, 0.0);
    return metric_(p);
  }
  MetricAtPoint metric_at(const Point& p) const { return MetricAtPoint(metric_value(p)); }

  /// Margin from the domain boundary needed to expand a field to `order`.
  double stencil_margin(int order, bool exact) const { return exact ? 0.0 : 2.0 * fd_.reach(order); }

  void require_inside(const Point& p, double margin) const {
    if (static_cast<int>(p.size()) != dim()) throw Error(ErrorCode::invalid_argument, "chart: point has wrong dimension");
    if (!domain_.contains(p, margin)) {
      throw Error(ErrorCode::stencil_margin, "chart: point too close to the domain boundary for the stencil");
    }
  }

  /// Metric Taylor expansion to `order` (exact when available).
  TensorJet metric_jet(const Point& p, int order) const {
    require_inside(p, stencil_margin(order, has_exact_derivatives()));
    if (metric_jet_) return metric_jet_(p, order);
    return finite_difference_jet(metric_, p, order, fd_);
  }

  /// Expansion of an arbitrary field on this chart.
  TensorJet field_jet(const TensorFieldFn& field, const Point& p, int order) const {
    require_inside(p, stencil_margin(order, field.has_jet()));
    if (field.has_jet()) return field.jet(p, order);
    return finite_difference_jet(field.evaluate, p, order, fd_);
  }

 private:
  int n_ = 1;
  Box domain_;
  MetricFn metric_;
  MetricJetFn metric_jet_;
  DerivativeConfig fd_;
};

}  // namespace sasaki
