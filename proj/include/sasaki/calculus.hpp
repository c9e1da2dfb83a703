#pragma once

// Differentiation over charts.
//
// Curvature convention: R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z
// - nabla_[X,Y] Z and R(X,Y,Z,W) = g(R(X,Y)Z, W).  Under this convention the
// unit sphere has R(X,Y)Z = g(Y,Z)X - g(X,Z)Y and Sasakian structures satisfy
// R(X,Y)xi = eta(Y)X - eta(X)Y.
//
// All quantities are computed as Taylor jets at a point.  A LocalGeometry of
// order K holds the metric to order K, Christoffel symbols to order K-1 and
// curvature to order K-2, so derivatives of curvature need K = 3.

#include <functional>
#include <optional>
#include <vector>

#include "sasaki/chart.hpp"
#include "sasaki/error.hpp"
#include "sasaki/jet.hpp"
#include "sasaki/tensor.hpp"

namespace sasaki {

namespace detail {

// Inverse of a jet-valued matrix: ginv = sum_k (-g0^{-1} N)^k g0^{-1}, where
// N is the non-constant part; the series terminates at the jet order.
inline TensorJet inverse_metric_jet(const TensorJet& g) {
  const int n = g.dim();
  const int order = g[0].order();
  std::vector<double> g0(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n * n; ++i) g0[i] = g[static_cast<std::size_t>(i)].value();
  const auto inv0 = linalg::inverse(g0, n);
  const auto* layout = g[0].layout();

  TensorJet inv0_jet(n, {Variance::up, Variance::up});
  TensorJet step(n, {Variance::up, Variance::up});  // -g0^{-1} N as a matrix (row, col)
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      inv0_jet(i, j) = layout ? Jet::constant(*layout, inv0[i * n + j]) : Jet(inv0[i * n + j]);
      Jet acc = layout ? Jet::constant(*layout, 0.0) : Jet(0.0);
      for (int k = 0; k < n; ++k) {
        Jet nk = g(k, j);
        nk.coefficient(0) = 0.0;
        acc -= nk * inv0[i * n + k];
      }
      step(i, j) = acc;
    }
  }
  TensorJet result = inv0_jet;
  TensorJet term = inv0_jet;
  for (int k = 1; k <= order; ++k) {
    TensorJet next(n, {Variance::up, Variance::up});
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        Jet acc(0.0);
        for (int l = 0; l < n; ++l) acc += step(i, l) * term(l, j);
        next(i, j) = acc;
      }
    }
    term = next;
    result += term;
  }
  return result;
}

}  // namespace detail

class LocalGeometry {
 public:
  LocalGeometry(const ChartManifold& m, const Point& p, int order) : point_(p), order_(order), n_(m.n()) {
    if (order < 1 || order > kMaxJetOrder) throw Error(ErrorCode::invalid_argument, "geometry: order must be 1..3");
    g_ = m.metric_jet(p, order);
    metric_.emplace(values(g_));  // validates symmetry and positive definiteness
    g_inv_ = detail::inverse_metric_jet(g_);
    const int d = dim();
    std::vector<TensorJet> dg;
    for (int c = 0; c < d; ++c) dg.push_back(partial_derivative(g_, c));
    gamma_ = TensorJet(d, {Variance::down, Variance::down, Variance::up});
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) {
          Jet acc(0.0);
          for (int l = 0; l < d; ++l) acc += g_inv_(k, l) * (dg[i](l, j) + dg[j](l, i) - dg[l](i, j));
          gamma_(i, j, k) = acc * 0.5;
        }
      }
    }
    if (order >= 2) {
      std::vector<TensorJet> dgamma;
      for (int c = 0; c < d; ++c) dgamma.push_back(partial_derivative(gamma_, c));
      riemann_ = TensorJet(d, {Variance::down, Variance::down, Variance::down, Variance::up});
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          for (int k = 0; k < d; ++k) {
            for (int a = 0; a < d; ++a) {
              Jet acc = dgamma[i](j, k, a) - dgamma[j](i, k, a);
              for (int l = 0; l < d; ++l) acc += gamma_(i, l, a) * gamma_(j, k, l) - gamma_(j, l, a) * gamma_(i, k, l);
              riemann_(i, j, k, a) = acc;
            }
          }
        }
      }
    }
  }

  const Point& point() const { return point_; }
  int order() const { return order_; }
  int n() const { return n_; }
  int dim() const { return 2 * n_ + 1; }
  const MetricAtPoint& metric() const { return *metric_; }

  const TensorJet& g() const { return g_; }
  const TensorJet& g_inv() const { return g_inv_; }
  /// Slots [down, down, up]: component (i, j, k) = Gamma^k_ij.
  const TensorJet& christoffel() const { return gamma_; }
  /// Slots [down, down, down, up]: component (i, j, k, a) = (R(d_i, d_j) d_k)^a.
  const TensorJet& riemann() const {
    if (order_ < 2) throw Error(ErrorCode::invalid_argument, "geometry: curvature needs order >= 2");
    return riemann_;
  }
  /// R(X,Y,Z,W) = g(R(X,Y)Z, W), slots all down in argument order.
  TensorJet riemann_lowered() const {
    const auto& r = riemann();
    const int d = dim();
    TensorJet out(d, Slots(4, Variance::down));
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) {
          for (int w = 0; w < d; ++w) {
            Jet acc(0.0);
            for (int a = 0; a < d; ++a) acc += r(i, j, k, a) * g_(a, w);
            out(i, j, k, w) = acc;
          }
        }
      }
    }
    return out;
  }
  TensorJet ricci() const {
    const auto& r = riemann();
    const int d = dim();
    TensorJet ric(d, {Variance::down, Variance::down});
    for (int j = 0; j < d; ++j) {
      for (int k = 0; k < d; ++k) {
        Jet acc(0.0);
        for (int a = 0; a < d; ++a) acc += r(a, j, k, a);
        ric(j, k) = acc;
      }
    }
    return ric;
  }
  /// Ricci operator Q with slots [down, up]: g(QX, Y) = Ric(X, Y).
  TensorJet ricci_operator() const { return raise_last(ricci()); }
  Jet scalar_curvature() const {
    const auto ric = ricci();
    Jet acc(0.0);
    for (int j = 0; j < dim(); ++j) {
      for (int k = 0; k < dim(); ++k) acc += g_inv_(j, k) * ric(j, k);
    }
    return acc;
  }

  /// Raises the last slot of a jet tensor whose last slot is covariant.
  TensorJet raise_last(const TensorJet& t) const {
    const int last = t.rank() - 1;
    if (t.slot(last) != Variance::down) throw Error(ErrorCode::variance_mismatch, "raise_last: slot already up");
    Slots slots = t.slots();
    slots[last] = Variance::up;
    TensorJet r(dim(), slots);
    const int d = dim();
    for (std::size_t f = 0; f < r.size(); f += static_cast<std::size_t>(d)) {
      for (int a = 0; a < d; ++a) {
        Jet acc(0.0);
        for (int b = 0; b < d; ++b) acc += g_inv_(a, b) * t[f + static_cast<std::size_t>(b)];
        r[f + static_cast<std::size_t>(a)] = acc;
      }
    }
    return r;
  }
  /// Lowers the last slot of a jet tensor whose last slot is contravariant.
  TensorJet lower_last(const TensorJet& t) const {
    const int last = t.rank() - 1;
    if (t.slot(last) != Variance::up) throw Error(ErrorCode::variance_mismatch, "lower_last: slot already down");
    Slots slots = t.slots();
    slots[last] = Variance::down;
    TensorJet r(dim(), slots);
    const int d = dim();
    for (std::size_t f = 0; f < r.size(); f += static_cast<std::size_t>(d)) {
      for (int a = 0; a < d; ++a) {
        Jet acc(0.0);
        for (int b = 0; b < d; ++b) acc += g_(a, b) * t[f + static_cast<std::size_t>(b)];
        r[f + static_cast<std::size_t>(a)] = acc;
      }
    }
    return r;
  }

  /// nabla T with the derivative direction as a new leading covariant slot.
  TensorJet covariant_derivative(const TensorJet& t) const {
    const int d = dim();
    Slots slots{Variance::down};
    slots.insert(slots.end(), t.slots().begin(), t.slots().end());
    TensorJet r(d, slots);
    std::vector<TensorJet> dt;
    for (int c = 0; c < d; ++c) dt.push_back(partial_derivative(t, c));
    const std::size_t block = t.size();
    for (int c = 0; c < d; ++c) {
      for (std::size_t f = 0; f < block; ++f) {
        Jet acc = dt[c][f];
        const auto idx = t.multi_index(f);
        for (int s = 0; s < t.rank(); ++s) {
          const std::size_t st = t.stride(s);
          const std::size_t base = f - static_cast<std::size_t>(idx[s]) * st;
          for (int l = 0; l < d; ++l) {
            const Jet& tl = t[base + static_cast<std::size_t>(l) * st];
            if (t.slot(s) == Variance::up) {
              acc += gamma_(c, l, idx[s]) * tl;
            } else {
              acc -= gamma_(c, idx[s], l) * tl;
            }
          }
        }
        r[static_cast<std::size_t>(c) * block + f] = acc;
      }
    }
    return r;
  }

  /// Lie derivative of t along the vector field v (both as jets).
  TensorJet lie_derivative(const TensorJet& v, const TensorJet& t) const {
    if (v.slots() != Slots{Variance::up}) throw Error(ErrorCode::variance_mismatch, "lie_derivative: flow must be a vector field");
    const int d = dim();
    std::vector<TensorJet> dt;
    std::vector<TensorJet> dv;
    for (int c = 0; c < d; ++c) {
      dt.push_back(partial_derivative(t, c));
      dv.push_back(partial_derivative(v, c));
    }
    TensorJet r(d, t.slots());
    for (std::size_t f = 0; f < t.size(); ++f) {
      Jet acc(0.0);
      for (int c = 0; c < d; ++c) acc += v(c) * dt[c][f];
      const auto idx = t.multi_index(f);
      for (int s = 0; s < t.rank(); ++s) {
        const std::size_t st = t.stride(s);
        const std::size_t base = f - static_cast<std::size_t>(idx[s]) * st;
        for (int l = 0; l < d; ++l) {
          const Jet& tl = t[base + static_cast<std::size_t>(l) * st];
          if (t.slot(s) == Variance::up) {
            acc -= dv[l](idx[s]) * tl;
          } else {
            acc += dv[idx[s]](l) * tl;
          }
        }
      }
      r[f] = acc;
    }
    return r;
  }

  /// Exterior derivative of a 1-form, normalized so that
  /// 2 d(omega)(X,Y) = X omega(Y) - Y omega(X) - omega([X,Y]).
  TensorJet exterior_derivative(const TensorJet& omega) const {
    if (omega.slots() != Slots{Variance::down}) throw Error(ErrorCode::variance_mismatch, "exterior_derivative: expected a 1-form");
    const int d = dim();
    TensorJet r(d, {Variance::down, Variance::down});
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) r(i, j) = (omega(j).derivative(i) - omega(i).derivative(j)) * 0.5;
    }
    return r;
  }

 private:
  Point point_;
  int order_;
  int n_;
  std::optional<MetricAtPoint> metric_;
  TensorJet g_;
  TensorJet g_inv_;
  TensorJet gamma_;
  TensorJet riemann_;
};

// ---------------------------------------------------------------------------
// Pointwise value-level operations

inline TensorValue christoffel(const ChartManifold& m, const Point& p) {
  return values(LocalGeometry(m, p, 1).christoffel());
}
inline TensorValue riemann(const ChartManifold& m, const Point& p) { return values(LocalGeometry(m, p, 2).riemann()); }
inline TensorValue ricci(const ChartManifold& m, const Point& p) { return values(LocalGeometry(m, p, 2).ricci()); }
inline double scalar_curvature(const ChartManifold& m, const Point& p) {
  return LocalGeometry(m, p, 2).scalar_curvature().value();
}
inline TensorValue ricci_operator(const ChartManifold& m, const Point& p) {
  return values(LocalGeometry(m, p, 2).ricci_operator());
}

/// nabla of a field at p; the derivative slot comes first.
inline TensorValue covariant_derivative(const ChartManifold& m, const TensorFieldFn& field, const Point& p) {
  LocalGeometry geo(m, p, 1);
  return values(geo.covariant_derivative(m.field_jet(field, p, 1)));
}

inline TensorValue lie_derivative(const ChartManifold& m, const TensorFieldFn& flow, const TensorFieldFn& field,
                                  const Point& p) {
  LocalGeometry geo(m, p, 1);
  return values(geo.lie_derivative(m.field_jet(flow, p, 1), m.field_jet(field, p, 1)));
}

/// Lie derivative of the metric itself.
inline TensorValue lie_derivative_metric(const ChartManifold& m, const TensorFieldFn& flow, const Point& p) {
  LocalGeometry geo(m, p, 1);
  return values(geo.lie_derivative(m.field_jet(flow, p, 1), geo.g()));
}

inline TensorValue exterior_derivative_1form(const ChartManifold& m, const TensorFieldFn& omega, const Point& p) {
  LocalGeometry geo(m, p, 1);
  return values(geo.exterior_derivative(m.field_jet(omega, p, 1)));
}

/// The endomorphism Z -> R(X,Y)Z as slots [down, up].
inline TensorValue curvature_endomorphism(const TensorValue& riemann_value, const TensorValue& x, const TensorValue& y) {
  return insert(insert(riemann_value, 0, x), 0, y);
}

/// (R(X,Y).T)(Z,W) = -T(R(X,Y)Z, W) - T(Z, R(X,Y)W) for a bilinear form T.
inline TensorValue curvature_action(const TensorValue& riemann_value, const TensorValue& x, const TensorValue& y,
                                    const TensorValue& t) {
  if (t.slots() != Slots{Variance::down, Variance::down}) {
    throw Error(ErrorCode::variance_mismatch, "curvature_action: expected a (0,2) tensor");
  }
  const auto a = curvature_endomorphism(riemann_value, x, y);
  const int d = t.dim();
  TensorValue r(d, {Variance::down, Variance::down});
  for (int k = 0; k < d; ++k) {
    for (int w = 0; w < d; ++w) {
      double acc = 0.0;
      for (int b = 0; b < d; ++b) acc -= a(k, b) * t(b, w) + a(w, b) * t(k, b);
      r(k, w) = acc;
    }
  }
  return r;
}

inline TensorValue curvature_action(const ChartManifold& m, const Point& p, const TensorValue& x, const TensorValue& y,
                                    const TensorValue& t) {
  return curvature_action(riemann(m, p), x, y, t);
}

/// Lie derivative by transport along the first-order flow x -> x + tV(x):
/// the pulled-back field is compared at +t and -t.  The central difference
/// cancels the second-order flow terms, so the error is O(t^2).
inline TensorValue lie_derivative_by_flow(const ChartManifold& m, const TensorFieldFn& flow,
                                          const std::function<TensorValue(const Point&)>& field, const Point& p,
                                          double t) {
  const int d = m.dim();
  const auto v = m.field_jet(flow, p, 1);
  std::vector<double> jac(static_cast<std::size_t>(d * d));  // dV^a/dx^i, row a
  for (int a = 0; a < d; ++a) {
    for (int i = 0; i < d; ++i) jac[a * d + i] = v(a).derivative(i).value();
  }
  auto pullback = [&](double s) {
    Point q = p;
    for (int a = 0; a < d; ++a) q[a] += s * v(a).value();
    std::vector<double> push(static_cast<std::size_t>(d * d));
    for (int a = 0; a < d; ++a) {
      for (int i = 0; i < d; ++i) push[a * d + i] = (a == i ? 1.0 : 0.0) + s * jac[a * d + i];
    }
    const auto pull = linalg::inverse(push, d);
    TensorValue r = field(q);
    for (int sl = 0; sl < r.rank(); ++sl) {
      const auto& mat = r.slot(sl) == Variance::down ? push : pull;
      TensorValue next(d, r.slots());
      const std::size_t st = r.stride(sl);
      for (std::size_t f = 0; f < r.size(); ++f) {
        const int i = static_cast<int>((f / st) % static_cast<std::size_t>(d));
        const std::size_t base = f - static_cast<std::size_t>(i) * st;
        double acc = 0.0;
        for (int a = 0; a < d; ++a) {
          // down slot: T(push e_i) = sum_a push[a][i] T_a; up slot: (pull T)^i = sum_a pull[i][a] T^a
          const double w = r.slot(sl) == Variance::down ? mat[a * d + i] : mat[i * d + a];
          acc += w * r[base + static_cast<std::size_t>(a) * st];
        }
        next[f] = acc;
      }
      r = std::move(next);
    }
    return r;
  };
  return (pullback(t) - pullback(-t)) * (0.5 / t);
}

}  // namespace sasaki
