#pragma once

// Almost contact metric structures (phi, xi, eta, g) on a chart, and their
// verification against the contact and Sasakian axioms.

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sasaki/calculus.hpp"
#include "sasaki/chart.hpp"
#include "sasaki/report.hpp"
#include "sasaki/tensor.hpp"

namespace sasaki {

struct ContactStructure {
  ChartManifold manifold;
  TensorFieldFn phi;  // slots [down, up]
  TensorFieldFn xi;   // slots [up]
  TensorFieldFn eta;  // slots [down]
  std::string name;
  /// Constant phi-sectional curvature when the structure is a known space form.
  std::optional<double> space_form_c;

  int n() const { return manifold.n(); }
  int dim() const { return manifold.dim(); }
  bool exact() const { return manifold.has_exact_derivatives(); }

  /// Same structure with every derivative taken by finite differences.
  ContactStructure finite_difference_only() const {
    ContactStructure s = *this;
    s.manifold = manifold.without_exact_derivatives();
    s.phi = without_jet(phi);
    s.xi = without_jet(xi);
    s.eta = without_jet(eta);
    return s;
  }
};

/// Everything known about a structure at one point, expanded to a given
/// order.  Order 0 evaluates values only.
class ContactLocal {
 public:
  ContactLocal(const ContactStructure& s, const Point& p, int order) : n_(s.n()), point_(p) {
    if (order >= 1) {
      geo_.emplace(s.manifold, p, order);
      phi_jet_ = s.manifold.field_jet(s.phi, p, order);
      xi_jet_ = s.manifold.field_jet(s.xi, p, order);
      eta_jet_ = s.manifold.field_jet(s.eta, p, order);
      metric_.emplace(geo_->metric());
      phi_ = values(phi_jet_);
      xi_ = values(xi_jet_);
      eta_ = values(eta_jet_);
    } else {
      metric_.emplace(s.manifold.metric_value(p));
      phi_ = s.phi(p);
      xi_ = s.xi(p);
      eta_ = s.eta(p);
    }
    frame_ = coordinate_frame(*metric_, &xi_);
  }

  int n() const { return n_; }
  int dim() const { return 2 * n_ + 1; }
  const Point& point() const { return point_; }
  const LocalGeometry& geo() const { return *geo_; }
  const MetricAtPoint& metric() const { return *metric_; }
  const OrthonormalFrame& frame() const { return frame_; }

  const TensorJet& phi_jet() const { return phi_jet_; }
  const TensorJet& xi_jet() const { return xi_jet_; }
  const TensorJet& eta_jet() const { return eta_jet_; }
  const TensorValue& phi() const { return phi_; }
  const TensorValue& xi() const { return xi_; }
  const TensorValue& eta() const { return eta_; }

  double g(const TensorValue& x, const TensorValue& y) const { return (*metric_)(x, y); }
  double eta_of(const TensorValue& x) const { return insert(eta_, 0, x)[0]; }
  TensorValue phi_of(const TensorValue& x) const { return insert(phi_, 0, x); }
  double norm(const TensorValue& t) const { return frame_norm(t, frame_, *metric_); }

  /// Component of x orthogonal to xi, normalized.
  TensorValue horizontal_unit(const TensorValue& x) const {
    TensorValue h = x - xi_ * eta_of(x);
    return h * (1.0 / metric_->norm(h));
  }

 private:
  int n_;
  Point point_;
  std::optional<LocalGeometry> geo_;
  std::optional<MetricAtPoint> metric_;
  TensorJet phi_jet_, xi_jet_, eta_jet_;
  TensorValue phi_, xi_, eta_;
  OrthonormalFrame frame_;
};

/// Runs f(local, vectors) for every sample tuple; vectors are g-unit.
template <class F>
void for_each_sample(const ContactStructure& s, const SamplePlan& plan, int order, F&& f) {
  for (const auto& sp : sample_points(s.manifold, plan)) {
    ContactLocal local(s, sp.point, order);
    for (const auto& tuple : sp.tuples) {
      std::vector<TensorValue> unit;
      for (const auto& v : tuple) unit.push_back(normalized(v, local.metric()));
      f(local, std::span<const TensorValue>(unit));
    }
  }
}

/// Picks the default tolerance for exact-derivative or finite-difference mode.
inline double mode_tolerance(const ContactStructure& s, double exact, double fd) { return s.exact() ? exact : fd; }

// ---------------------------------------------------------------------------

inline std::vector<ResidualReport> verify_almost_contact(const ContactStructure& s, const SamplePlan& plan) {
  const std::string suite = "axioms";
  const double tol = plan.tolerance(suite, mode_tolerance(s, 1e-10, 1e-10));
  ResidualAccumulator phi2, eta_xi, phi_xi, eta_phi;
  for_each_sample(s, plan, 0, [&](const ContactLocal& c, std::span<const TensorValue> v) {
    const auto& x = v[0];
    phi2.add(c.norm(c.phi_of(c.phi_of(x)) + x - c.xi() * c.eta_of(x)), c.point());
    eta_xi.add(std::abs(c.eta_of(c.xi()) - 1.0), c.point());
    phi_xi.add(c.norm(c.phi_of(c.xi())), c.point());
    eta_phi.add(std::abs(c.eta_of(c.phi_of(x))), c.point());
  });
  return {phi2.report(suite, "phi-squared", "phi^2 X = -X + eta(X) xi", tol),
          eta_xi.report(suite, "eta-of-xi", "eta(xi) = 1", tol),
          phi_xi.report(suite, "phi-of-xi", "phi xi = 0", tol),
          eta_phi.report(suite, "eta-after-phi", "eta o phi = 0", tol)};
}

inline std::vector<ResidualReport> verify_compatibility(const ContactStructure& s, const SamplePlan& plan) {
  const std::string suite = "axioms";
  const double tol = plan.tolerance(suite, 1e-10);
  ResidualAccumulator compat, dual;
  for_each_sample(s, plan, 0, [&](const ContactLocal& c, std::span<const TensorValue> v) {
    const auto &x = v[0], &y = v[1];
    compat.add(std::abs(c.g(c.phi_of(x), c.phi_of(y)) - c.g(x, y) + c.eta_of(x) * c.eta_of(y)), c.point());
    dual.add(std::abs(c.eta_of(x) - c.g(c.xi(), x)), c.point());
  });
  return {compat.report(suite, "metric-compatibility", "g(phi X, phi Y) = g(X,Y) - eta(X) eta(Y)", tol),
          dual.report(suite, "eta-metric-dual", "eta = g(xi, .)", tol)};
}

/// Phi(X,Y) = g(X, phi Y).
inline TensorValue fundamental_two_form(const ContactStructure& s, const Point& p) {
  const auto g = s.manifold.metric_value(p);
  const auto phi = s.phi(p);
  const int d = s.dim();
  TensorValue out(d, {Variance::down, Variance::down});
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      double acc = 0.0;
      for (int a = 0; a < d; ++a) acc += g(i, a) * phi(j, a);
      out(i, j) = acc;
    }
  }
  return out;
}

/// d(eta) - Phi as a two-form residual.
inline ResidualReport verify_contact_metric(const ContactStructure& s, const SamplePlan& plan) {
  const std::string suite = "axioms";
  const double tol = plan.tolerance(suite, mode_tolerance(s, 1e-10, 1e-7));
  ResidualAccumulator acc;
  for (const auto& sp : sample_points(s.manifold, plan)) {
    ContactLocal c(s, sp.point, 1);
    const auto d_eta = values(c.geo().exterior_derivative(c.eta_jet()));
    acc.add(c.norm(d_eta - fundamental_two_form(s, sp.point)), sp.point);
  }
  return acc.report(suite, "contact-metric", "d eta(X,Y) = Phi(X,Y) = g(X, phi Y)", tol);
}

/// Nijenhuis torsion [phi, phi](d_i, d_j) as slots [down, down, up].
inline TensorJet nijenhuis_jet(const TensorJet& phi) {
  const int d = phi.dim();
  std::vector<TensorJet> dphi;
  for (int c = 0; c < d; ++c) dphi.push_back(partial_derivative(phi, c));
  TensorJet out(d, {Variance::down, Variance::down, Variance::up});
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      for (int a = 0; a < d; ++a) {
        Jet acc(0.0);
        for (int l = 0; l < d; ++l) {
          acc += phi(i, l) * dphi[l](j, a) - phi(j, l) * dphi[l](i, a);
          acc -= phi(l, a) * (dphi[i](j, l) - dphi[j](i, l));
        }
        out(i, j, a) = acc;
      }
    }
  }
  return out;
}

inline ResidualReport nijenhuis_normality(const ContactStructure& s, const SamplePlan& plan) {
  const std::string suite = "axioms";
  const double tol = plan.tolerance(suite, mode_tolerance(s, 1e-8, 1e-6));
  ResidualAccumulator acc;
  for_each_sample(s, plan, 1, [&](const ContactLocal& c, std::span<const TensorValue> v) {
    const auto nij = values(nijenhuis_jet(c.phi_jet()));
    const auto d_eta = values(c.geo().exterior_derivative(c.eta_jet()));
    const auto& x = v[0];
    const auto& y = v[1];
    const auto lhs = insert(insert(nij, 0, x), 0, y) + c.xi() * (2.0 * insert(insert(d_eta, 0, x), 0, y)[0]);
    acc.add(c.norm(lhs), c.point());
  });
  return acc.report(suite, "normality", "[phi,phi](X,Y) + 2 d eta(X,Y) xi = 0", tol);
}

inline std::vector<ResidualReport> verify_sasakian(const ContactStructure& s, const SamplePlan& plan) {
  const std::string suite = "sasakian";
  const double tol = plan.tolerance(suite, mode_tolerance(s, 1e-8, 1e-6));
  ResidualAccumulator nabla_phi, nabla_xi, killing, h_tensor;
  for (const auto& sp : sample_points(s.manifold, plan)) {
    ContactLocal c(s, sp.point, 1);
    const auto dphi = values(c.geo().covariant_derivative(c.phi_jet()));
    const auto dxi = values(c.geo().covariant_derivative(c.xi_jet()));
    killing.add(c.norm(values(c.geo().lie_derivative(c.xi_jet(), c.geo().g()))), sp.point);
    h_tensor.add(c.norm(values(c.geo().lie_derivative(c.xi_jet(), c.phi_jet())) * 0.5), sp.point);
    for (const auto& tuple : sp.tuples) {
      const auto x = normalized(tuple[0], c.metric());
      const auto y = normalized(tuple[1], c.metric());
      const auto lhs = insert(insert(dphi, 0, x), 0, y);
      nabla_phi.add(c.norm(lhs - c.xi() * c.g(x, y) + x * c.eta_of(y)), sp.point);
      nabla_xi.add(c.norm(insert(dxi, 0, x) + c.phi_of(x)), sp.point);
    }
  }
  return {nabla_phi.report(suite, "nabla-phi", "(nabla_X phi)Y = g(X,Y) xi - eta(Y) X", tol),
          nabla_xi.report(suite, "nabla-xi", "nabla_X xi = -phi X", tol),
          killing.report(suite, "xi-killing", "L_xi g = 0", tol),
          h_tensor.report(suite, "h-vanishes", "h = (1/2) L_xi phi = 0", tol)};
}

/// Curvature identities of Sasakian structures.  The first report is the
/// sign-convention lock R(X,Y)xi = eta(Y)X - eta(X)Y.
inline std::vector<ResidualReport> verify_curvature_identities(const ContactStructure& s, const SamplePlan& plan) {
  const std::string suite = "curvature-identities";
  const double tol = plan.tolerance(suite, mode_tolerance(s, 1e-8, 1e-4));
  const double n2 = 2.0 * s.n();
  ResidualAccumulator r_xi, r_xi_first, ric_xi, phi2_proj, symmetries, bianchi;
  for (const auto& sp : sample_points(s.manifold, plan)) {
    ContactLocal c(s, sp.point, 2);
    const auto r = values(c.geo().riemann());
    const auto r4 = values(c.geo().riemann_lowered());
    const auto ric = values(c.geo().ricci());

    const auto rf = frame_components(r4, c.frame(), c.metric());
    const int d = c.dim();
    const double scale = std::max(1.0, max_abs(rf));
    double sym = 0.0, bia = 0.0;
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) {
          for (int l = 0; l < d; ++l) {
            sym = std::max({sym, std::abs(rf(i, j, k, l) + rf(j, i, k, l)), std::abs(rf(i, j, k, l) + rf(i, j, l, k)),
                            std::abs(rf(i, j, k, l) - rf(k, l, i, j))});
            bia = std::max(bia, std::abs(rf(i, j, k, l) + rf(j, k, i, l) + rf(k, i, j, l)));
          }
        }
      }
    }
    symmetries.add(sym / scale, sp.point);
    bianchi.add(bia / scale, sp.point);

    for (const auto& tuple : sp.tuples) {
      std::vector<TensorValue> v;
      for (const auto& t : tuple) v.push_back(normalized(t, c.metric()));
      const auto &x = v[0], &y = v[1], &z = v[2], &w = v[3];
      const auto rxy_xi = insert(insert(insert(r, 0, x), 0, y), 0, c.xi());
      r_xi.add(c.norm(rxy_xi - x * c.eta_of(y) + y * c.eta_of(x)), sp.point);
      const auto rxi_xy = insert(insert(insert(r, 0, c.xi()), 0, x), 0, y);
      r_xi_first.add(c.norm(rxi_xy - c.xi() * c.g(x, y) + x * c.eta_of(y)), sp.point);
      ric_xi.add(std::abs(insert(insert(ric, 0, x), 0, c.xi())[0] - n2 * c.eta_of(x)), sp.point);

      auto proj = [&](const TensorValue& u) { return c.phi_of(c.phi_of(u)); };
      auto r4of = [&](const TensorValue& a, const TensorValue& b, const TensorValue& e, const TensorValue& f) {
        return insert(insert(insert(insert(r4, 0, a), 0, b), 0, e), 0, f)[0];
      };
      const double lhs = r4of(proj(x), proj(y), proj(z), proj(w));
      const double ex = c.eta_of(x), ey = c.eta_of(y), ez = c.eta_of(z), ew = c.eta_of(w);
      const double rhs = r4of(x, y, z, w) - c.g(y, z) * ex * ew + c.g(x, z) * ey * ew + c.g(y, w) * ex * ez -
                         c.g(x, w) * ey * ez;
      phi2_proj.add(std::abs(lhs - rhs), sp.point);
    }
  }
  return {r_xi.report(suite, "R-XY-xi", "R(X,Y) xi = eta(Y) X - eta(X) Y", tol),
          r_xi_first.report(suite, "R-xi-X", "R(xi,X) Y = g(X,Y) xi - eta(Y) X", tol),
          ric_xi.report(suite, "Ric-xi", "Ric(X, xi) = 2n eta(X)", tol),
          phi2_proj.report(suite, "phi2-projected-curvature",
                           "R(phi^2 X, phi^2 Y, phi^2 Z, phi^2 W) = R(X,Y,Z,W) - g(Y,Z)eta(X)eta(W) + "
                           "g(X,Z)eta(Y)eta(W) + g(Y,W)eta(X)eta(Z) - g(X,W)eta(Y)eta(Z)",
                           tol),
          symmetries.report(suite, "riemann-symmetries", "R(X,Y,Z,W) = -R(Y,X,Z,W) = -R(X,Y,W,Z) = R(Z,W,X,Y)", tol),
          bianchi.report(suite, "first-bianchi", "R(X,Y)Z + R(Y,Z)X + R(Z,X)Y = 0", tol)};
}

// ---------------------------------------------------------------------------
// D-homothetic deformation (phi, xi/a, a eta, a g + a(a-1) eta (x) eta)

inline ContactStructure d_homothetic_deform(const ContactStructure& s, double a) {
  if (!(a > 0.0)) throw Error(ErrorCode::invalid_argument, "d_homothetic_deform: a must be positive");
  const ChartManifold base = s.manifold;
  const TensorFieldFn eta = s.eta;
  const double b = a * (a - 1.0);

  auto metric = [base, eta, a, b](const Point& p) {
    const auto g = base.metric_fn()(p);
    const auto e = eta(p);
    TensorValue out = g * a;
    out += tensor_product(e, e) * b;
    return out;
  };
  ChartManifold::MetricJetFn metric_jet;
  if (base.has_exact_derivatives() && eta.has_jet()) {
    metric_jet = [base, eta, a, b](const Point& p, int order) {
      const auto g = base.metric_jet_fn()(p, order);
      const auto e = eta.jet(p, order);
      TensorJet out = g * a;
      out += tensor_product(e, e) * b;
      return out;
    };
  }

  ContactStructure out;
  out.manifold = ChartManifold(base.n(), base.domain(), metric, metric_jet, base.fd_config());
  out.phi = s.phi;
  out.xi = s.xi;
  out.xi.evaluate = [f = s.xi.evaluate, a](const Point& p) { return f(p) * (1.0 / a); };
  if (s.xi.has_jet()) out.xi.jet = [f = s.xi.jet, a](const Point& p, int k) { return f(p, k) * (1.0 / a); };
  out.eta = s.eta;
  out.eta.evaluate = [f = s.eta.evaluate, a](const Point& p) { return f(p) * a; };
  if (s.eta.has_jet()) out.eta.jet = [f = s.eta.jet, a](const Point& p, int k) { return f(p, k) * a; };
  out.name = s.name + "-deformed:a=" + format_number(a);
  if (s.space_form_c) out.space_form_c = (*s.space_form_c + 3.0) / a - 3.0;
  return out;
}

}  // namespace sasaki
