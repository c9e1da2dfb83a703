#pragma once

// Ricci and *-Ricci solitons (V, lambda) on Sasakian structures, with the
// Lie-derivative machinery behind their structure theory: L_V nabla by two
// routes, the curvature commutation formula, Jacobi fields along xi,
// infinitesimal contact transformations and the phi-invariance criterion.
//
// Consequences that hold only on genuine *-Ricci solitons are gated on the
// soliton equation L_V g + 2 Ric* + 2 lambda g = 0.

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "sasaki/calculus.hpp"
#include "sasaki/contact.hpp"
#include "sasaki/report.hpp"
#include "sasaki/star_ricci.hpp"

namespace sasaki {

struct SolitonInstance {
  ContactStructure structure;
  TensorFieldFn V;  // slots [up]
  double lambda = 0.0;
};

enum class LambdaClass { zero, twoTimes2nPlus1, other };

inline const char* to_string(LambdaClass c) {
  switch (c) {
    case LambdaClass::zero: return "zero";
    case LambdaClass::twoTimes2nPlus1: return "2(2n+1)";
    default: return "other";
  }
}

inline LambdaClass classify_lambda(double lambda, int n, double tol) {
  if (std::abs(lambda) <= tol) return LambdaClass::zero;
  if (std::abs(lambda - 2.0 * (2.0 * n + 1.0)) <= tol) return LambdaClass::twoTimes2nPlus1;
  return LambdaClass::other;
}

/// The Reeb field as a soliton candidate.
inline SolitonInstance reeb_instance(const ContactStructure& s, double lambda) { return {s, s.xi, lambda}; }

/// Jets of V and everything derived from it at one point.
class SolitonLocal {
 public:
  SolitonLocal(const SolitonInstance& inst, const Point& p, int order = 3)
      : c_(inst.structure, p, order), lambda_(inst.lambda) {
    v_ = inst.structure.manifold.field_jet(inst.V, p, order);
    nabla_v_ = c_.geo().covariant_derivative(v_);
  }

  const ContactLocal& c() const { return c_; }
  double lambda() const { return lambda_; }
  const TensorJet& v_jet() const { return v_; }
  TensorValue v() const { return values(v_); }
  /// (nabla_X V)^a with slots [down, up].
  const TensorJet& nabla_v() const { return nabla_v_; }

  TensorJet lie_g() const { return c_.geo().lie_derivative(v_, c_.geo().g()); }
  TensorJet lie_eta() const { return c_.geo().lie_derivative(v_, c_.eta_jet()); }
  TensorJet lie_xi() const { return c_.geo().lie_derivative(v_, c_.xi_jet()); }
  TensorJet lie_phi() const { return c_.geo().lie_derivative(v_, c_.phi_jet()); }

  /// (L_V nabla)(X,Y) = nabla_X nabla_Y V - nabla_{nabla_X Y} V + R(V,X)Y,
  /// slots [down, down, up].
  TensorJet lie_nabla() const {
    const auto ddv = c_.geo().covariant_derivative(nabla_v_);
    const auto& r = c_.geo().riemann();
    const int d = c_.dim();
    TensorJet out(d, {Variance::down, Variance::down, Variance::up});
    for (int x = 0; x < d; ++x) {
      for (int y = 0; y < d; ++y) {
        for (int a = 0; a < d; ++a) {
          Jet acc = ddv(x, y, a);
          for (int k = 0; k < d; ++k) acc += v_(k) * r(k, x, y, a);
          out(x, y, a) = acc;
        }
      }
    }
    return out;
  }

  /// g((L_V nabla)(X,Y), Z) = (1/2){(nabla_X L_V g)(Y,Z) + (nabla_Y L_V g)(Z,X) - (nabla_Z L_V g)(X,Y)}.
  TensorJet lie_nabla_from_metric() const {
    const auto dl = c_.geo().covariant_derivative(lie_g());
    const int d = c_.dim();
    TensorJet low(d, {Variance::down, Variance::down, Variance::down});
    for (int x = 0; x < d; ++x) {
      for (int y = 0; y < d; ++y) {
        for (int z = 0; z < d; ++z) low(x, y, z) = (dl(x, y, z) + dl(y, z, x) - dl(z, x, y)) * 0.5;
      }
    }
    return c_.geo().raise_last(low);
  }

  /// L_V R by Lie-differentiating the curvature jet.
  TensorJet lie_curvature() const { return c_.geo().lie_derivative(v_, c_.geo().riemann()); }

  /// v = g(V, .) and its exterior derivative.
  TensorJet v_lowered() const {
    const int d = c_.dim();
    TensorJet out(d, {Variance::down});
    for (int i = 0; i < d; ++i) {
      Jet acc(0.0);
      for (int a = 0; a < d; ++a) acc += c_.geo().g()(i, a) * v_(a);
      out(i) = acc;
    }
    return out;
  }
  TensorValue dv() const { return values(c_.geo().exterior_derivative(v_lowered())); }

 private:
  ContactLocal c_;
  double lambda_;
  TensorJet v_;
  TensorJet nabla_v_;
};

/// Operator of a (0,2) tensor: g(AX, Y) = t(X, Y), slots [down, up].
inline TensorValue operator_of(const TensorValue& t, const MetricAtPoint& g) {
  return raise_lower(t, 1, g, Direction::up);
}

inline double soliton_tolerance(const SolitonInstance& inst, const SamplePlan& plan) {
  const bool exact = inst.structure.exact() && inst.V.has_jet();
  return plan.tolerance("soliton", exact ? 1e-5 : 1e-3);
}

// ---------------------------------------------------------------------------
// Soliton equations

/// max frame-norm of L_V g + 2 Ric + 2 lambda g.
inline double ricci_soliton_residual(const SolitonInstance& inst, const SamplePlan& plan) {
  ResidualAccumulator acc;
  for (const auto& sp : sample_points(inst.structure.manifold, plan)) {
    SolitonLocal s(inst, sp.point, 2);
    const auto& c = s.c();
    const auto t = values(s.lie_g()) + values(c.geo().ricci()) * 2.0 + c.metric().g() * (2.0 * inst.lambda);
    acc.add(c.norm(t), sp.point);
  }
  return acc.max();
}

struct StarSolitonResidual {
  double full = 0.0;     // L_V g + 2 Ric* + 2 lambda g
  double reduced = 0.0;  // L_V g + lambda (g + eta (x) eta)
  Point worst_point;
};

inline StarSolitonResidual star_soliton_residual(const SolitonInstance& inst, const SamplePlan& plan) {
  ResidualAccumulator full, reduced;
  for (const auto& sp : sample_points(inst.structure.manifold, plan)) {
    SolitonLocal s(inst, sp.point, 2);
    const auto& c = s.c();
    const auto lg = values(s.lie_g());
    full.add(c.norm(lg + star_ricci_frame_sum(c) * 2.0 + c.metric().g() * (2.0 * inst.lambda)), sp.point);
    reduced.add(c.norm(lg + (c.metric().g() + tensor_product(c.eta(), c.eta())) * inst.lambda), sp.point);
  }
  return {full.max(), reduced.max(), full.worst()};
}

// ---------------------------------------------------------------------------
// Pointwise operations

inline std::pair<TensorValue, TensorValue> lie_nabla_routes(const SolitonInstance& inst, const Point& p) {
  SolitonLocal s(inst, p, 2);
  return {values(s.lie_nabla()), values(s.lie_nabla_from_metric())};
}

/// (L_V nabla)(X, Y) by the second-covariant-derivative route.
inline TensorValue lie_nabla(const SolitonInstance& inst, const Point& p, const TensorValue& x, const TensorValue& y) {
  SolitonLocal s(inst, p, 2);
  return insert(insert(values(s.lie_nabla()), 0, x), 0, y);
}

/// dv and the skew operator F with dv(X,Y) = g(X, FY); F has slots [down, up].
inline std::pair<TensorValue, TensorValue> dv_and_F(const SolitonInstance& inst, const Point& p) {
  SolitonLocal s(inst, p, 1);
  const auto dv = s.dv();
  return {dv, operator_of(transpose2(dv), s.c().metric())};
}

/// L_V R by transport along the flow of V, for cross-checking the jet route.
inline TensorValue lie_curvature_by_flow(const SolitonInstance& inst, const Point& p, double t = 1e-4) {
  const auto& m = inst.structure.manifold;
  return lie_derivative_by_flow(m, inst.V, [&m](const Point& q) { return riemann(m, q); }, p, t);
}

// ---------------------------------------------------------------------------
// Reports

inline std::string labelled(const std::string& identity, const std::string& label) {
  return label.empty() ? identity : identity + " [" + label + "]";
}

/// Two-route agreement and symmetry of L_V nabla.
inline std::vector<ResidualReport> lie_nabla_reports(const SolitonInstance& inst, const SamplePlan& plan,
                                                     const std::string& label = {}) {
  const std::string suite = "soliton";
  const double tol = soliton_tolerance(inst, plan);
  ResidualAccumulator routes, sym;
  for (const auto& sp : sample_points(inst.structure.manifold, plan)) {
    SolitonLocal s(inst, sp.point, 2);
    const auto a = values(s.lie_nabla());
    const auto b = values(s.lie_nabla_from_metric());
    routes.add(s.c().norm(a - b), sp.point);
    sym.add(s.c().norm(a - move_slot(a, 1, 0)), sp.point);
  }
  return {routes.report(suite, labelled("lie-nabla-routes", label),
                        "nabla_X nabla_Y V - nabla_{nabla_X Y} V + R(V,X)Y = (1/2){(nabla_X L_V g)(Y,.) + "
                        "(nabla_Y L_V g)(.,X) - (nabla_. L_V g)(X,Y)}",
                        tol),
          sym.report(suite, labelled("lie-nabla-symmetric", label), "(L_V nabla)(X,Y) = (L_V nabla)(Y,X)", tol)};
}

/// (L_V R)(X,Y)Z = (nabla_X L_V nabla)(Y,Z) - (nabla_Y L_V nabla)(X,Z), and the
/// jet route for L_V R against transport along the flow.
inline std::vector<ResidualReport> commutation_c1_check(const SolitonInstance& inst, const SamplePlan& plan,
                                                        const std::string& label = {}) {
  const std::string suite = "soliton";
  const double tol = plan.tolerance(suite, inst.structure.exact() && inst.V.has_jet() ? 1e-5 : 1e-3);
  ResidualAccumulator c1, flow;
  for (const auto& sp : sample_points(inst.structure.manifold, plan)) {
    SolitonLocal s(inst, sp.point, 3);
    const auto lvr = values(s.lie_curvature());
    const auto dln = values(s.c().geo().covariant_derivative(s.lie_nabla()));
    c1.add(s.c().norm(lvr - dln + move_slot(dln, 1, 0)), sp.point);
    flow.add(s.c().norm(lvr - lie_curvature_by_flow(inst, sp.point)), sp.point);
  }
  return {c1.report(suite, labelled("lie-curvature-commutation", label),
                    "(L_V R)(X,Y)Z = (nabla_X L_V nabla)(Y,Z) - (nabla_Y L_V nabla)(X,Z)", tol),
          flow.report(suite, labelled("lie-curvature-flow", label),
                      "L_V R from the jet Leibniz rule = L_V R by transport along the flow of V",
                      plan.tolerance(suite, inst.structure.exact() && inst.V.has_jet() ? 1e-4 : 5e-3))};
}

/// ∇_xi ∇_xi V + R(V, xi) xi at one point.
inline TensorValue jacobi_along_reeb_at(const SolitonLocal& s) {
  const auto& c = s.c();
  const auto ddv = values(c.geo().covariant_derivative(s.nabla_v()));
  const auto dv = values(s.nabla_v());
  const auto dxi = values(c.geo().covariant_derivative(c.xi_jet()));
  const auto r = values(c.geo().riemann());
  const auto& xi = c.xi();
  TensorValue out = insert(insert(ddv, 0, xi), 0, xi);
  out += insert(dv, 0, insert(dxi, 0, xi));
  out += insert(insert(insert(r, 0, s.v()), 0, xi), 0, xi);
  return out;
}

inline double jacobi_along_reeb(const SolitonInstance& inst, const SamplePlan& plan) {
  ResidualAccumulator acc;
  for (const auto& sp : sample_points(inst.structure.manifold, plan)) {
    SolitonLocal s(inst, sp.point, 2);
    acc.add(s.c().norm(jacobi_along_reeb_at(s)), sp.point);
  }
  return acc.max();
}

/// Fits Ric against [2n-1-lambda/2] g + [1+lambda/2] eta (x) eta with the
/// instance's lambda.  alpha and gamma are the fitted eta-Einstein constants;
/// the residual is the misfit against the target form.
inline EinsteinFit soliton_ricci_form(const SolitonInstance& inst, const SamplePlan& plan,
                                      double threshold = kEinsteinThreshold) {
  const int n = inst.structure.n();
  const double ta = 2.0 * n - 1.0 - inst.lambda / 2.0, tg = 1.0 + inst.lambda / 2.0;
  EinsteinFit out;
  bool first = true;
  double worst = 0.0;
  for (const auto& sp : sample_points(inst.structure.manifold, plan)) {
    ContactLocal c(inst.structure, sp.point, 2);
    const auto ric = values(c.geo().ricci());
    if (first) {
      out = fit_einstein_form(ric, c, EinsteinKind::etaEinstein, threshold);
      first = false;
    }
    const auto target = c.metric().g() * ta + tensor_product(c.eta(), c.eta()) * tg;
    worst = std::max(worst, c.norm(ric - target));
  }
  out.residual = worst;
  out.kind = worst <= threshold ? EinsteinKind::etaEinstein : EinsteinKind::none;
  return out;
}

/// The lambda for which Ric takes the soliton form, from alpha = 2n-1-lambda/2.
inline double fit_soliton_lambda(const ContactStructure& s, const SamplePlan& plan) {
  const auto fit = classify_einstein(s, plan, RicciSource::ricci, EinsteinKind::etaEinstein);
  return 2.0 * (2.0 * s.n() - 1.0 - fit.alpha);
}

struct SolitonDiagnostics {
  double solitonResidual = 0.0;
  double jacobiResidual = 0.0;
  double ricciFormResidual = 0.0;
  double etaLieResidual = 0.0;
  double xiLieResidual = 0.0;
  double phiLieResidual = 0.0;
  double phiInvarianceResidual = 0.0;
  /// eta(L_V xi) + (1/2)(L_V g)(xi, xi), zero for every V.
  double selfConsistencyResidual = 0.0;
  LambdaClass lambdaClass = LambdaClass::other;
};

/// Pieces of the phi-invariance criterion at (X, Y):
///   lhs  = g(phi (L_V phi) X, Y)
///   crit = g(phi (nabla_V phi) X, Y) - dv(X,Y) + dv(phi X, phi Y) + dv(X, xi) eta(Y)
///   sym  = -S(X,Y) + eta(Y) S(X, xi) + S(phi X, phi Y) with S = (1/2) L_V g.
/// On a Sasakian manifold lhs = crit + sym for every V.  On a *-Ricci soliton
/// with Q* phi = phi Q* the sym terms cancel, leaving lhs = crit.
struct PhiInvarianceTerms {
  double lhs = 0.0;
  double crit = 0.0;
  double sym = 0.0;
};

inline PhiInvarianceTerms phi_invariance_terms(const SolitonLocal& s, const TensorValue& x, const TensorValue& y) {
  const auto& c = s.c();
  const auto lphi = values(s.lie_phi());
  const auto dphi = values(c.geo().covariant_derivative(c.phi_jet()));
  const auto dv = s.dv();
  const auto sten = values(s.lie_g()) * 0.5;
  auto bil = [](const TensorValue& t, const TensorValue& a, const TensorValue& b) {
    return insert(insert(t, 0, a), 0, b)[0];
  };
  PhiInvarianceTerms out;
  out.lhs = c.g(c.phi_of(insert(lphi, 0, x)), y);
  const auto nvphi_x = insert(insert(dphi, 0, s.v()), 0, x);
  out.crit = c.g(c.phi_of(nvphi_x), y) - bil(dv, x, y) + bil(dv, c.phi_of(x), c.phi_of(y)) +
             bil(dv, x, c.xi()) * c.eta_of(y);
  out.sym = -bil(sten, x, y) + c.eta_of(y) * bil(sten, x, c.xi()) + bil(sten, c.phi_of(x), c.phi_of(y));
  return out;
}

/// Residuals of the infinitesimal-contact-transformation signature expected
/// for lambda's class: L_V eta = mu eta, L_V xi = -mu xi, L_V phi = 0 with
/// mu = -2(2n+1) when lambda = 2(2n+1) and mu = 0 otherwise.
inline SolitonDiagnostics contact_transformation_diagnostics(const SolitonInstance& inst, const SamplePlan& plan) {
  const int n = inst.structure.n();
  const double tol = soliton_tolerance(inst, plan);
  SolitonDiagnostics out;
  out.lambdaClass = classify_lambda(inst.lambda, n, tol);
  const double mu = out.lambdaClass == LambdaClass::twoTimes2nPlus1 ? -2.0 * (2.0 * n + 1.0) : 0.0;
  ResidualAccumulator eta_acc, xi_acc, phi_acc, self, jac, phi_inv_acc;
  for (const auto& sp : sample_points(inst.structure.manifold, plan)) {
    SolitonLocal s(inst, sp.point, 2);
    const auto& c = s.c();
    const auto le = values(s.lie_eta());
    const auto lx = values(s.lie_xi());
    eta_acc.add(c.norm(le - c.eta() * mu), sp.point);
    xi_acc.add(c.norm(lx + c.xi() * mu), sp.point);
    phi_acc.add(c.norm(values(s.lie_phi())), sp.point);
    const auto lg = values(s.lie_g());
    self.add(std::abs(c.eta_of(lx) + 0.5 * insert(insert(lg, 0, c.xi()), 0, c.xi())[0]), sp.point);
    jac.add(c.norm(jacobi_along_reeb_at(s)), sp.point);
    for (const auto& tuple : sp.tuples) {
      const auto terms = phi_invariance_terms(s, normalized(tuple[0], c.metric()), normalized(tuple[1], c.metric()));
      phi_inv_acc.add(std::abs(terms.lhs - terms.crit), sp.point);
    }
  }
  out.phiInvarianceResidual = phi_inv_acc.max();
  out.etaLieResidual = eta_acc.max();
  out.xiLieResidual = xi_acc.max();
  out.phiLieResidual = phi_acc.max();
  out.selfConsistencyResidual = self.max();
  out.jacobiResidual = jac.max();
  out.solitonResidual = star_soliton_residual(inst, plan).full;
  out.ricciFormResidual = soliton_ricci_form(inst, plan).residual;
  return out;
}

/// Commutator Q* phi - phi Q* as slots [down, up].
inline TensorValue star_operator_commutator(const ContactLocal& c) {
  const auto q = operator_of(star_ricci_frame_sum(c), c.metric());
  const auto& phi = c.phi();
  const int d = c.dim();
  TensorValue out(d, {Variance::down, Variance::up});
  for (int x = 0; x < d; ++x) {
    for (int a = 0; a < d; ++a) {
      double acc = 0.0;
      for (int b = 0; b < d; ++b) acc += phi(x, b) * q(b, a) - q(x, b) * phi(b, a);
      out(x, a) = acc;
    }
  }
  return out;
}

/// All soliton-suite reports for one instance.
inline std::vector<ResidualReport> soliton_reports(const SolitonInstance& inst, const SamplePlan& plan,
                                                   const std::string& label = {}) {
  const std::string suite = "soliton";
  const double tol = soliton_tolerance(inst, plan);
  const int n = inst.structure.n();
  const auto soliton = star_soliton_residual(inst, plan);
  const auto status = premise_from(soliton.full, tol);

  ResidualAccumulator eq_lnx, eq_lnxx, jac, lvr_xi, lie_eta_xi, f_skew, f_nabla, f_gen, phi_inv, commute, self;
  for (const auto& sp : sample_points(inst.structure.manifold, plan)) {
    SolitonLocal s(inst, sp.point, 3);
    const auto& c = s.c();
    const auto ln = values(s.lie_nabla());
    const auto q = values(c.geo().ricci_operator());
    const auto lvr = values(s.lie_curvature());
    const auto le = values(s.lie_eta());
    const auto lx = values(s.lie_xi());
    const auto lg = values(s.lie_g());
    const auto dv = s.dv();
    const auto f = operator_of(transpose2(dv), c.metric());
    const auto qstar = operator_of(star_ricci_frame_sum(c), c.metric());
    const auto nv = values(s.nabla_v());
    const auto& xi = c.xi();

    eq_lnxx.add(c.norm(insert(insert(ln, 0, xi), 0, xi)), sp.point);
    jac.add(c.norm(jacobi_along_reeb_at(s)), sp.point);
    commute.add(c.norm(star_operator_commutator(c)), sp.point);
    self.add(std::abs(c.eta_of(lx) + 0.5 * insert(insert(lg, 0, xi), 0, xi)[0]), sp.point);
    for (const auto& tuple : sp.tuples) {
      const auto x = normalized(tuple[0], c.metric());
      const auto y = normalized(tuple[1], c.metric());
      const auto px = c.phi_of(x);
      const auto lnx = insert(insert(ln, 0, x), 0, xi);
      eq_lnx.add(c.norm(lnx + insert(q, 0, px) * 2.0 - px * (2.0 * (2.0 * n - 1.0))), sp.point);
      const auto lvr_x = insert(insert(insert(lvr, 0, x), 0, xi), 0, xi);
      lvr_xi.add(c.norm(lvr_x - (insert(q, 0, x) - xi * c.eta_of(x) - x * (2.0 * n - 1.0)) * 4.0), sp.point);
      lie_eta_xi.add(std::abs(insert(le, 0, x)[0] - c.g(x, lx) + 2.0 * inst.lambda * c.eta_of(x)), sp.point);
      f_skew.add(std::abs(c.g(x, insert(f, 0, y)) + c.g(insert(f, 0, x), y)), sp.point);
      f_nabla.add(c.norm(insert(nv, 0, x) + insert(qstar, 0, x) + x * inst.lambda + insert(f, 0, x)), sp.point);
      const auto terms = phi_invariance_terms(s, x, y);
      f_gen.add(std::abs(terms.lhs - terms.crit - terms.sym), sp.point);
      phi_inv.add(std::abs(terms.lhs - terms.crit), sp.point);
    }
  }
  const auto commute_status = premise_from(commute.max(), tol);
  const auto phi_inv_status = status == PremiseStatus::passed && commute_status == PremiseStatus::passed
                              ? PremiseStatus::passed
                              : PremiseStatus::violated;

  ResidualAccumulator star_full, star_reduced;
  star_full.add(soliton.full, soliton.worst_point);
  star_reduced.add(soliton.reduced, soliton.worst_point);
  auto star_report = star_full.report(suite, labelled("star-soliton-equation", label),
                                      "(L_V g)(X,Y) + 2 Ric*(X,Y) + 2 lambda g(X,Y) = 0", tol);
  // The soliton equation itself is the premise of everything else; its
  // residual is informational unless V was meant to be a soliton.
  star_report.premise = status;
  star_report.skipped = status == PremiseStatus::violated;
  star_report.note = "lambda = " + format_number(inst.lambda);
  auto reduced_report = star_reduced.report(suite, labelled("star-soliton-reduced", label),
                                            "soliton implies (L_V g)(X,Y) = -lambda {g(X,Y) + eta(X) eta(Y)}", tol,
                                            status);

  return {star_report,
          reduced_report,
          eq_lnx.report(suite, labelled("lie-nabla-xi", label),
                        "soliton implies (L_V nabla)(X, xi) = -2 Q phi X + 2(2n-1) phi X", tol, status),
          eq_lnxx.report(suite, labelled("lie-nabla-xi-xi", label), "soliton implies (L_V nabla)(xi, xi) = 0", tol,
                         status),
          jac.report(suite, labelled("jacobi-along-xi", label),
                     "soliton implies nabla_xi nabla_xi V + R(V, xi) xi = 0", tol, status),
          lvr_xi.report(suite, labelled("lie-curvature-xi", label),
                        "soliton implies (L_V R)(X, xi) xi = 4{QX - eta(X) xi - (2n-1) X}", tol, status),
          lie_eta_xi.report(suite, labelled("lie-eta-xi", label),
                            "soliton implies (L_V eta)(X) - g(X, L_V xi) + 2 lambda eta(X) = 0", tol, status),
          self.report(suite, labelled("reeb-normalization", label), "eta(L_V xi) + (1/2)(L_V g)(xi, xi) = 0", tol),
          f_skew.report(suite, labelled("F-skew", label), "dv(X,Y) = g(X, FY) with g(X, FY) = -g(FX, Y)", tol),
          f_nabla.report(suite, labelled("nabla-V-decomposition", label),
                         "soliton implies nabla_X V = -Q* X - lambda X - F X", tol, status),
          f_gen.report(suite, labelled("phi-invariance-identity", label),
                       "g(phi (L_V phi) X, Y) = g(phi (nabla_V phi) X, Y) - dv(X,Y) + dv(phi X, phi Y) + dv(X, xi) "
                       "eta(Y) - S(X,Y) + eta(Y) S(X, xi) + S(phi X, phi Y)",
                       tol),
          phi_inv.report(suite, labelled("phi-invariance-criterion", label),
                       "soliton and Q* phi = phi Q* imply g(phi (L_V phi) X, Y) = g(phi (nabla_V phi) X, Y) - dv(X,Y) "
                       "+ dv(phi X, phi Y) + dv(X, xi) eta(Y)",
                       tol, phi_inv_status)};
}

}  // namespace sasaki
