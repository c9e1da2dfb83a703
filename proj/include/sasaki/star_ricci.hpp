#pragma once

// The *-Ricci tensor Ric*(X,Y) = sum_i R(X, e_i, phi e_i, phi Y), computed by
// three independent routes, with the phi-Ricci tensor, Einstein-type fits,
// eta-parallelism and *-Ricci semi-symmetry.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "sasaki/calculus.hpp"
#include "sasaki/contact.hpp"
#include "sasaki/report.hpp"

namespace sasaki {

// ---------------------------------------------------------------------------
// Routes to Ric*

/// Frame sum over a g-orthonormal frame at the point.
inline TensorValue star_ricci_frame_sum(const ContactLocal& c) {
  const auto r4 = values(c.geo().riemann_lowered());
  const int d = c.dim();
  TensorValue out(d, {Variance::down, Variance::down});
  for (int i = 0; i < d; ++i) {
    const auto& e = c.frame()[i];
    const auto pe = c.phi_of(e);
    // T(X, W) = R(X, e, phi e, W)
    const auto t = insert(insert(r4, 1, e), 1, pe);
    for (int x = 0; x < d; ++x) {
      for (int y = 0; y < d; ++y) {
        double acc = 0.0;
        for (int w = 0; w < d; ++w) acc += t(x, w) * c.phi()(y, w);
        out(x, y) += acc;
      }
    }
  }
  return out;
}

/// (1/2) sum_i g(phi R(X, phi Y) e_i, e_i).
inline TensorValue star_ricci_bianchi(const ContactLocal& c) {
  const auto r = values(c.geo().riemann());
  const int d = c.dim();
  TensorValue out(d, {Variance::down, Variance::down});
  for (int x = 0; x < d; ++x) {
    const auto rx = insert(r, 0, coordinate_vector(d, x));  // (j, k, a)
    for (int y = 0; y < d; ++y) {
      const auto py = c.phi_of(coordinate_vector(d, y));
      const auto endo = insert(rx, 0, py);  // Z -> R(X, phi Y) Z
      double acc = 0.0;
      for (int i = 0; i < d; ++i) {
        const auto& e = c.frame()[i];
        acc += c.g(c.phi_of(insert(endo, 0, e)), e);
      }
      out(x, y) = 0.5 * acc;
    }
  }
  return out;
}

/// Ric - (2n-1) g - eta (x) eta.
inline TensorValue star_ricci_lemma(const ContactLocal& c) {
  const auto ric = values(c.geo().ricci());
  return ric - c.metric().g() * (2.0 * c.n() - 1.0) - tensor_product(c.eta(), c.eta());
}

/// Jet form of the frame sum: Ric*_xy = R(x, b, c, w) g^{bd} phi(d, c) phi(y, w).
/// The result has the order of the curvature jet.
inline TensorJet star_ricci_jet(const ContactLocal& c) {
  const auto r4 = c.geo().riemann_lowered();
  const auto& ginv = c.geo().g_inv();
  const auto& phi = c.phi_jet();
  const int d = c.dim();
  TensorJet pg(d, {Variance::up, Variance::up});  // g^{bd} phi(d, c)
  for (int b = 0; b < d; ++b) {
    for (int cc = 0; cc < d; ++cc) {
      Jet acc(0.0);
      for (int k = 0; k < d; ++k) acc += ginv(b, k) * phi(k, cc);
      pg(b, cc) = acc;
    }
  }
  TensorJet t(d, {Variance::down, Variance::down});  // sum_bc R(x, b, c, w) pg(b, c)
  for (int x = 0; x < d; ++x) {
    for (int w = 0; w < d; ++w) {
      Jet acc(0.0);
      for (int b = 0; b < d; ++b) {
        for (int cc = 0; cc < d; ++cc) acc += r4(x, b, cc, w) * pg(b, cc);
      }
      t(x, w) = acc;
    }
  }
  TensorJet out(d, {Variance::down, Variance::down});
  for (int x = 0; x < d; ++x) {
    for (int y = 0; y < d; ++y) {
      Jet acc(0.0);
      for (int w = 0; w < d; ++w) acc += t(x, w) * phi(y, w);
      out(x, y) = acc;
    }
  }
  return out;
}

inline TensorValue star_ricci_frame_sum(const ContactStructure& s, const Point& p) {
  return star_ricci_frame_sum(ContactLocal(s, p, 2));
}
inline TensorValue star_ricci_bianchi(const ContactStructure& s, const Point& p) {
  return star_ricci_bianchi(ContactLocal(s, p, 2));
}
inline TensorValue star_ricci_lemma(const ContactStructure& s, const Point& p) {
  return star_ricci_lemma(ContactLocal(s, p, 2));
}

/// Trace of a (0,2) tensor in the local orthonormal frame.
inline double frame_trace(const ContactLocal& c, const TensorValue& t) {
  double acc = 0.0;
  for (int i = 0; i < c.dim(); ++i) acc += insert(insert(t, 0, c.frame()[i]), 0, c.frame()[i])[0];
  return acc;
}

inline double star_scalar(const ContactLocal& c) { return frame_trace(c, star_ricci_frame_sum(c)); }
inline double star_scalar(const ContactStructure& s, const Point& p) { return star_scalar(ContactLocal(s, p, 2)); }

inline TensorValue symmetric_part(const TensorValue& t) { return (t + transpose2(t)) * 0.5; }

/// Ric^phi, the symmetric part of Ric*.
inline TensorValue phi_ricci(const ContactLocal& c) { return symmetric_part(star_ricci_frame_sum(c)); }
inline TensorValue phi_ricci(const ContactStructure& s, const Point& p) { return phi_ricci(ContactLocal(s, p, 2)); }

/// g^phi(X,Y) = g(phi X, phi Y).
inline TensorValue g_phi(const ContactLocal& c) {
  const int d = c.dim();
  TensorValue out(d, {Variance::down, Variance::down});
  const auto& g = c.metric().g();
  const auto& phi = c.phi();
  for (int x = 0; x < d; ++x) {
    for (int y = 0; y < d; ++y) {
      double acc = 0.0;
      for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) acc += phi(x, a) * phi(y, b) * g(a, b);
      }
      out(x, y) = acc;
    }
  }
  return out;
}
inline TensorValue g_phi(const ContactStructure& s, const Point& p) { return g_phi(ContactLocal(s, p, 0)); }

// ---------------------------------------------------------------------------
// Einstein-type fits

enum class EinsteinKind { etaEinstein, starEtaEinstein, weaklyPhiEinstein, phiEinstein, einstein, none };

inline const char* to_string(EinsteinKind k) {
  switch (k) {
    case EinsteinKind::etaEinstein: return "eta-Einstein";
    case EinsteinKind::starEtaEinstein: return "star-eta-Einstein";
    case EinsteinKind::weaklyPhiEinstein: return "weakly-phi-Einstein";
    case EinsteinKind::phiEinstein: return "phi-Einstein";
    case EinsteinKind::einstein: return "Einstein";
    default: return "none";
  }
}

/// t ~ alpha g + gamma eta (x) eta.  For the phi-Einstein kinds gamma = -alpha
/// and alpha is the coefficient beta of g^phi.
struct EinsteinFit {
  double alpha = 0.0;
  double gamma = 0.0;
  double residual = 0.0;
  EinsteinKind kind = EinsteinKind::none;
};

inline constexpr double kEinsteinThreshold = 1e-5;

/// Least-squares fit of the symmetric part of t at one point.  In the
/// orthonormal frame with xi first, g is the identity and eta (x) eta the
/// first diagonal entry, so the normal equations decouple.
inline EinsteinFit fit_einstein_form(const TensorValue& t, const ContactLocal& c, EinsteinKind kind,
                                     double threshold = kEinsteinThreshold) {
  const auto f = frame_components(symmetric_part(t), c.frame(), c.metric());
  const int d = c.dim();
  double horizontal = 0.0;
  for (int i = 1; i < d; ++i) horizontal += f(i, i);
  horizontal /= d - 1;
  EinsteinFit fit;
  switch (kind) {
    case EinsteinKind::einstein: {
      double tr = 0.0;
      for (int i = 0; i < d; ++i) tr += f(i, i);
      fit.alpha = tr / d;
      break;
    }
    case EinsteinKind::weaklyPhiEinstein:
    case EinsteinKind::phiEinstein:
      fit.alpha = horizontal;
      fit.gamma = -horizontal;
      break;
    default:
      fit.alpha = horizontal;
      fit.gamma = f(0, 0) - horizontal;
      break;
  }
  double res = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const double model = (i == j ? fit.alpha : 0.0) + (i == 0 && j == 0 ? fit.gamma : 0.0);
      res = std::max(res, std::abs(f(i, j) - model));
    }
  }
  fit.residual = res;
  fit.kind = res <= threshold ? kind : EinsteinKind::none;
  return fit;
}

inline EinsteinFit fit_einstein_form(const TensorValue& t, const ContactStructure& s, const Point& p,
                                     EinsteinKind kind, double threshold = kEinsteinThreshold) {
  return fit_einstein_form(t, ContactLocal(s, p, 0), kind, threshold);
}

enum class RicciSource { ricci, star_ricci, phi_ricci };

inline TensorValue ricci_source(const ContactLocal& c, RicciSource src) {
  switch (src) {
    case RicciSource::ricci: return values(c.geo().ricci());
    case RicciSource::star_ricci: return star_ricci_frame_sum(c);
    default: return phi_ricci(c);
  }
}

/// Fit over all sample points.  The residual is the worst per-point misfit;
/// for the kinds whose coefficients must be constant it also covers the
/// spread of the fitted constants.  Reported constants are those of the
/// first point.
inline EinsteinFit classify_einstein(const ContactStructure& s, const SamplePlan& plan, RicciSource src,
                                     EinsteinKind kind, double threshold = kEinsteinThreshold) {
  const bool constant = kind == EinsteinKind::etaEinstein || kind == EinsteinKind::einstein ||
                        kind == EinsteinKind::phiEinstein;
  EinsteinFit out;
  bool first = true;
  double worst = 0.0;
  for (const auto& sp : sample_points(s.manifold, plan)) {
    ContactLocal c(s, sp.point, 2);
    const auto fit = fit_einstein_form(ricci_source(c, src), c, kind, threshold);
    if (first) {
      out = fit;
      first = false;
    }
    worst = std::max(worst, fit.residual);
    if (constant) worst = std::max({worst, std::abs(fit.alpha - out.alpha), std::abs(fit.gamma - out.gamma)});
  }
  out.residual = worst;
  out.kind = worst <= threshold ? kind : EinsteinKind::none;
  return out;
}

// ---------------------------------------------------------------------------
// Identity reports

/// Pairwise agreement of the three routes plus Ric*(X, xi) = 0 and symmetry.
inline std::vector<ResidualReport> star_ricci_route_reports(const ContactStructure& s, const SamplePlan& plan) {
  const std::string suite = "star-ricci";
  const double tol = plan.tolerance(suite, mode_tolerance(s, 1e-8, 1e-5));
  ResidualAccumulator fb, fl, bl, jet, xi_slot, asym;
  for (const auto& sp : sample_points(s.manifold, plan)) {
    ContactLocal c(s, sp.point, 2);
    const auto f = star_ricci_frame_sum(c);
    const auto b = star_ricci_bianchi(c);
    const auto l = star_ricci_lemma(c);
    fb.add(c.norm(f - b), sp.point);
    fl.add(c.norm(f - l), sp.point);
    bl.add(c.norm(b - l), sp.point);
    jet.add(c.norm(f - values(star_ricci_jet(c))), sp.point);
    xi_slot.add(c.norm(insert(f, 1, c.xi())), sp.point);
    asym.add(c.norm(f - transpose2(f)), sp.point);
  }
  return {fb.report(suite, "frame-sum-vs-bianchi", "sum R(X,e_i,phi e_i,phi Y) = (1/2) sum g(phi R(X,phi Y)e_i, e_i)", tol),
          fl.report(suite, "frame-sum-vs-ricci", "Ric*(X,Y) = Ric(X,Y) - (2n-1) g(X,Y) - eta(X) eta(Y)", tol),
          bl.report(suite, "bianchi-vs-ricci", "(1/2) sum g(phi R(X,phi Y)e_i, e_i) = Ric - (2n-1) g - eta (x) eta", tol),
          jet.report(suite, "frame-sum-vs-coordinates", "sum_i R(X,e_i,phi e_i,phi Y) = R(X,d_b,d_c,phi Y) g^{bd} phi_d^c", tol),
          xi_slot.report(suite, "xi-annihilates", "Ric*(X, xi) = 0", tol),
          asym.report(suite, "symmetry", "Ric*(X,Y) = Ric*(Y,X)", tol)};
}

inline ResidualReport yano_kon_check(const ContactStructure& s, const SamplePlan& plan) {
  const std::string suite = "star-ricci";
  const double tol = plan.tolerance(suite, mode_tolerance(s, 1e-8, 1e-5));
  ResidualAccumulator acc;
  for (const auto& sp : sample_points(s.manifold, plan)) {
    ContactLocal c(s, sp.point, 2);
    const auto ric = values(c.geo().ricci());
    const auto rhs = star_ricci_bianchi(c) + c.metric().g() * (2.0 * c.n() - 1.0) + tensor_product(c.eta(), c.eta());
    acc.add(c.norm(ric - rhs), sp.point);
  }
  return acc.report(suite, "ricci-decomposition",
                    "Ric(X,Y) = (1/2) sum g(phi R(X,phi Y)e_i, e_i) + (2n-1) g(X,Y) + eta(X) eta(Y)", tol);
}

/// Ric^phi = Ric* and g^phi = g - eta (x) eta.
inline std::vector<ResidualReport> phi_ricci_reports(const ContactStructure& s, const SamplePlan& plan) {
  const std::string suite = "star-ricci";
  const double tol = plan.tolerance(suite, mode_tolerance(s, 1e-8, 1e-5));
  ResidualAccumulator sym, gphi;
  for (const auto& sp : sample_points(s.manifold, plan)) {
    ContactLocal c(s, sp.point, 2);
    sym.add(c.norm(phi_ricci(c) - star_ricci_frame_sum(c)), sp.point);
    gphi.add(c.norm(g_phi(c) - c.metric().g() + tensor_product(c.eta(), c.eta())), sp.point);
  }
  return {sym.report(suite, "phi-ricci", "Ric^phi = (Ric* + Ric*^T)/2 = Ric*", tol),
          gphi.report(suite, "g-phi", "g^phi(X,Y) = g(phi X, phi Y) = g(X,Y) - eta(X) eta(Y)", tol)};
}

/// |(nabla_Z Ric*)(phi X, phi Y)| with nabla Ric* differentiated as a tensor
/// field, cross-checked against the derivative of Ric - (2n-1) g - eta (x) eta
/// and the vanishing of nabla_xi Q.
inline std::vector<ResidualReport> eta_parallel_star_residual(const ContactStructure& s, const SamplePlan& plan) {
  const std::string suite = "star-ricci";
  const double tol = plan.tolerance(suite, mode_tolerance(s, 1e-7, 1e-3));
  ResidualAccumulator parallel, decomposition, xi_q;
  for (const auto& sp : sample_points(s.manifold, plan)) {
    ContactLocal c(s, sp.point, 3);
    const auto d_star = values(c.geo().covariant_derivative(star_ricci_jet(c)));  // (z, x, y)
    const auto d_ric = values(c.geo().covariant_derivative(c.geo().ricci()));
    const auto d_q = values(c.geo().covariant_derivative(c.geo().ricci_operator()));
    xi_q.add(c.norm(insert(d_q, 0, c.xi())), sp.point);
    for (const auto& tuple : sp.tuples) {
      const auto x = normalized(tuple[0], c.metric());
      const auto y = normalized(tuple[1], c.metric());
      const auto z = normalized(tuple[2], c.metric());
      const auto dz = insert(d_star, 0, z);
      parallel.add(std::abs(insert(insert(dz, 0, c.phi_of(x)), 0, c.phi_of(y))[0]), sp.point);
      const double expected = insert(insert(insert(d_ric, 0, z), 0, x), 0, y)[0] -
                              c.g(z, c.phi_of(x)) * c.eta_of(y) - c.g(z, c.phi_of(y)) * c.eta_of(x);
      decomposition.add(std::abs(insert(insert(dz, 0, x), 0, y)[0] - expected), sp.point);
    }
  }
  return {parallel.report(suite, "eta-parallel", "(nabla_Z Ric*)(phi X, phi Y) = 0", tol),
          decomposition.report(suite, "nabla-star-decomposition",
                               "(nabla_Z Ric*)(X,Y) = (nabla_Z Ric)(X,Y) - g(Z,phi X) eta(Y) - g(Z,phi Y) eta(X)",
                               tol),
          xi_q.report(suite, "nabla-xi-Q", "nabla_xi Q = Q phi - phi Q = 0", tol)};
}

// ---------------------------------------------------------------------------
// *-Ricci semi-symmetry

/// max |Ric*(R(X,Y)Z, W) + Ric*(Z, R(X,Y)W)| over the samples.  With
/// substitute_zero the tensor Ric* is replaced by 0.
inline ResidualAccumulator star_semi_symmetry_values(const ContactStructure& s, const SamplePlan& plan,
                                                     bool substitute_zero = false) {
  ResidualAccumulator acc;
  for (const auto& sp : sample_points(s.manifold, plan)) {
    ContactLocal c(s, sp.point, 2);
    const auto r = values(c.geo().riemann());
    TensorValue star = star_ricci_frame_sum(c);
    if (substitute_zero) star *= 0.0;
    for (const auto& tuple : sp.tuples) {
      std::vector<TensorValue> v;
      for (const auto& t : tuple) v.push_back(normalized(t, c.metric()));
      const auto act = curvature_action(r, v[0], v[1], star);
      acc.add(std::abs(insert(insert(act, 0, v[2]), 0, v[3])[0]), sp.point);
    }
  }
  return acc;
}

inline ResidualReport star_semi_symmetry_residual(const ContactStructure& s, const SamplePlan& plan,
                                                  bool substitute_zero = false) {
  const std::string suite = "semi-symmetry";
  const double tol = plan.tolerance(suite, mode_tolerance(s, 1e-8, 1e-5));
  return star_semi_symmetry_values(s, plan, substitute_zero)
      .report(suite, "star-semi-symmetry", "Ric*(R(X,Y)Z, W) + Ric*(Z, R(X,Y)W) = 0", tol);
}

/// The semi-symmetry consequence chain: the xi-reduction
/// (R(xi,Y).Ric*)(xi,W) = Ric*(Y,W), which holds on every Sasakian manifold,
/// and the conclusion Ric* = 0 gated on the semi-symmetry premise.
inline std::vector<ResidualReport> semi_symmetry_reports(const ContactStructure& s, const SamplePlan& plan) {
  const std::string suite = "semi-symmetry";
  const double tol = plan.tolerance(suite, mode_tolerance(s, 1e-8, 1e-5));
  const auto premise = star_semi_symmetry_values(s, plan);
  ResidualAccumulator reduction, flat, einstein;
  for (const auto& sp : sample_points(s.manifold, plan)) {
    ContactLocal c(s, sp.point, 2);
    const auto r = values(c.geo().riemann());
    const auto star = star_ricci_frame_sum(c);
    flat.add(c.norm(star), sp.point);
    const auto target = c.metric().g() * (2.0 * c.n() - 1.0) + tensor_product(c.eta(), c.eta());
    einstein.add(c.norm(values(c.geo().ricci()) - target), sp.point);
    for (const auto& tuple : sp.tuples) {
      const auto y = normalized(tuple[0], c.metric());
      const auto w = normalized(tuple[1], c.metric());
      const auto act = curvature_action(r, c.xi(), y, star);
      const double lhs = insert(insert(act, 0, c.xi()), 0, w)[0];
      reduction.add(std::abs(lhs - insert(insert(star, 0, y), 0, w)[0]), sp.point);
    }
  }
  const auto status = premise_from(premise.max(), tol);
  auto flat_report = flat.report(suite, "star-ricci-flat", "R(X,Y).Ric* = 0 implies Ric* = 0", tol, status);
  auto einstein_report = einstein.report(suite, "semi-symmetric-ricci-form",
                                         "R(X,Y).Ric* = 0 implies Ric = (2n-1) g + eta (x) eta", tol, status);
  const std::string note = "max |R(X,Y).Ric*| = " + format_number(premise.max());
  flat_report.note = note;
  einstein_report.note = note;
  return {reduction.report(suite, "xi-reduction", "(R(xi,Y).Ric*)(xi,W) = Ric*(Y,W)", tol), flat_report,
          einstein_report};
}

}  // namespace sasaki
