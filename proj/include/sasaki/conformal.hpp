#pragma once

// Weyl conformal curvature, phi-conformal flatness, sectional curvatures and
// the consequences of (phi-)conformal flatness for Sasakian structures.
//
// In dimension 3 the Weyl tensor vanishes identically, so premises built on
// it carry no information there; such reports are marked skipped with a note.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "sasaki/calculus.hpp"
#include "sasaki/contact.hpp"
#include "sasaki/report.hpp"
#include "sasaki/star_ricci.hpp"

namespace sasaki {

inline constexpr const char* kDim3Note = "Weyl tensor vanishes identically in dimension 3; premise is vacuous";

struct WeylTensor {
  TensorValue tensor;  // slots [down, down, down, up]
  bool identically_zero = false;  // dimension 3
};

/// C(X,Y)Z = R(X,Y)Z - {Ric(Y,Z)X - Ric(X,Z)Y + g(Y,Z)QX - g(X,Z)QY}/(2n-1)
///           + r {g(Y,Z)X - g(X,Z)Y} / (2n(2n-1)).
inline WeylTensor weyl_tensor(const LocalGeometry& geo) {
  const int d = geo.dim();
  const double n = geo.n();
  const auto r = values(geo.riemann());
  const auto ric = values(geo.ricci());
  const auto q = values(geo.ricci_operator());
  const auto& g = geo.metric().g();
  const double scal = geo.scalar_curvature().value();
  const double k1 = 1.0 / (2.0 * n - 1.0);
  const double k2 = scal / (2.0 * n * (2.0 * n - 1.0));
  WeylTensor out{r, d == 3};
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      for (int k = 0; k < d; ++k) {
        for (int a = 0; a < d; ++a) {
          const double dia = i == a ? 1.0 : 0.0, dja = j == a ? 1.0 : 0.0;
          out.tensor(i, j, k, a) -= k1 * (ric(j, k) * dia - ric(i, k) * dja + g(j, k) * q(i, a) - g(i, k) * q(j, a));
          out.tensor(i, j, k, a) += k2 * (g(j, k) * dia - g(i, k) * dja);
        }
      }
    }
  }
  return out;
}

inline WeylTensor weyl_tensor(const ContactStructure& s, const Point& p) {
  return weyl_tensor(LocalGeometry(s.manifold, p, 2));
}

/// Max frame-norm of the Weyl tensor over the samples.
inline ResidualAccumulator weyl_values(const ContactStructure& s, const SamplePlan& plan) {
  ResidualAccumulator acc;
  for (const auto& sp : sample_points(s.manifold, plan)) {
    ContactLocal c(s, sp.point, 2);
    acc.add(c.norm(weyl_tensor(c.geo()).tensor), sp.point);
  }
  return acc;
}

/// Max frame-norm of phi^2 C(phi X, phi Y) phi Z.
inline ResidualAccumulator phi_conformal_values(const ContactStructure& s, const SamplePlan& plan) {
  ResidualAccumulator acc;
  for (const auto& sp : sample_points(s.manifold, plan)) {
    ContactLocal c(s, sp.point, 2);
    const auto w = weyl_tensor(c.geo()).tensor;
    for (const auto& tuple : sp.tuples) {
      std::vector<TensorValue> v;
      for (int k = 0; k < 3; ++k) v.push_back(c.phi_of(normalized(tuple[k], c.metric())));
      const auto cz = insert(insert(insert(w, 0, v[0]), 0, v[1]), 0, v[2]);
      acc.add(c.norm(c.phi_of(c.phi_of(cz))), sp.point);
    }
  }
  return acc;
}

inline ResidualReport phi_conformal_flatness_residual(const ContactStructure& s, const SamplePlan& plan) {
  const std::string suite = "conformal";
  const double tol = plan.tolerance(suite, mode_tolerance(s, 1e-8, 1e-5));
  auto r = phi_conformal_values(s, plan).report(suite, "phi-conformal-flatness", "phi^2 C(phi X, phi Y) phi Z = 0", tol);
  if (s.dim() == 3) r.note = kDim3Note;
  return r;
}

/// Premise status for a Weyl-based hypothesis: vacuous in dimension 3.
inline PremiseStatus weyl_premise(const ContactStructure& s, double residual, double tol) {
  if (s.dim() == 3) return PremiseStatus::not_applicable;
  return premise_from(residual, tol);
}

/// Marks Weyl-gated conclusions in dimension 3 as skipped.
inline void apply_dim3_guard(const ContactStructure& s, ResidualReport& r) {
  if (s.dim() != 3) return;
  r.skipped = true;
  r.note = kDim3Note;
}

/// (r - 4n) / (2n(2n-1)).
inline double star_beta(double scalar, int n) { return (scalar - 4.0 * n) / (2.0 * n * (2.0 * n - 1.0)); }

/// Weyl trace-freeness: C(e_a, Y)Z contracted over a.
inline ResidualReport weyl_trace_free(const ContactStructure& s, const SamplePlan& plan) {
  const std::string suite = "conformal";
  const double tol = plan.tolerance(suite, mode_tolerance(s, 1e-8, 1e-5));
  ResidualAccumulator acc;
  for (const auto& sp : sample_points(s.manifold, plan)) {
    ContactLocal c(s, sp.point, 2);
    const auto w = weyl_tensor(c.geo()).tensor;
    acc.add(c.norm(contract(w, 0, 0)), sp.point);
  }
  return acc.report(suite, "weyl-trace-free", "sum_a C(e_a, Y, Z)^a = 0", tol);
}

/// R(phi X, phi Y, phi Z, phi W) = beta {g(phi Y, phi Z) g(phi X, phi W) - g(phi X, phi Z) g(phi Y, phi W)}
/// on phi-conformally flat structures.
inline ResidualReport check_phi_curvature_form(const ContactStructure& s, const SamplePlan& plan) {
  const std::string suite = "conformal";
  const double tol = plan.tolerance(suite, mode_tolerance(s, 1e-8, 1e-5));
  const auto premise = phi_conformal_values(s, plan);
  ResidualAccumulator acc;
  for (const auto& sp : sample_points(s.manifold, plan)) {
    ContactLocal c(s, sp.point, 2);
    const auto r4 = values(c.geo().riemann_lowered());
    const double beta = star_beta(c.geo().scalar_curvature().value(), c.n());
    for (const auto& tuple : sp.tuples) {
      std::vector<TensorValue> v;
      for (const auto& t : tuple) v.push_back(c.phi_of(normalized(t, c.metric())));
      const double lhs = insert(insert(insert(insert(r4, 0, v[0]), 0, v[1]), 0, v[2]), 0, v[3])[0];
      const double rhs = beta * (c.g(v[1], v[2]) * c.g(v[0], v[3]) - c.g(v[0], v[2]) * c.g(v[1], v[3]));
      acc.add(std::abs(lhs - rhs), sp.point);
    }
  }
  auto r = acc.report(suite, "phi-curvature-form",
                      "R(phi X,phi Y,phi Z,phi W) = (r-4n)/(2n(2n-1)) {g(phi Y,phi Z) g(phi X,phi W) - g(phi X,phi Z) "
                      "g(phi Y,phi W)}",
                      tol, weyl_premise(s, premise.max(), tol));
  apply_dim3_guard(s, r);
  return r;
}

/// Ric* fitted against beta g^phi, and beta from the scalar curvature.
struct StarEtaEinsteinResult {
  EinsteinFit fit;
  double beta_fit = 0.0;
  double beta_formula = 0.0;
  ResidualReport report;
};

inline StarEtaEinsteinResult star_eta_einstein_from_phi_flatness(const ContactStructure& s, const SamplePlan& plan) {
  const std::string suite = "conformal";
  const double tol = plan.tolerance(suite, mode_tolerance(s, 1e-8, 1e-5));
  const auto premise = phi_conformal_values(s, plan);
  StarEtaEinsteinResult out;
  ResidualAccumulator acc;
  bool first = true;
  for (const auto& sp : sample_points(s.manifold, plan)) {
    ContactLocal c(s, sp.point, 2);
    const auto fit = fit_einstein_form(star_ricci_frame_sum(c), c, EinsteinKind::weaklyPhiEinstein, tol);
    const double beta = star_beta(c.geo().scalar_curvature().value(), c.n());
    if (first) {
      out.fit = fit;
      out.beta_fit = fit.alpha;
      out.beta_formula = beta;
      first = false;
    }
    out.fit.residual = std::max(out.fit.residual, fit.residual);
    acc.add(std::max(fit.residual, std::abs(fit.alpha - beta)), sp.point);
  }
  out.fit.kind = out.fit.residual <= tol ? EinsteinKind::starEtaEinstein : EinsteinKind::none;
  out.report = acc.report(suite, "star-eta-einstein",
                          "Ric*(X,Y) = beta g(X,Y) - beta eta(X) eta(Y), beta = (r-4n)/(2n(2n-1))", tol,
                          weyl_premise(s, premise.max(), tol));
  apply_dim3_guard(s, out.report);
  return out;
}

/// (nabla_W Ric*)(phi X, phi Y) = dr(W) g(phi X, phi Y) / (2n(2n-1)) on
/// phi-conformally flat structures.
inline ResidualReport eta_parallel_scalar_relation(const ContactStructure& s, const SamplePlan& plan) {
  const std::string suite = "conformal";
  const double tol = plan.tolerance(suite, mode_tolerance(s, 1e-7, 1e-3));
  const auto premise = phi_conformal_values(s, plan);
  ResidualAccumulator acc;
  for (const auto& sp : sample_points(s.manifold, plan)) {
    ContactLocal c(s, sp.point, 3);
    const auto d_star = values(c.geo().covariant_derivative(star_ricci_jet(c)));
    const Jet scal = c.geo().scalar_curvature();
    const double k = 1.0 / (2.0 * c.n() * (2.0 * c.n() - 1.0));
    for (const auto& tuple : sp.tuples) {
      const auto x = c.phi_of(normalized(tuple[0], c.metric()));
      const auto y = c.phi_of(normalized(tuple[1], c.metric()));
      const auto w = normalized(tuple[2], c.metric());
      double dr = 0.0;
      for (int a = 0; a < c.dim(); ++a) dr += scal.derivative(a).value() * w(a);
      const double lhs = insert(insert(insert(d_star, 0, w), 0, x), 0, y)[0];
      acc.add(std::abs(lhs - k * dr * c.g(x, y)), sp.point);
    }
  }
  auto r = acc.report(suite, "eta-parallel-scalar",
                      "(nabla_W Ric*)(phi X, phi Y) = dr(W) g(phi X, phi Y) / (2n(2n-1))", tol,
                      weyl_premise(s, premise.max(), tol));
  apply_dim3_guard(s, r);
  return r;
}

// ---------------------------------------------------------------------------
// Sectional curvature

inline double sectional_curvature(const ContactLocal& c, const TensorValue& x, const TensorValue& y) {
  const std::vector<TensorValue> pair{x, y};
  if (!(normalized_gram_determinant(pair, c.metric()) > 1e-10)) {
    throw Error(ErrorCode::degenerate_input, "sectional_curvature: vectors span a degenerate plane");
  }
  const auto r4 = values(c.geo().riemann_lowered());
  const double num = insert(insert(insert(insert(r4, 0, x), 0, y), 0, y), 0, x)[0];
  return num / (c.g(x, x) * c.g(y, y) - c.g(x, y) * c.g(x, y));
}

inline double sectional_curvature(const ContactStructure& s, const Point& p, const TensorValue& x,
                                  const TensorValue& y) {
  return sectional_curvature(ContactLocal(s, p, 2), x, y);
}

/// K(X, phi X) for a unit X orthogonal to xi.
inline double phi_sectional(const ContactLocal& c, const TensorValue& x) {
  if (std::abs(c.eta_of(x)) > 1e-8 || std::abs(c.g(x, x) - 1.0) > 1e-8) {
    throw Error(ErrorCode::invalid_argument, "phi_sectional: X must be a unit vector orthogonal to xi");
  }
  return sectional_curvature(c, x, c.phi_of(x));
}

inline double phi_sectional(const ContactStructure& s, const Point& p, const TensorValue& x) {
  return phi_sectional(ContactLocal(s, p, 2), x);
}

struct CurvatureFit {
  double kappa = 0.0;
  double residual = 0.0;
  Point worst_point;
};

/// Least-squares kappa for R(X,Y)Z = kappa (g(Y,Z)X - g(X,Z)Y), using every
/// frame component at every sample point.
inline CurvatureFit constant_curvature_fit(const ContactStructure& s, const SamplePlan& plan) {
  std::vector<std::pair<Point, TensorValue>> frames;
  double num = 0.0, den = 0.0;
  for (const auto& sp : sample_points(s.manifold, plan)) {
    ContactLocal c(s, sp.point, 2);
    auto f = frame_components(values(c.geo().riemann()), c.frame(), c.metric());
    const int d = c.dim();
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) {
          for (int a = 0; a < d; ++a) {
            const double b = (j == k && i == a ? 1.0 : 0.0) - (i == k && j == a ? 1.0 : 0.0);
            num += f(i, j, k, a) * b;
            den += b * b;
          }
        }
      }
    }
    frames.emplace_back(sp.point, std::move(f));
  }
  CurvatureFit fit;
  fit.kappa = den > 0.0 ? num / den : 0.0;
  ResidualAccumulator acc;
  for (const auto& [p, f] : frames) {
    const int d = f.dim();
    double worst = 0.0;
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) {
          for (int a = 0; a < d; ++a) {
            const double b = (j == k && i == a ? 1.0 : 0.0) - (i == k && j == a ? 1.0 : 0.0);
            worst = std::max(worst, std::abs(f(i, j, k, a) - fit.kappa * b));
          }
        }
      }
    }
    acc.add(worst, p);
  }
  fit.residual = acc.max();
  fit.worst_point = acc.worst();
  return fit;
}

// ---------------------------------------------------------------------------
// Consequences of conformal flatness

/// The chain for conformally flat Sasakian structures, gated on C = 0:
/// Q = (r-2n)/(2n) on the contact distribution, the constant-curvature form
/// of R, Ric* = a g^phi, a = K(X, phi X), kappa = 1, local symmetry, and the
/// phi-invariance Ric*(phi Y, phi X) = Ric*(X, Y).
inline std::vector<ResidualReport> conformally_flat_chain(const ContactStructure& s, const SamplePlan& plan) {
  const std::string suite = "section4";
  const double tol = plan.tolerance(suite, mode_tolerance(s, 1e-7, 1e-4));
  const double tol_sym = plan.tolerance(suite, mode_tolerance(s, 1e-6, 1e-3));
  const auto weyl = weyl_values(s, plan);
  const auto status = weyl_premise(s, weyl.max(), tol);
  ResidualAccumulator q_form, r_form, star_form, a_k, local_sym, phi_inv;
  for (const auto& sp : sample_points(s.manifold, plan)) {
    ContactLocal c(s, sp.point, 3);
    const int n = c.n();
    const double scal = c.geo().scalar_curvature().value();
    const double a = star_beta(scal, n);
    const auto r = values(c.geo().riemann());
    const auto q = values(c.geo().ricci_operator());
    const auto star = star_ricci_frame_sum(c);
    star_form.add(c.norm(star - g_phi(c) * a), sp.point);
    local_sym.add(c.norm(values(c.geo().covariant_derivative(c.geo().riemann()))), sp.point);
    for (const auto& tuple : sp.tuples) {
      const auto x = normalized(tuple[0], c.metric());
      const auto y = normalized(tuple[1], c.metric());
      const auto z = normalized(tuple[2], c.metric());
      const auto h = c.horizontal_unit(x);
      q_form.add(c.norm(insert(q, 0, h) - h * ((scal - 2.0 * n) / (2.0 * n))), sp.point);
      const auto rxyz = insert(insert(insert(r, 0, x), 0, y), 0, z);
      r_form.add(c.norm(rxyz - (x * c.g(y, z) - y * c.g(x, z)) * a), sp.point);
      a_k.add(std::abs(a - phi_sectional(c, h)), sp.point);
      const double lhs = insert(insert(star, 0, c.phi_of(y)), 0, c.phi_of(x))[0];
      phi_inv.add(std::abs(lhs - insert(insert(star, 0, x), 0, y)[0]), sp.point);
    }
  }
  const auto kappa = constant_curvature_fit(s, plan);
  ResidualAccumulator kappa_acc;
  kappa_acc.add(std::max(std::abs(kappa.kappa - 1.0), kappa.residual), kappa.worst_point);

  std::vector<ResidualReport> out{
      q_form.report(suite, "ricci-operator-horizontal", "C = 0 implies QX = (r-2n)/(2n) X for X orthogonal to xi", tol,
                    status),
      r_form.report(suite, "curvature-form", "C = 0 implies R(X,Y)Z = (r-4n)/(2n(2n-1)) {g(Y,Z)X - g(X,Z)Y}", tol,
                    status),
      star_form.report(suite, "star-ricci-form", "C = 0 implies Ric*(X,Y) = (r-4n)/(2n(2n-1)) g(phi X, phi Y)", tol,
                       status),
      a_k.report(suite, "phi-sectional-coefficient", "C = 0 implies (r-4n)/(2n(2n-1)) = K(X, phi X)", tol, status),
      kappa_acc.report(suite, "constant-curvature-one", "C = 0 implies R(X,Y)Z = g(Y,Z)X - g(X,Z)Y", tol, status),
      local_sym.report(suite, "locally-symmetric", "C = 0 implies nabla R = 0", tol_sym, status),
      phi_inv.report(suite, "phi-invariance", "C = 0 implies Ric*(phi Y, phi X) = Ric*(X,Y)", tol, status)};
  const std::string note = "max |C| = " + format_number(weyl.max());
  for (auto& r : out) {
    r.note = note;
    apply_dim3_guard(s, r);
  }
  return out;
}

}  // namespace sasaki
