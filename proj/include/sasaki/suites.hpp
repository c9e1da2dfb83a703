#pragma once

// Named verification suites over catalogue models, and report rendering.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sasaki/conformal.hpp"
#include "sasaki/contact.hpp"
#include "sasaki/models.hpp"
#include "sasaki/report.hpp"
#include "sasaki/soliton.hpp"
#include "sasaki/star_ricci.hpp"

namespace sasaki {

inline constexpr int kReportSchemaVersion = 1;

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"axioms",  "sasakian",       "curvature-identities",
                                              "star-ricci", "conformal",   "section4",
                                              "semi-symmetry", "soliton", "deformation"};
  return names;
}

inline bool is_suite(const std::string& s) {
  const auto& v = suite_names();
  return std::find(v.begin(), v.end(), s) != v.end();
}


inline ResidualReport single_report(const std::string& suite, const std::string& identity, const std::string& anchor,
                                    double residual, double tol, const Point& where,
                                    PremiseStatus premise = PremiseStatus::not_applicable) {
  ResidualAccumulator acc;
  acc.add(residual, where);
  return acc.report(suite, identity, anchor, tol, premise);
}

// ---------------------------------------------------------------------------
// Suite bodies

inline std::vector<ResidualReport> convention_lock(const ContactStructure& s, const SamplePlan& plan) {
  auto r = verify_curvature_identities(s, plan).front();
  r.suite = "convention";
  r.identity = "convention-lock";
  return {r};
}

inline std::vector<ResidualReport> axioms_suite(const ContactStructure& s, const SamplePlan& plan) {
  auto out = verify_almost_contact(s, plan);
  for (auto& r : verify_compatibility(s, plan)) out.push_back(r);
  out.push_back(verify_contact_metric(s, plan));
  out.push_back(nijenhuis_normality(s, plan));
  return out;
}

/// R(X,Y)Z against the closed-form curvature of the space form.
inline ResidualReport space_form_report(const ContactStructure& s, const SamplePlan& plan) {
  const std::string suite = "curvature-identities";
  const double tol = plan.tolerance(suite, mode_tolerance(s, 1e-8, 1e-4));
  ResidualAccumulator acc;
  for (const auto& sp : sample_points(s.manifold, plan)) {
    ContactLocal c(s, sp.point, 2);
    const auto r = values(c.geo().riemann());
    for (const auto& tuple : sp.tuples) {
      const auto x = normalized(tuple[0], c.metric());
      const auto y = normalized(tuple[1], c.metric());
      const auto z = normalized(tuple[2], c.metric());
      const auto oracle = space_form_oracle(*s.space_form_c, s.n(), s, sp.point, x, y, z);
      acc.add(c.norm(insert(insert(insert(r, 0, x), 0, y), 0, z) - oracle), sp.point);
    }
  }
  auto rep = acc.report(suite, "space-form-curvature",
                        "R(X,Y)Z = (c+3)/4 {g(Y,Z)X - g(X,Z)Y} + (c-1)/4 {eta(X)eta(Z)Y - eta(Y)eta(Z)X + "
                        "g(X,Z)eta(Y)xi - g(Y,Z)eta(X)xi + Phi(Z,Y)phi X - Phi(Z,X)phi Y + 2 Phi(X,Y) phi Z}",
                        tol);
  rep.note = "c = " + format_number(*s.space_form_c);
  return rep;
}

inline std::vector<ResidualReport> curvature_suite(const ContactStructure& s, const SamplePlan& plan) {
  auto out = verify_curvature_identities(s, plan);
  if (s.space_form_c) out.push_back(space_form_report(s, plan));
  return out;
}

inline std::vector<ResidualReport> star_ricci_suite(const ContactStructure& s, const SamplePlan& plan) {
  const std::string suite = "star-ricci";
  const double tol = plan.tolerance(suite, mode_tolerance(s, 1e-8, 1e-5));
  auto out = star_ricci_route_reports(s, plan);
  out.push_back(yano_kon_check(s, plan));
  for (auto& r : phi_ricci_reports(s, plan)) out.push_back(r);

  ResidualAccumulator star_scalar_acc;
  for (const auto& sp : sample_points(s.manifold, plan)) {
    ContactLocal c(s, sp.point, 2);
    const double r = c.geo().scalar_curvature().value();
    star_scalar_acc.add(std::abs(star_scalar(c) - (r - 4.0 * s.n() * s.n())), sp.point);
  }
  out.push_back(star_scalar_acc.report(suite, "star-scalar", "r* = sum Ric*(e_i,e_i) = r - 4n^2", tol));

  const double fit_tol = plan.tolerance(suite, mode_tolerance(s, kEinsteinThreshold, 1e-4));
  const auto eta = classify_einstein(s, plan, RicciSource::ricci, EinsteinKind::etaEinstein, fit_tol);
  auto eta_report = single_report(suite, "ricci-eta-einstein", "Ric = alpha g + gamma eta (x) eta, constant alpha, gamma",
                                  eta.residual, fit_tol, {});
  eta_report.note = "alpha = " + format_number(eta.alpha) + ", gamma = " + format_number(eta.gamma);
  out.push_back(eta_report);
  const auto phi = classify_einstein(s, plan, RicciSource::phi_ricci, EinsteinKind::phiEinstein, fit_tol);
  auto phi_report =
      single_report(suite, "phi-einstein", "Ric^phi = beta g^phi, constant beta", phi.residual, fit_tol, {});
  phi_report.note = "beta = " + format_number(phi.alpha);
  out.push_back(phi_report);

  for (auto& r : eta_parallel_star_residual(s, plan)) out.push_back(r);
  return out;
}

inline std::vector<ResidualReport> conformal_suite(const ContactStructure& s, const SamplePlan& plan) {
  const std::string suite = "conformal";
  std::vector<ResidualReport> out{weyl_trace_free(s, plan), check_phi_curvature_form(s, plan),
                                  star_eta_einstein_from_phi_flatness(s, plan).report,
                                  eta_parallel_scalar_relation(s, plan)};
  if (s.space_form_c) {
    const double tol = plan.tolerance(suite, mode_tolerance(s, 1e-8, 1e-4));
    ResidualAccumulator acc;
    for (const auto& sp : sample_points(s.manifold, plan)) {
      ContactLocal c(s, sp.point, 2);
      for (const auto& tuple : sp.tuples) acc.add(std::abs(phi_sectional(c, c.horizontal_unit(tuple[0])) - *s.space_form_c), sp.point);
    }
    auto r = acc.report(suite, "phi-sectional-constant", "K(X, phi X) = c for unit X orthogonal to xi", tol);
    r.note = "c = " + format_number(*s.space_form_c);
    out.push_back(r);
  }
  return out;
}

/// Symmetries of the Reeb field: it is Killing and preserves the structure.
inline std::vector<ResidualReport> reeb_symmetry_reports(const ContactStructure& s, const SamplePlan& plan) {
  const std::string suite = "soliton";
  const auto inst = reeb_instance(s, 0.0);
  const double tol = soliton_tolerance(inst, plan);
  ResidualAccumulator le, lx, lp, ln, jac;
  for (const auto& sp : sample_points(s.manifold, plan)) {
    SolitonLocal l(inst, sp.point, 2);
    const auto& c = l.c();
    le.add(c.norm(values(l.lie_eta())), sp.point);
    lx.add(c.norm(values(l.lie_xi())), sp.point);
    lp.add(c.norm(values(l.lie_phi())), sp.point);
    ln.add(c.norm(values(l.lie_nabla())), sp.point);
    jac.add(c.norm(jacobi_along_reeb_at(l)), sp.point);
  }
  return {le.report(suite, "reeb-lie-eta", "L_xi eta = 0", tol), lx.report(suite, "reeb-lie-xi", "L_xi xi = 0", tol),
          lp.report(suite, "reeb-lie-phi", "L_xi phi = 0", tol),
          ln.report(suite, "reeb-lie-nabla", "L_xi nabla = 0", tol),
          jac.report(suite, "reeb-jacobi", "nabla_xi nabla_xi xi + R(xi, xi) xi = 0", tol)};
}

inline std::vector<ResidualReport> soliton_suite(const ContactStructure& s, const ModelSpec& spec,
                                                 const SamplePlan& plan) {
  const std::string suite = "soliton";
  const int n = s.n();
  std::vector<ResidualReport> out = reeb_symmetry_reports(s, plan);
  const auto reeb = reeb_instance(s, 0.0);
  for (auto& r : lie_nabla_reports(reeb, plan, "V=xi")) out.push_back(r);
  for (auto& r : commutation_c1_check(reeb, plan, "V=xi")) out.push_back(r);
  for (auto& r : soliton_reports(reeb, plan, "V=xi")) out.push_back(r);

  // Ricci form of *-Ricci solitons, with lambda read off from Ric.
  const double lambda = fit_soliton_lambda(s, plan);
  const SolitonInstance fitted{s, s.xi, lambda};
  const auto form = soliton_ricci_form(fitted, plan, plan.tolerance(suite, kEinsteinThreshold));
  auto form_report = single_report(suite, "soliton-ricci-form",
                                   "Ric = [2n-1-lambda/2] g + [1+lambda/2] eta (x) eta", form.residual,
                                   plan.tolerance(suite, kEinsteinThreshold), {});
  form_report.note = "lambda = " + format_number(lambda) + " (" +
                     to_string(classify_lambda(lambda, n, soliton_tolerance(fitted, plan))) + ")";
  out.push_back(form_report);

  // Case I constants (2n-1, 1) give r = 2n(alpha+1) = 4n^2.
  const double alpha1 = 2.0 * n - 1.0, gamma1 = 1.0;
  const double r_case1 = (2.0 * n + 1.0) * alpha1 + gamma1;
  out.push_back(single_report(suite, "killing-case-scalar", "Ric = (2n-1) g + eta (x) eta has r = 2n(alpha+1) = 4n^2",
                              std::max(std::abs(r_case1 - 4.0 * n * n), std::abs(r_case1 - 2.0 * n * (alpha1 + 1.0))),
                              1e-12, {}));

  if (spec.kind == ModelKind::standardR2n1) {
    const SolitonInstance dil{s, dilation_soliton_field(n), 2.0 * (2.0 * n + 1.0)};
    for (auto& r : lie_nabla_reports(dil, plan, "V=dilation")) out.push_back(r);
    for (auto& r : commutation_c1_check(dil, plan, "V=dilation")) out.push_back(r);
    for (auto& r : soliton_reports(dil, plan, "V=dilation")) out.push_back(r);
    const auto diag = contact_transformation_diagnostics(dil, plan);
    const double tol = soliton_tolerance(dil, plan);
    out.push_back(single_report(suite, "contact-transformation [V=dilation]",
                                "lambda = 2(2n+1) implies L_V eta = -2(2n+1) eta, L_V xi = 2(2n+1) xi, L_V phi = 0",
                                std::max({diag.etaLieResidual, diag.xiLieResidual, diag.phiLieResidual}), tol, {}));
  }
  return out;
}

inline std::vector<ResidualReport> deformation_suite(const ContactStructure& s, double a, const SamplePlan& plan) {
  const std::string suite = "deformation";
  const double tol = plan.tolerance(suite, mode_tolerance(s, 1e-5, 1e-4));
  const int n = s.n();
  const auto base = classify_einstein(s, plan, RicciSource::ricci, EinsteinKind::etaEinstein, tol);
  const auto def = d_homothetic_deform(s, a);
  const auto fit = classify_einstein(def, plan, RicciSource::ricci, EinsteinKind::etaEinstein, tol);
  const double alpha_law = (base.alpha + 2.0 - 2.0 * a) / a;
  std::vector<ResidualReport> out;
  auto law = single_report(suite, "alpha-law", "alpha' = (alpha + 2 - 2a)/a",
                           std::max(fit.residual, std::abs(fit.alpha - alpha_law)), tol, {});
  law.note = "a = " + format_number(a) + ", alpha = " + format_number(base.alpha) + ", alpha' = " +
             format_number(fit.alpha);
  out.push_back(law);
  out.push_back(single_report(suite, "gamma-law", "gamma' = 2n - alpha'",
                              std::max(fit.residual, std::abs(fit.gamma - (2.0 * n - fit.alpha))), tol, {}));
  double sasakian = 0.0;
  for (const auto& r : verify_sasakian(def, plan)) sasakian = std::max(sasakian, r.max_residual);
  out.push_back(single_report(suite, "deformed-sasakian", "(nabla'_X phi)Y = g'(X,Y) xi' - eta'(Y) X", sasakian,
                              plan.tolerance(suite, mode_tolerance(s, 1e-8, 1e-6)), {}));

  const auto back = d_homothetic_deform(def, 1.0 / a);
  ResidualAccumulator round;
  for (const auto& sp : sample_points(s.manifold, plan)) {
    const auto g0 = s.manifold.metric_value(sp.point);
    const auto g1 = back.manifold.metric_value(sp.point);
    round.add(frame_norm(g1 - g0, coordinate_frame(MetricAtPoint(g0)), MetricAtPoint(g0)), sp.point);
  }
  out.push_back(round.report(suite, "round-trip", "deforming by a and then 1/a restores g", 1e-9));
  return out;
}

// ---------------------------------------------------------------------------
// Runner

struct SuiteRequest {
  std::string model = "sphere";
  int n = 1;
  std::vector<std::string> suites;
  double deform_a = 2.0;
  bool fd_metric = false;
};

/// Runs the convention lock and then each requested suite in order.  Unknown
/// models and suites raise Error(unknown_name); numerical failures inside a
/// suite become failing reports.
inline std::vector<ResidualReport> run_suites(const SuiteRequest& req, const SamplePlan& plan) {
  for (const auto& s : req.suites) {
    if (!is_suite(s)) throw Error(ErrorCode::unknown_name, "unknown suite: " + s);
  }
  const auto spec = parse_model(req.model, req.n);
  ContactStructure s = build_model(spec);
  s.manifold = s.manifold.with_fd_config(plan.fd);
  if (req.fd_metric) s = s.finite_difference_only();

  std::vector<ResidualReport> out;
  auto guarded = [&](const std::string& suite, const std::function<std::vector<ResidualReport>()>& body) {
    try {
      for (auto& r : body()) out.push_back(std::move(r));
    } catch (const std::exception& e) {
      ResidualReport r;
      r.suite = suite;
      r.identity = "evaluation";
      r.max_residual = std::numeric_limits<double>::infinity();
      r.pass = false;
      r.note = std::string("evaluation failed: ") + e.what();
      out.push_back(r);
    }
  };

  guarded("convention", [&] { return convention_lock(s, plan); });
  if (!out.back().pass) {
    out.back().note = "curvature sign convention check failed; remaining suites not run";
    return out;
  }
  for (const auto& name : req.suites) {
    if (name == "axioms") guarded(name, [&] { return axioms_suite(s, plan); });
    if (name == "sasakian") guarded(name, [&] { return verify_sasakian(s, plan); });
    if (name == "curvature-identities") guarded(name, [&] { return curvature_suite(s, plan); });
    if (name == "star-ricci") guarded(name, [&] { return star_ricci_suite(s, plan); });
    if (name == "conformal") guarded(name, [&] { return conformal_suite(s, plan); });
    if (name == "section4") guarded(name, [&] { return conformally_flat_chain(s, plan); });
    if (name == "semi-symmetry") guarded(name, [&] { return semi_symmetry_reports(s, plan); });
    if (name == "soliton") guarded(name, [&] { return soliton_suite(s, spec, plan); });
    if (name == "deformation") guarded(name, [&] { return deformation_suite(s, req.deform_a, plan); });
  }
  return out;
}

inline bool all_pass(const std::vector<ResidualReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const ResidualReport& r) { return r.skipped || r.pass; });
}

// ---------------------------------------------------------------------------
// Rendering

struct ReportContext {
  std::string model;
  int n = 1;
  std::uint64_t seed = 0;
};

inline nlohmann::ordered_json report_json(const ResidualReport& r, const ReportContext& ctx) {
  nlohmann::ordered_json j;
  j["schemaVersion"] = kReportSchemaVersion;
  j["model"] = ctx.model;
  j["n"] = ctx.n;
  j["seed"] = ctx.seed;
  j["suite"] = r.suite;
  j["identity"] = r.identity;
  j["anchor"] = r.anchor;
  if (std::isfinite(r.max_residual)) {
    j["maxResidual"] = r.max_residual;
  } else {
    j["maxResidual"] = nullptr;
  }
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  j["premiseStatus"] = to_string(r.premise);
  j["skipped"] = r.skipped;
  j["worstPoint"] = r.worst_point;
  j["note"] = r.note;
  return j;
}

inline std::string emit_json(const std::vector<ResidualReport>& reports, const ReportContext& ctx) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) arr.push_back(report_json(r, ctx));
  return arr.dump(2) + "\n";
}

inline std::string status_label(const ResidualReport& r) {
  if (r.skipped) return "skipped";
  return r.pass ? "pass" : "FAIL";
}

inline std::string emit_markdown(const std::vector<ResidualReport>& reports, const ReportContext& ctx) {
  std::ostringstream os;
  os << "# " << ctx.model << " (n = " << ctx.n << ", seed = " << ctx.seed << ")\n";
  std::string current;
  for (const auto& r : reports) {
    if (r.suite != current) {
      current = r.suite;
      os << "\n## " << current << "\n\n";
      os << "| identity | max residual | tolerance | status | premise | anchor |\n";
      os << "|---|---|---|---|---|---|\n";
    }
    std::string anchor = r.anchor;
    if (!r.note.empty()) anchor += anchor.empty() ? r.note : " (" + r.note + ")";
    std::string escaped;
    for (char ch : anchor) {
      if (ch == '|') escaped += "\\|";
      else escaped += ch;
    }
    os << "| " << r.identity << " | " << format_number(r.max_residual) << " | " << format_number(r.tolerance) << " | "
       << status_label(r) << " | " << to_string(r.premise) << " | " << escaped << " |\n";
  }
  return os.str();
}

enum class ReportFormat { json, markdown };

inline std::string emit_report(const std::vector<ResidualReport>& reports, ReportFormat format,
                               const ReportContext& ctx) {
  return format == ReportFormat::json ? emit_json(reports, ctx) : emit_markdown(reports, ctx);
}

}  // namespace sasaki
