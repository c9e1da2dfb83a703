// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "sasaki/sasaki.hpp"

using namespace sasaki;

namespace {

SamplePlan plan_with(int points, int vectors = 4, std::uint64_t seed = 42) {
  SamplePlan plan;
  plan.point_count = points;
  plan.vectors_per_point = vectors;
  plan.seed = seed;
  return plan;
}

std::vector<ContactStructure> two_models(std::initializer_list<int> ns) {
  std::vector<ContactStructure> out;
  for (int n : ns) {
    out.push_back(unit_sphere(n));
    out.push_back(standard_sasakian(n));
  }
  return out;
}

TensorValue horizontal_metric(const ContactLocal& c) { return c.metric().g() - tensor_product(c.eta(), c.eta()); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what, double value) {
    if (!ok) {
      pass = false;
      detail << " [" << what << " = " << value << "]";
    }
  }
};

struct QuadraticField {
  int dim;
  std::vector<double> c;

  template <class S>
  BasicTensor<S> operator()(std::span<const S> x) const {
    BasicTensor<S> v(dim, {Variance::up});
    const int stride = 1 + dim + dim * dim;
    for (int a = 0; a < dim; ++a) {
      const double* k = &c[static_cast<std::size_t>(a * stride)];
      S acc(k[0]);
      for (int i = 0; i < dim; ++i) acc += k[1 + i] * x[i];
      for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) acc += k[1 + dim + i * dim + j] * x[i] * x[j];
      }
      v(a) = acc;
    }
    return v;
  }
};

// 1. Three routes to Ric* agree pairwise.
void star_ricci_routes(Outcome& o) {
  double worst = 0.0;
  for (const auto& s : two_models({1, 2})) {
    for (const auto& sp : sample_points(s.manifold, plan_with(50))) {
      ContactLocal c(s, sp.point, 2);
      const auto a = star_ricci_frame_sum(c), b = star_ricci_bianchi(c), l = star_ricci_lemma(c);
      worst = std::max({worst, c.norm(a - b), c.norm(a - l), c.norm(b - l)});
    }
  }
  o.require(worst < 1e-6, "max pairwise difference", worst);
  o.detail << " max pairwise difference " << worst;
}

// 2. Structure axioms, curvature identities and normality at 100 points.
void axioms(Outcome& o) {
  double worst = 0.0;
  const auto plan = plan_with(100);
  for (const auto& s : two_models({1, 2, 3})) {
    auto reports = axioms_suite(s, plan);
    for (auto& r : verify_sasakian(s, plan)) reports.push_back(r);
    for (auto& r : verify_curvature_identities(s, plan)) reports.push_back(r);
    for (const auto& r : reports) {
      if (r.max_residual >= 1e-6) o.require(false, s.name + " " + r.identity, r.max_residual);
      worst = std::max(worst, r.max_residual);
    }
  }
  o.detail << " max residual " << worst;
}

// 3. The conformally flat chain on spheres.
void sphere_chain(Outcome& o) {
  const auto plan = plan_with(10);
  for (int n : {1, 2}) {
    const auto s = unit_sphere(n);
    const auto fit = constant_curvature_fit(s, plan);
    o.require(std::abs(fit.kappa - 1.0) < 1e-6 && fit.residual < 1e-6, "kappa on S^" + std::to_string(2 * n + 1),
              fit.kappa);
    double scal = 0.0, nabla_r = 0.0;
    for (const auto& sp : sample_points(s.manifold, plan)) {
      LocalGeometry geo(s.manifold, sp.point, 3);
      scal = std::max(scal, std::abs(geo.scalar_curvature().value() - 2.0 * n * (2.0 * n + 1.0)));
      nabla_r = std::max(nabla_r, max_abs(values(geo.covariant_derivative(geo.riemann()))));
    }
    o.require(scal < 1e-6, "scalar curvature error", scal);
    o.require(nabla_r < 1e-4, "|nabla R|", nabla_r);
  }
  const auto s5 = unit_sphere(2);
  double coeff = 0.0, coeff_k = 0.0, weyl = 0.0;
  for (const auto& sp : sample_points(s5.manifold, plan)) {
    ContactLocal c(s5, sp.point, 2);
    const double a = star_beta(c.geo().scalar_curvature().value(), 2);
    coeff = std::max(coeff, std::abs(a - 1.0));
    for (const auto& t : sp.tuples) coeff_k = std::max(coeff_k, std::abs(a - phi_sectional(c, c.horizontal_unit(t[0]))));
    weyl = std::max(weyl, max_abs(weyl_tensor(c.geo()).tensor));
  }
  o.require(coeff < 1e-5, "|a - 1|", coeff);
  o.require(coeff_k < 1e-5, "|a - K(X, phi X)|", coeff_k);
  o.require(weyl < 1e-6, "|C| on S^5", weyl);
  o.detail << " kappa fit, r, a, Weyl and nabla R within bounds";
}

// 4. Closed forms of Ric* and r*.
void star_quantities(Outcome& o) {
  const auto plan = plan_with(20);
  const auto s3 = unit_sphere(1);
  double e1 = 0.0, e2 = 0.0;
  for (const auto& sp : sample_points(s3.manifold, plan)) {
    ContactLocal c(s3, sp.point, 2);
    e1 = std::max(e1, c.norm(star_ricci_frame_sum(c) - horizontal_metric(c)));
    e2 = std::max(e2, std::abs(star_scalar(c) - 2.0));
  }
  o.require(e1 < 1e-6, "S^3 Ric* error", e1);
  o.require(e2 < 1e-6, "S^3 r* error", e2);
  const auto flat = standard_sasakian(2);
  e1 = e2 = 0.0;
  for (const auto& sp : sample_points(flat.manifold, plan)) {
    ContactLocal c(flat, sp.point, 2);
    e1 = std::max(e1, c.norm(star_ricci_frame_sum(c) + horizontal_metric(c) * 5.0));
    e2 = std::max(e2, std::abs(star_scalar(c) + 20.0));
  }
  o.require(e1 < 1e-5, "r2n1 n=2 Ric* error", e1);
  o.require(e2 < 1e-5, "r2n1 n=2 r* error", e2);
  double xi_slot = 0.0;
  for (const auto& s : two_models({1, 2})) {
    for (const auto& sp : sample_points(s.manifold, plan)) {
      ContactLocal c(s, sp.point, 2);
      xi_slot = std::max(xi_slot, max_abs(insert(star_ricci_frame_sum(c), 1, c.xi())));
    }
  }
  o.require(xi_slot < 1e-8, "|Ric*(., xi)|", xi_slot);
  o.detail << " max |Ric*(., xi)| " << xi_slot;
}

// 5. Semi-symmetry negative control on S^3.
void semi_symmetry_control(Outcome& o) {
  const auto s = unit_sphere(1);
  const auto plan = plan_with(20);
  const auto with_star = star_semi_symmetry_residual(s, plan);
  const auto zeroed = star_semi_symmetry_residual(s, plan, true);
  double star_size = 0.0;
  for (const auto& sp : sample_points(s.manifold, plan)) {
    star_size = std::max(star_size, max_abs(star_ricci_frame_sum(s, sp.point)));
  }
  o.require(with_star.max_residual > 0.1, "residual with Ric*", with_star.max_residual);
  o.require(star_size > 0.1, "|Ric*|", star_size);
  o.require(zeroed.max_residual == 0.0, "residual with Ric* = 0", zeroed.max_residual);
  o.detail << " residual " << with_star.max_residual << ", zeroed " << zeroed.max_residual;
}

// 6. Soliton structure on the standard model and the Reeb field.
void soliton_structure(Outcome& o) {
  const auto plan = plan_with(10);
  for (int n : {1, 2}) {
    const auto s = standard_sasakian(n);
    const double lambda = fit_soliton_lambda(s, plan);
    o.require(std::abs(lambda - 2.0 * (2 * n + 1)) < 1e-5, "fitted lambda", lambda);
    const auto form = soliton_ricci_form({s, s.xi, lambda}, plan);
    o.require(form.residual < 1e-5, "soliton Ricci form residual", form.residual);
    o.require(std::abs(form.alpha + 2.0) < 1e-5, "alpha", form.alpha);
    o.require(std::abs(form.gamma - 2.0 * (n + 1)) < 1e-5, "gamma", form.gamma);

    // Case I form (2n-1) g + eta (x) eta traced against the metric.
    const auto sp = sample_points(s.manifold, plan_with(1)).front();
    ContactLocal c(s, sp.point, 1);
    const auto t = c.metric().g() * (2.0 * n - 1.0) + tensor_product(c.eta(), c.eta());
    const double r = frame_trace(c, t);
    o.require(std::abs(r - 4.0 * n * n) < 1e-12, "Case I scalar - 4n^2", r - 4.0 * n * n);
  }
  for (const auto& s : two_models({1, 2})) {
    const auto d = contact_transformation_diagnostics(reeb_instance(s, 0.0), plan);
    const double worst = std::max({d.jacobiResidual, d.etaLieResidual, d.xiLieResidual, d.phiLieResidual});
    o.require(worst < 1e-6, s.name + " V = xi diagnostics", worst);
  }
  o.detail << " lambda = 2(2n+1), constants (-2, 2(n+1)), Case I r = 4n^2, V = xi preserves the structure";
}

// 7. L_V nabla routes and the commutation formula with finite differences on V.
void commutation(Outcome& o) {
  const auto s = standard_sasakian(1);
  const auto plan = plan_with(4, 2);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd(0.0, 0.5);
  double routes = 0.0, c1 = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    QuadraticField f{3, std::vector<double>(3 * 13)};
    for (auto& x : f.c) x = nd(rng);
    const SolitonInstance inst{s, without_jet(make_exact_field({Variance::up}, f)), 0.0};
    for (const auto& sp : sample_points(s.manifold, plan)) {
      const auto [a, b] = lie_nabla_routes(inst, sp.point);
      routes = std::max(routes, max_abs(a - b));
    }
    c1 = std::max(c1, commutation_c1_check(inst, plan).front().max_residual);
  }
  o.require(routes < 1e-5, "route difference", routes);
  o.require(c1 < 1e-3, "commutation residual", c1);
  o.detail << " routes " << routes << ", commutation " << c1;
}

// 8. Ricci constants under D-homothetic deformation.
void deformation_law(Outcome& o) {
  const auto plan = plan_with(10);
  for (const auto& s : two_models({1, 2})) {
    const auto base = classify_einstein(s, plan, RicciSource::ricci, EinsteinKind::etaEinstein);
    for (double a : {0.5, 2.0, 3.0}) {
      const auto fit = classify_einstein(d_homothetic_deform(s, a), plan, RicciSource::ricci, EinsteinKind::etaEinstein);
      const double law = (base.alpha + 2.0 - 2.0 * a) / a;
      o.require(std::abs(fit.alpha - law) < 1e-5 && fit.residual < 1e-5, s.name + " alpha' error at a = " +
                format_number(a), std::abs(fit.alpha - law));
      if (s.space_form_c && *s.space_form_c == -3.0) {
        o.require(std::abs(fit.alpha + 2.0) < 1e-5, "r2n1 fixed point alpha'", fit.alpha);
      }
    }
  }
  o.detail << " alpha' = (alpha+2-2a)/a for a in {0.5, 2, 3}; alpha = -2 fixed on r2n1";
}

struct Captured {
  int exit_code = -1;
  std::string out;
};

Captured run(const std::string& cmd) {
  Captured c;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return c;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) c.out.append(buf.data(), got);
  const int status = pclose(pipe);
  c.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return c;
}

// 9. Byte-identical CLI output for a fixed seed.
void determinism(Outcome& o) {
  const std::string cmd = std::string(SASAKI_CLI_PATH) + " --model r2n1 --n 1 --suite all --points 5 --seed 11";
  const auto a = run(cmd), b = run(cmd);
  o.require(a.exit_code == 0 && b.exit_code == 0, "exit code", a.exit_code);
  o.require(!a.out.empty(), "output bytes", static_cast<double>(a.out.size()));
  o.require(a.out == b.out, "outputs differ", 1.0);
  o.detail << " " << a.out.size() << " identical bytes";
}

// 10. The convention lock runs first on S^3 and detects a flipped sign.
void convention(Outcome& o) {
  SuiteRequest req;
  req.suites = suite_names();
  const auto reports = run_suites(req, plan_with(10));
  o.require(!reports.empty() && reports.front().identity == "convention-lock", "first report is the lock", 0.0);
  o.require(reports.front().pass, "lock residual", reports.front().max_residual);

  const auto s = unit_sphere(1);
  double flipped = 0.0;
  for (const auto& sp : sample_points(s.manifold, plan_with(5))) {
    ContactLocal c(s, sp.point, 2);
    const auto r = values(c.geo().riemann()) * -1.0;
    for (const auto& t : sp.tuples) {
      const auto x = normalized(t[0], c.metric()), y = normalized(t[1], c.metric());
      const auto rxy = insert(insert(insert(r, 0, x), 0, y), 0, c.xi());
      flipped = std::max(flipped, c.norm(rxy - x * c.eta_of(y) + y * c.eta_of(x)));
    }
  }
  o.require(flipped > 0.1, "flipped-convention residual", flipped);
  o.detail << " lock residual " << reports.front().max_residual << ", flipped " << flipped;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"star-Ricci routes agree", star_ricci_routes},
      {"Sasakian axioms on the catalogue", axioms},
      {"conformally flat chain on spheres", sphere_chain},
      {"star-Ricci closed forms", star_quantities},
      {"semi-symmetry negative control", semi_symmetry_control},
      {"soliton structure", soliton_structure},
      {"commutation machinery", commutation},
      {"D-homothetic law", deformation_law},
      {"deterministic CLI output", determinism},
      {"convention lock", convention},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " exception: " << e.what();
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ":" << o.detail.str()
              << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
