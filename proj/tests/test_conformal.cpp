#include <gtest/gtest.h>

#include <random>

#include "sasaki/conformal.hpp"
#include "sasaki/models.hpp"

using namespace sasaki;

namespace {

SamplePlan small_plan(int points = 6) {
  SamplePlan plan;
  plan.point_count = points;
  plan.vectors_per_point = 3;
  return plan;
}

// psi * g for the standard metric, psi = 1 + 0.1 x_1^2 + 0.05 z - 0.08 x_1 y_2.
struct ConformalStandardMetric {
  int n;
  template <class S>
  BasicTensor<S> operator()(std::span<const S> x) const {
    const S psi = 1.0 + 0.1 * x[0] * x[0] + 0.05 * x[2 * n] - 0.08 * x[0] * x[2 * n - 1];
    auto g = models_detail::StandardMetric{n}(x);
    for (auto& c : g.components()) c = c * psi;
    return g;
  }
};

}  // namespace

TEST(Weyl, VanishesOnFiveSphere) {
  const auto s = unit_sphere(2);
  for (const auto& sp : sample_points(s.manifold, small_plan())) {
    const auto w = weyl_tensor(s, sp.point);
    EXPECT_FALSE(w.identically_zero);
    EXPECT_LT(max_abs(w.tensor), 1e-10);
  }
}

TEST(Weyl, NonzeroOnStandardStructure) {
  const auto s = standard_sasakian(2);
  const auto sp = sample_points(s.manifold, small_plan(1)).front();
  EXPECT_GT(max_abs(weyl_tensor(s, sp.point).tensor), 0.1);
}

TEST(Weyl, ThreeDimensionsIsFlaggedAndZero) {
  for (const auto& s : {unit_sphere(1), standard_sasakian(1)}) {
    const auto sp = sample_points(s.manifold, small_plan(1)).front();
    const auto w = weyl_tensor(s, sp.point);
    EXPECT_TRUE(w.identically_zero);
    EXPECT_LT(max_abs(w.tensor), 1e-10);
  }
}

TEST(Weyl, InvariantUnderConformalChange) {
  const int n = 2;
  const auto base = standard_sasakian(n);
  const auto scaled = make_exact_field({Variance::down, Variance::down}, ConformalStandardMetric{n});
  const ChartManifold conformal(n, base.manifold.domain(), scaled.evaluate, scaled.jet);
  for (const auto& sp : sample_points(base.manifold, small_plan(4))) {
    const auto w0 = weyl_tensor(LocalGeometry(base.manifold, sp.point, 2)).tensor;
    const auto w1 = weyl_tensor(LocalGeometry(conformal, sp.point, 2)).tensor;
    EXPECT_LT(max_abs(w1 - w0), 1e-9);
    // the curvature itself does change
    EXPECT_GT(max_abs(riemann(conformal, sp.point) - riemann(base.manifold, sp.point)), 1e-3);
  }
}

TEST(Weyl, TraceFreeReportPasses) {
  for (const auto& s : {unit_sphere(2), standard_sasakian(2), make_model("r2n1-deformed:a=2", 2)}) {
    EXPECT_TRUE(weyl_trace_free(s, small_plan(4)).pass) << s.name;
  }
}

TEST(Sectional, SphereHasUnitCurvature) {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> nd;
  for (int n : {1, 2}) {
    const auto s = unit_sphere(n);
    for (const auto& sp : sample_points(s.manifold, small_plan(3))) {
      std::vector<double> a(s.dim()), b(s.dim());
      for (auto& x : a) x = nd(rng);
      for (auto& x : b) x = nd(rng);
      EXPECT_NEAR(sectional_curvature(s, sp.point, make_vector(a), make_vector(b)), 1.0, 1e-9);
    }
  }
}

TEST(Sectional, PhiSectionalEqualsSpaceFormConstant) {
  for (const auto& s : {unit_sphere(2), standard_sasakian(1), standard_sasakian(2), make_model("sphere-deformed:a=2", 1)}) {
    for (const auto& sp : sample_points(s.manifold, small_plan(3))) {
      ContactLocal c(s, sp.point, 2);
      const auto x = c.horizontal_unit(sp.tuples[0][0]);
      EXPECT_NEAR(phi_sectional(c, x), *s.space_form_c, 1e-9) << s.name;
      // planes containing xi have curvature one on any Sasakian manifold
      EXPECT_NEAR(sectional_curvature(c, c.xi(), x), 1.0, 1e-9) << s.name;
    }
  }
}

TEST(Sectional, RejectsDegenerateInput) {
  const auto s = unit_sphere(1);
  const Point p(3, 0.1);
  const auto x = make_vector({1.0, 0.5, 0.2});
  try {
    sectional_curvature(s, p, x, x * 2.0);
    ADD_FAILURE() << "parallel vectors accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::degenerate_input);
  }
  EXPECT_THROW(phi_sectional(s, p, s.xi(p)), Error);
}

TEST(ConstantCurvatureFit, SphereIsOneAndStandardIsNot) {
  const auto sph = constant_curvature_fit(unit_sphere(2), small_plan(4));
  EXPECT_NEAR(sph.kappa, 1.0, 1e-9);
  EXPECT_LT(sph.residual, 1e-9);
  EXPECT_GT(constant_curvature_fit(standard_sasakian(2), small_plan(4)).residual, 0.1);
}

TEST(ConformallyFlatChain, PassesOnFiveSphereAndSkipsOtherwise) {
  const auto plan = small_plan(5);
  for (const auto& r : conformally_flat_chain(unit_sphere(2), plan)) {
    EXPECT_TRUE(r.pass) << r.identity << " " << r.max_residual;
    EXPECT_EQ(r.premise, PremiseStatus::passed);
  }
  for (const auto& r : conformally_flat_chain(standard_sasakian(2), plan)) {
    EXPECT_TRUE(r.skipped) << r.identity;
    EXPECT_EQ(r.premise, PremiseStatus::violated);
    EXPECT_FALSE(r.pass);
  }
  for (const auto& r : conformally_flat_chain(standard_sasakian(1), plan)) {
    EXPECT_TRUE(r.skipped) << r.identity;
    EXPECT_EQ(r.note, kDim3Note);
  }
}

TEST(PhiConformal, StarEtaEinsteinCoefficientOnFiveSphere) {
  const auto res = star_eta_einstein_from_phi_flatness(unit_sphere(2), small_plan(4));
  EXPECT_TRUE(res.report.pass);
  EXPECT_NEAR(res.beta_formula, 1.0, 1e-9);
  EXPECT_NEAR(res.beta_fit, 1.0, 1e-9);
  EXPECT_DOUBLE_EQ(star_beta(20.0, 2), 1.0);
}
