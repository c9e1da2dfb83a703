#include <gtest/gtest.h>

#include <cmath>

#include "sasaki/calculus.hpp"
#include "sasaki/models.hpp"

using namespace sasaki;

namespace {

SamplePlan small_plan(int points = 6) {
  SamplePlan plan;
  plan.point_count = points;
  plan.vectors_per_point = 3;
  return plan;
}

ErrorCode parse_error(const std::string& name, int n) {
  try {
    parse_model(name, n);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "parsed " << name;
  return ErrorCode::invalid_argument;
}

// Sphere chart embedding P(u) = (u, sqrt(1 - |u|^2)) and its coordinate
// tangent vectors, written out independently of the model code.
std::vector<double> embed(const Point& u) {
  std::vector<double> p(u);
  double r2 = 0.0;
  for (double x : u) r2 += x * x;
  p.push_back(std::sqrt(1.0 - r2));
  return p;
}

std::vector<double> tangent(const Point& u, const std::vector<double>& v) {
  const auto p = embed(u);
  std::vector<double> t(v);
  double dw = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) dw -= u[i] * v[i] / p.back();
  t.push_back(dw);
  return t;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

TEST(Registry, ParsesNamesAndDeformations) {
  EXPECT_EQ(parse_model("sphere", 2).kind, ModelKind::unitSphere);
  EXPECT_EQ(parse_model("r2n1", 1).kind, ModelKind::standardR2n1);
  const auto d = parse_model("sphere-deformed:a=0.5", 1);
  EXPECT_EQ(d.kind, ModelKind::dHomothetic);
  EXPECT_EQ(d.base, ModelKind::unitSphere);
  EXPECT_DOUBLE_EQ(d.a, 0.5);
  EXPECT_EQ(make_model("r2n1-deformed:a=2", 1).name, "r2n1-deformed:a=2");
}

TEST(Registry, RejectsUnknownNames) {
  EXPECT_EQ(parse_error("torus", 1), ErrorCode::unknown_name);
  EXPECT_EQ(parse_error("sphere-deformed:a=", 1), ErrorCode::unknown_name);
  EXPECT_EQ(parse_error("sphere-deformed:a=-2", 1), ErrorCode::unknown_name);
  EXPECT_EQ(parse_error("sphere-deformed:a=2x", 1), ErrorCode::unknown_name);
  EXPECT_EQ(parse_error("klein-deformed:a=2", 1), ErrorCode::unknown_name);
  EXPECT_EQ(parse_error("sphere", 0), ErrorCode::invalid_argument);
}

TEST(Sphere, MetricIsInducedFromEuclideanSpace) {
  for (int n : {1, 2}) {
    const auto s = unit_sphere(n);
    for (const auto& sp : sample_points(s.manifold, small_plan())) {
      const auto g = s.manifold.metric_value(sp.point);
      const int d = s.dim();
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          std::vector<double> ei(d, 0.0), ej(d, 0.0);
          ei[i] = 1.0;
          ej[j] = 1.0;
          EXPECT_NEAR(g(i, j), dot(tangent(sp.point, ei), tangent(sp.point, ej)), 1e-12);
        }
      }
    }
  }
}

TEST(Sphere, ReebFieldIsComplexRotationOfPosition) {
  for (int n : {1, 2}) {
    const auto s = unit_sphere(n);
    for (const auto& sp : sample_points(s.manifold, small_plan())) {
      const auto xi = s.xi(sp.point);
      const auto pushed = tangent(sp.point, std::vector<double>(xi.components().begin(), xi.components().end()));
      const auto p = embed(sp.point);
      for (std::size_t k = 0; k + 1 < p.size(); k += 2) {
        EXPECT_NEAR(pushed[k], -p[k + 1], 1e-12);
        EXPECT_NEAR(pushed[k + 1], p[k], 1e-12);
      }
    }
  }
}

TEST(Sphere, BoxStaysInsideChart) {
  for (int n : {1, 2, 3}) {
    const auto box = sphere_box(n);
    double r2 = 0.0;
    for (int i = 0; i < box.dim(); ++i) r2 += std::max(box.lower[i] * box.lower[i], box.upper[i] * box.upper[i]);
    EXPECT_LT(std::sqrt(r2), 0.86);
  }
}

TEST(Models, ScalarCurvature) {
  for (int n : {1, 2}) {
    const auto sphere = unit_sphere(n);
    const auto flat = standard_sasakian(n);
    for (const auto& sp : sample_points(sphere.manifold, small_plan(3))) {
      EXPECT_NEAR(scalar_curvature(sphere.manifold, sp.point), 2.0 * n * (2.0 * n + 1.0), 1e-9);
    }
    for (const auto& sp : sample_points(flat.manifold, small_plan(3))) {
      EXPECT_NEAR(scalar_curvature(flat.manifold, sp.point), -2.0 * n, 1e-9);
    }
  }
}

TEST(SpaceForm, OracleMatchesCurvatureOnCatalogue) {
  for (const auto& s : {unit_sphere(1), unit_sphere(2), standard_sasakian(1), standard_sasakian(2),
                        make_model("sphere-deformed:a=0.5", 1), make_model("r2n1-deformed:a=3", 2)}) {
    ASSERT_TRUE(s.space_form_c.has_value());
    for (const auto& sp : sample_points(s.manifold, small_plan(4))) {
      const auto r = riemann(s.manifold, sp.point);
      const auto& t = sp.tuples.front();
      const auto lhs = insert(insert(insert(r, 0, t[0]), 0, t[1]), 0, t[2]);
      const auto rhs = space_form_oracle(*s.space_form_c, s.n(), s, sp.point, t[0], t[1], t[2]);
      EXPECT_LT(max_abs(lhs - rhs), 1e-9 * (1.0 + max_abs(rhs))) << s.name;
    }
  }
}

TEST(SpaceForm, OracleRejectsMismatchedModel) {
  const auto s = unit_sphere(1);
  const Point p(3, 0.1);
  const auto x = make_vector({1, 0, 0});
  EXPECT_THROW(space_form_oracle(-3.0, 1, s, p, x, x, x), Error);
  EXPECT_THROW(space_form_oracle(1.0, 2, s, p, x, x, x), Error);
}

TEST(DilationField, SolvesDeformedMetricEquation) {
  // L_V g = -lambda (g + eta (x) eta) with lambda = 2(2n+1)
  for (int n : {1, 2}) {
    const auto s = standard_sasakian(n);
    const auto v = dilation_soliton_field(n);
    const double lambda = 2.0 * (2 * n + 1);
    for (const auto& sp : sample_points(s.manifold, small_plan(4))) {
      const auto lg = lie_derivative_metric(s.manifold, v, sp.point);
      const auto e = s.eta(sp.point);
      const auto expect = (s.manifold.metric_value(sp.point) + tensor_product(e, e)) * -lambda;
      EXPECT_LT(max_abs(lg - expect), 1e-12);
    }
  }
}
