#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sasaki/chart.hpp"
#include "sasaki/jet.hpp"

using namespace sasaki;

namespace {

std::vector<std::uint8_t> alpha(std::initializer_list<int> e) { return {e.begin(), e.end()}; }

long binomial(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

struct MixedField {
  template <class S>
  BasicTensor<S> operator()(std::span<const S> x) const {
    BasicTensor<S> t(3, {Variance::down});
    t(0) = x[0] * x[1] * x[2] + 1.0;
    t(1) = x[1] * x[1] * x[1] - x[0] * x[2];
    t(2) = sqrt(2.0 + x[0] * x[0] + x[2]);
    return t;
  }
};

}  // namespace

TEST(JetLayout, MonomialCountIsBinomial) {
  for (int d = 1; d <= kMaxJetDim; ++d) {
    for (int o = 0; o <= kMaxJetOrder; ++o) EXPECT_EQ(JetLayout::get(d, o).size(), binomial(d + o, o));
  }
  EXPECT_EQ(JetLayout::get(7, 3).size(), 120);
}

TEST(JetLayout, RejectsOutOfRange) {
  EXPECT_ANY_THROW(JetLayout::get(8, 1));
  EXPECT_ANY_THROW(JetLayout::get(3, 4));
  EXPECT_ANY_THROW(JetLayout::get(0, 1));
}

TEST(Jet, PolynomialPartials) {
  // f = x^2 y + 3 x z^3
  const Point p{0.3, -0.7, 1.1};
  const auto v = Jet::variables(p, 3);
  const Jet f = v[0] * v[0] * v[1] + 3.0 * v[0] * v[2] * v[2] * v[2];
  const double x = p[0], y = p[1], z = p[2];
  EXPECT_NEAR(f.value(), x * x * y + 3 * x * z * z * z, 1e-14);
  EXPECT_NEAR(f.partial(alpha({1, 0, 0})), 2 * x * y + 3 * z * z * z, 1e-13);
  EXPECT_NEAR(f.partial(alpha({0, 0, 1})), 9 * x * z * z, 1e-13);
  EXPECT_NEAR(f.partial(alpha({1, 1, 0})), 2 * x, 1e-13);
  EXPECT_NEAR(f.partial(alpha({1, 0, 2})), 18 * z, 1e-12);
  EXPECT_NEAR(f.partial(alpha({0, 0, 3})), 18 * x, 1e-12);
  EXPECT_NEAR(f.partial(alpha({2, 1, 0})), 2.0, 1e-12);
}

TEST(Jet, SqrtAndReciprocalMatchClosedForm) {
  // u = 1 + x^2 + y;  sqrt(u) and 1/u
  const Point p{0.4, 0.2};
  const auto v = Jet::variables(p, 2);
  const Jet u = 1.0 + v[0] * v[0] + v[1];
  const Jet s = sqrt(u);
  const Jet r = 1.0 / u;
  const double x = p[0], uu = 1 + x * x + p[1];
  EXPECT_NEAR(s.value(), std::sqrt(uu), 1e-14);
  EXPECT_NEAR(s.partial(alpha({1, 0})), x / std::sqrt(uu), 1e-14);
  EXPECT_NEAR(s.partial(alpha({0, 2})), -0.25 * std::pow(uu, -1.5), 1e-13);
  EXPECT_NEAR(s.partial(alpha({1, 1})), -0.5 * x * std::pow(uu, -1.5), 1e-13);
  EXPECT_NEAR(r.partial(alpha({2, 0})), 8 * x * x / std::pow(uu, 3) - 2 / std::pow(uu, 2), 1e-12);
  EXPECT_NEAR((u * r).value(), 1.0, 1e-15);
  EXPECT_NEAR((u * r).partial(alpha({1, 1})), 0.0, 1e-13);
}

TEST(Jet, ConstantAdoptsLayout) {
  const auto v = Jet::variables(Point{1.0, 2.0}, 2);
  Jet c(5.0);
  EXPECT_TRUE(c.is_constant());
  c += v[1];
  EXPECT_FALSE(c.is_constant());
  EXPECT_EQ(c.order(), 2);
  EXPECT_DOUBLE_EQ(c.value(), 7.0);
  EXPECT_DOUBLE_EQ(c.partial(alpha({0, 1})), 1.0);
  EXPECT_DOUBLE_EQ(Jet(3.0).partial(alpha({1, 0})), 0.0);
}

TEST(Jet, ProductRuleProperty) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Point p{u(rng), u(rng), u(rng)};
    const auto v = Jet::variables(p, 3);
    Jet a(u(rng)), b(u(rng));
    for (int k = 0; k < 3; ++k) {
      a += u(rng) * v[k] * v[(k + 1) % 3];
      b += u(rng) * v[k] + u(rng) * v[k] * v[k] * v[(k + 2) % 3];
    }
    for (int var = 0; var < 3; ++var) {
      const Jet lhs = (a * b).derivative(var);
      const Jet rhs = a.derivative(var) * b.truncated(2) + a.truncated(2) * b.derivative(var);
      for (int m = 0; m < lhs.size(); ++m) EXPECT_NEAR(lhs.coefficient(m), rhs.coefficient(m), 1e-12);
    }
  }
}

TEST(FiniteDifferenceJet, AgreesWithExactExpansion) {
  const auto field = make_exact_field({Variance::down}, MixedField{});
  const Point p{0.2, -0.4, 0.5};
  for (int order = 1; order <= 3; ++order) {
    const auto exact = field.jet(p, order);
    const auto fd = finite_difference_jet(field.evaluate, p, order, DerivativeConfig{});
    const auto& layout = JetLayout::get(3, order);
    for (std::size_t i = 0; i < exact.size(); ++i) {
      for (int m = 0; m < layout.size(); ++m) {
        const double tol = layout.degree(m) < 3 ? 1e-6 : 1e-4;
        EXPECT_NEAR(fd[i].coefficient(m), exact[i].coefficient(m), tol) << "component " << i << " monomial " << m;
      }
    }
  }
}

TEST(DerivativeConfig, ReachCoversStencil) {
  DerivativeConfig cfg;
  EXPECT_DOUBLE_EQ(cfg.reach(0), 0.0);
  EXPECT_DOUBLE_EQ(cfg.reach(1), cfg.h_first);
  EXPECT_DOUBLE_EQ(cfg.reach(2), cfg.h_second);
  EXPECT_DOUBLE_EQ(cfg.reach(3), 2.0 * cfg.h_third);
}
