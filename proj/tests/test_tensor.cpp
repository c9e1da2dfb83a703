#include <gtest/gtest.h>

#include <random>

#include "sasaki/error.hpp"
#include "sasaki/tensor.hpp"

using namespace sasaki;

namespace {

TensorValue random_tensor(int dim, Slots slots, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  TensorValue t(dim, std::move(slots));
  for (auto& c : t.components()) c = n(rng);
  return t;
}

TensorValue spd_metric(int dim, std::mt19937_64& rng) {
  const auto a = random_tensor(dim, {Variance::down, Variance::down}, rng);
  TensorValue g(dim, {Variance::down, Variance::down});
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      double acc = i == j ? 1.0 : 0.0;
      for (int k = 0; k < dim; ++k) acc += a(i, k) * a(j, k);
      g(i, j) = acc;
    }
  }
  return g;
}

template <class F>
ErrorCode code_of(F f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no sasaki::Error thrown";
  return ErrorCode::invalid_argument;
}

}  // namespace

TEST(Tensor, TraceOfIdentityIsDimension) {
  for (int d = 1; d <= 7; ++d) EXPECT_DOUBLE_EQ(contract(identity_endomorphism(d), 0, 0)[0], d);
}

TEST(Tensor, InsertMatchesExplicitSum) {
  std::mt19937_64 rng(1);
  const auto t = random_tensor(4, {Variance::down, Variance::down, Variance::up}, rng);
  const auto x = random_tensor(4, {Variance::up}, rng);
  const auto y = random_tensor(4, {Variance::up}, rng);
  const auto r = apply(t, {x, y});
  for (int a = 0; a < 4; ++a) {
    double acc = 0.0;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) acc += t(i, j, a) * x(i) * y(j);
    }
    EXPECT_NEAR(r(a), acc, 1e-12);
  }
}

TEST(Tensor, InsertChecksVarianceAndSlot) {
  const auto t = identity_endomorphism(3);
  EXPECT_EQ(code_of([&] { insert(t, 0, make_covector({1, 0, 0})); }), ErrorCode::variance_mismatch);
  EXPECT_EQ(code_of([&] { insert(t, 2, make_vector({1, 0, 0})); }), ErrorCode::index_out_of_range);
  EXPECT_EQ(code_of([&] { contract(t, 1, 0); }), ErrorCode::index_out_of_range);
}

TEST(Tensor, MoveSlotPermutesComponents) {
  std::mt19937_64 rng(2);
  const auto t = random_tensor(3, {Variance::down, Variance::up, Variance::down}, rng);
  const auto m = move_slot(t, 2, 0);
  EXPECT_EQ(m.slots(), (Slots{Variance::down, Variance::down, Variance::up}));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) EXPECT_DOUBLE_EQ(m(k, i, j), t(i, j, k));
    }
  }
  const auto b = random_tensor(3, {Variance::down, Variance::down}, rng);
  const auto bt = transpose2(b);
  EXPECT_DOUBLE_EQ(bt(0, 2), b(2, 0));
  EXPECT_EQ(max_abs(transpose2(bt) - b), 0.0);
}

TEST(Metric, RejectsNonSymmetricAndIndefinite) {
  TensorValue g(2, {Variance::down, Variance::down}, {1.0, 0.5, 0.0, 1.0});
  EXPECT_EQ(code_of([&] { MetricAtPoint m(g); }), ErrorCode::not_positive_definite);
  TensorValue h(2, {Variance::down, Variance::down}, {1.0, 0.0, 0.0, -1.0});
  EXPECT_EQ(code_of([&] { MetricAtPoint m(h); }), ErrorCode::not_positive_definite);
  EXPECT_EQ(code_of([&] { MetricAtPoint m(identity_endomorphism(2)); }), ErrorCode::variance_mismatch);
}

TEST(Metric, RaiseLowerRoundTripAndInverse) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const MetricAtPoint g(spd_metric(5, rng));
    const auto t = random_tensor(5, {Variance::down, Variance::up}, rng);
    const auto back = raise_lower(raise_lower(t, 1, g, Direction::down), 1, g, Direction::up);
    EXPECT_LT(max_abs(back - t), 1e-11);
    const auto prod = contract_slots(tensor_product(g.g(), g.g_inv()), 1, 2);
    EXPECT_LT(max_abs(prod - identity_endomorphism(5)), 1e-11);
  }
}

TEST(Frame, GramSchmidtIsOrthonormal) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const MetricAtPoint g(spd_metric(5, rng));
    std::vector<TensorValue> vs;
    for (int i = 0; i < 5; ++i) vs.push_back(random_tensor(5, {Variance::up}, rng));
    const auto f = gram_schmidt(vs, g);
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) EXPECT_NEAR(g(f[i], f[j]), i == j ? 1.0 : 0.0, 1e-12);
    }
    // the first vector keeps its direction
    EXPECT_NEAR(g(f[0], vs[0]), g.norm(vs[0]), 1e-12);
    // frame components of g are the identity
    const auto fg = frame_components(g.g(), f, g);
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) EXPECT_NEAR(fg(i, j), i == j ? 1.0 : 0.0, 1e-12);
    }
  }
}

TEST(Frame, DependentVectorsAreDegenerate) {
  const MetricAtPoint g(TensorValue(3, {Variance::down, Variance::down}, {1, 0, 0, 0, 1, 0, 0, 0, 1}));
  std::vector<TensorValue> vs{make_vector({1, 0, 0}), make_vector({0, 1, 0}), make_vector({1, 1, 0})};
  EXPECT_EQ(code_of([&] { gram_schmidt(vs, g); }), ErrorCode::degenerate_input);
  vs.pop_back();
  EXPECT_EQ(code_of([&] { gram_schmidt(vs, g); }), ErrorCode::degenerate_input);
}

TEST(Frame, CoordinateFramePinsVector) {
  std::mt19937_64 rng(5);
  const MetricAtPoint g(spd_metric(3, rng));
  const auto v = random_tensor(3, {Variance::up}, rng);
  const auto f = coordinate_frame(g, &v);
  EXPECT_NEAR(g(f[0], v), g.norm(v), 1e-12);
  EXPECT_NEAR(frame_norm(v, f, g), g.norm(v), 1e-12);
}
