#pragma once

// Pointwise multilinear algebra.
//
// A tensor stores one variance per slot and dense row-major components
// (slot 0 most significant).  Geometric objects use the convention
// "arguments first, output last": the (1,3) curvature tensor has slots
// [down, down, down, up] with component (i, j, k, a) = (R(d_i, d_j) d_k)^a,
// and a (1,1) field such as phi has slots [down, up].

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sasaki/error.hpp"
#include "sasaki/jet.hpp"

namespace sasaki {

using Point = std::vector<double>;

enum class Variance : unsigned char { up, down };
using Slots = std::vector<Variance>;

struct Valence {
  int contravariant = 0;
  int covariant = 0;
  friend bool operator==(const Valence&, const Valence&) = default;
};

template <class S>
class BasicTensor {
 public:
  using scalar_type = S;

  BasicTensor() = default;
  BasicTensor(int dim, Slots slots) : dim_(dim), slots_(std::move(slots)) {
    if (dim < 1) throw Error(ErrorCode::invalid_argument, "tensor: dimension must be positive");
    std::size_t n = 1;
    for (std::size_t i = 0; i < slots_.size(); ++i) n *= static_cast<std::size_t>(dim);
    c_.assign(n, S{});
  }
  BasicTensor(int dim, Slots slots, std::vector<S> components)
      : dim_(dim), slots_(std::move(slots)), c_(std::move(components)) {
    std::size_t n = 1;
    for (std::size_t i = 0; i < slots_.size(); ++i) n *= static_cast<std::size_t>(dim);
    if (c_.size() != n) throw Error(ErrorCode::invalid_argument, "tensor: component count does not match dim^rank");
  }

  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(slots_.size()); }
  const Slots& slots() const { return slots_; }
  Variance slot(int s) const { return slots_.at(static_cast<std::size_t>(s)); }
  Valence valence() const {
    Valence v;
    for (auto s : slots_) (s == Variance::up ? v.contravariant : v.covariant) += 1;
    return v;
  }
  std::size_t size() const { return c_.size(); }

  S& operator[](std::size_t flat) { return c_[flat]; }
  const S& operator[](std::size_t flat) const { return c_[flat]; }
  std::span<S> components() { return c_; }
  std::span<const S> components() const { return c_; }

  template <class... I>
  S& operator()(I... idx) {
    return c_[flat_index({static_cast<int>(idx)...})];
  }
  template <class... I>
  const S& operator()(I... idx) const {
    return c_[flat_index({static_cast<int>(idx)...})];
  }
  S& at(std::span<const int> idx) { return c_[flat_index(idx)]; }
  const S& at(std::span<const int> idx) const { return c_[flat_index(idx)]; }

  std::size_t flat_index(std::span<const int> idx) const {
    std::size_t f = 0;
    for (int i : idx) f = f * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
    return f;
  }
  std::size_t flat_index(std::initializer_list<int> idx) const {
    return flat_index(std::span<const int>(idx.begin(), idx.size()));
  }
  std::size_t stride(int s) const {
    std::size_t st = 1;
    for (int k = s + 1; k < rank(); ++k) st *= static_cast<std::size_t>(dim_);
    return st;
  }
  /// Multi-index of a flat position.
  std::vector<int> multi_index(std::size_t flat) const {
    std::vector<int> idx(slots_.size());
    for (int s = rank() - 1; s >= 0; --s) {
      idx[s] = static_cast<int>(flat % static_cast<std::size_t>(dim_));
      flat /= static_cast<std::size_t>(dim_);
    }
    return idx;
  }

  BasicTensor& operator+=(const BasicTensor& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  BasicTensor& operator-=(const BasicTensor& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  BasicTensor& operator*=(double s) {
    for (auto& x : c_) x *= s;
    return *this;
  }
  friend BasicTensor operator+(BasicTensor a, const BasicTensor& b) { return a += b; }
  friend BasicTensor operator-(BasicTensor a, const BasicTensor& b) { return a -= b; }
  friend BasicTensor operator*(BasicTensor a, double s) { return a *= s; }
  friend BasicTensor operator*(double s, BasicTensor a) { return a *= s; }
  BasicTensor operator-() const { return *this * -1.0; }

  template <class F>
  auto map(F f) const {
    using R = decltype(f(std::declval<const S&>()));
    std::vector<R> out;
    out.reserve(c_.size());
    for (const auto& x : c_) out.push_back(f(x));
    return BasicTensor<R>(dim_, slots_, std::move(out));
  }

 private:
  void check_same_shape(const BasicTensor& o) const {
    if (o.dim_ != dim_ || o.slots_ != slots_) throw Error(ErrorCode::variance_mismatch, "tensor: shape mismatch");
  }

  int dim_ = 0;
  Slots slots_;
  std::vector<S> c_;
};

using TensorValue = BasicTensor<double>;
using TensorJet = BasicTensor<Jet>;

// ---------------------------------------------------------------------------
// Construction helpers

inline TensorValue make_vector(std::vector<double> c) {
  const int d = static_cast<int>(c.size());
  return TensorValue(d, {Variance::up}, std::move(c));
}
inline TensorValue make_covector(std::vector<double> c) {
  const int d = static_cast<int>(c.size());
  return TensorValue(d, {Variance::down}, std::move(c));
}
inline TensorValue coordinate_vector(int dim, int i) {
  TensorValue v(dim, {Variance::up});
  v(i) = 1.0;
  return v;
}
/// Identity endomorphism with slots [down, up].
inline TensorValue identity_endomorphism(int dim) {
  TensorValue t(dim, {Variance::down, Variance::up});
  for (int i = 0; i < dim; ++i) t(i, i) = 1.0;
  return t;
}

inline TensorValue values(const TensorJet& t) {
  return t.map([](const Jet& j) { return j.value(); });
}

inline TensorJet partial_derivative(const TensorJet& t, int var) {
  return t.map([var](const Jet& j) { return j.derivative(var); });
}

template <class S>
BasicTensor<S> transpose2(const BasicTensor<S>& t) {
  BasicTensor<S> r(t.dim(), {t.slot(1), t.slot(0)});
  for (int i = 0; i < t.dim(); ++i) {
    for (int j = 0; j < t.dim(); ++j) r(j, i) = t(i, j);
  }
  return r;
}

inline double max_abs(const TensorValue& t) {
  double m = 0.0;
  for (double x : t.components()) m = std::max(m, std::abs(x));
  return m;
}

// ---------------------------------------------------------------------------
// Products and contractions

template <class A, class B>
auto tensor_product(const BasicTensor<A>& a, const BasicTensor<B>& b) {
  using R = decltype(std::declval<A>() * std::declval<B>());
  if (a.dim() != b.dim()) throw Error(ErrorCode::invalid_argument, "tensor_product: dimension mismatch");
  Slots slots = a.slots();
  slots.insert(slots.end(), b.slots().begin(), b.slots().end());
  BasicTensor<R> r(a.dim(), std::move(slots));
  std::size_t k = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[k++] = a[i] * b[j];
  }
  return r;
}

/// Contracts absolute slots s1 and s2, which must carry opposite variances.
template <class S>
BasicTensor<S> contract_slots(const BasicTensor<S>& t, int s1, int s2) {
  if (s1 < 0 || s2 < 0 || s1 >= t.rank() || s2 >= t.rank() || s1 == s2) {
    throw Error(ErrorCode::index_out_of_range, "contract: slot out of range");
  }
  if (t.slot(s1) == t.slot(s2)) throw Error(ErrorCode::variance_mismatch, "contract: same-variance contraction");
  if (s1 > s2) std::swap(s1, s2);
  Slots slots;
  for (int s = 0; s < t.rank(); ++s) {
    if (s != s1 && s != s2) slots.push_back(t.slot(s));
  }
  BasicTensor<S> r(t.dim(), slots);
  const std::size_t st = t.stride(s1) + t.stride(s2);
  std::vector<int> full(static_cast<std::size_t>(t.rank()), 0);
  for (std::size_t f = 0; f < r.size(); ++f) {
    const auto idx = r.multi_index(f);
    for (int s = 0, k = 0; s < t.rank(); ++s) {
      full[s] = (s == s1 || s == s2) ? 0 : idx[k++];
    }
    std::size_t base = t.flat_index(std::span<const int>(full));
    S acc{};
    for (int i = 0; i < t.dim(); ++i) acc += t[base + static_cast<std::size_t>(i) * st];
    r[f] = acc;
  }
  return r;
}

/// Contracts the upper_index-th contravariant slot with the lower_index-th
/// covariant slot (ordinals counted within each variance group).
template <class S>
BasicTensor<S> contract(const BasicTensor<S>& t, int upper_index, int lower_index) {
  int up = -1, down = -1;
  for (int s = 0, u = 0, d = 0; s < t.rank(); ++s) {
    if (t.slot(s) == Variance::up) {
      if (u++ == upper_index) up = s;
    } else {
      if (d++ == lower_index) down = s;
    }
  }
  if (up < 0 || down < 0) throw Error(ErrorCode::index_out_of_range, "contract: index out of range");
  return contract_slots(t, up, down);
}

/// Feeds `arg` (a vector for a covariant slot, a covector for a contravariant
/// one) into slot s, removing it.
template <class S, class A>
auto insert(const BasicTensor<S>& t, int s, const BasicTensor<A>& arg) {
  using R = decltype(std::declval<S>() * std::declval<A>());
  if (s < 0 || s >= t.rank()) throw Error(ErrorCode::index_out_of_range, "insert: slot out of range");
  if (arg.rank() != 1 || arg.slot(0) == t.slot(s)) {
    throw Error(ErrorCode::variance_mismatch, "insert: argument must pair with the slot variance");
  }
  Slots slots = t.slots();
  slots.erase(slots.begin() + s);
  BasicTensor<R> r(t.dim(), std::move(slots));
  const std::size_t st = t.stride(s);
  const std::size_t outer = st * static_cast<std::size_t>(t.dim());
  std::size_t f = 0;
  for (std::size_t hi = 0; hi < t.size(); hi += outer) {
    for (std::size_t lo = 0; lo < st; ++lo, ++f) {
      R acc{};
      for (int i = 0; i < t.dim(); ++i) acc += t[hi + lo + static_cast<std::size_t>(i) * st] * arg[static_cast<std::size_t>(i)];
      r[f] = acc;
    }
  }
  return r;
}

/// Feeds vectors into the leading covariant slots in order.
template <class S, class A>
auto apply(const BasicTensor<S>& t, std::initializer_list<BasicTensor<A>> args) {
  using R = decltype(std::declval<S>() * std::declval<A>());
  BasicTensor<R> r = t.map([](const S& x) -> R { return R(x); });
  for (const auto& a : args) r = insert(r, 0, a);
  return r;
}

/// Moves slot `from` to position `to`, shifting the others.
template <class S>
BasicTensor<S> move_slot(const BasicTensor<S>& t, int from, int to) {
  std::vector<int> perm(static_cast<std::size_t>(t.rank()));
  for (int i = 0; i < t.rank(); ++i) perm[i] = i;
  perm.erase(perm.begin() + from);
  perm.insert(perm.begin() + to, from);
  Slots slots;
  for (int p : perm) slots.push_back(t.slot(p));
  BasicTensor<S> r(t.dim(), slots);
  std::vector<int> src(perm.size());
  for (std::size_t f = 0; f < r.size(); ++f) {
    const auto idx = r.multi_index(f);
    for (std::size_t k = 0; k < perm.size(); ++k) src[perm[k]] = idx[k];
    r[f] = t.at(src);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Small dense linear algebra on row-major square matrices

namespace linalg {

/// In-place Cholesky factor (lower triangle).  Returns false if the matrix is
/// not positive definite.
inline bool cholesky(std::vector<double>& a, int n) {
  for (int j = 0; j < n; ++j) {
    double d = a[j * n + j];
    for (int k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
    if (!(d > 0.0)) return false;
    const double l = std::sqrt(d);
    a[j * n + j] = l;
    for (int i = j + 1; i < n; ++i) {
      double s = a[i * n + j];
      for (int k = 0; k < j; ++k) s -= a[i * n + k] * a[j * n + k];
      a[i * n + j] = s / l;
    }
    for (int i = 0; i < j; ++i) a[i * n + j] = 0.0;
  }
  return true;
}

/// Solves A x = b with Gaussian elimination and partial pivoting.
inline std::vector<double> solve(std::vector<double> a, std::vector<double> b, int n) {
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r) {
      if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c])) piv = r;
    }
    if (a[piv * n + c] == 0.0) throw Error(ErrorCode::degenerate_input, "solve: singular matrix");
    if (piv != c) {
      for (int k = 0; k < n; ++k) std::swap(a[c * n + k], a[piv * n + k]);
      std::swap(b[c], b[piv]);
    }
    for (int r = c + 1; r < n; ++r) {
      const double f = a[r * n + c] / a[c * n + c];
      for (int k = c; k < n; ++k) a[r * n + k] -= f * a[c * n + k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int k = r + 1; k < n; ++k) s -= a[r * n + k] * x[k];
    x[r] = s / a[r * n + r];
  }
  return x;
}

inline std::vector<double> inverse(const std::vector<double>& a, int n) {
  std::vector<double> inv(static_cast<std::size_t>(n * n));
  for (int c = 0; c < n; ++c) {
    std::vector<double> e(n, 0.0);
    e[c] = 1.0;
    auto x = solve(a, e, n);
    for (int r = 0; r < n; ++r) inv[r * n + c] = x[r];
  }
  return inv;
}

}  // namespace linalg

// ---------------------------------------------------------------------------
// Metric at a point

class MetricAtPoint {
 public:
  /// g must be a symmetric positive-definite (0,2) tensor.
  explicit MetricAtPoint(TensorValue g) : g_(std::move(g)) {
    if (g_.slots() != Slots{Variance::down, Variance::down}) {
      throw Error(ErrorCode::variance_mismatch, "metric: expected a (0,2) tensor");
    }
    const int n = g_.dim();
    double scale = 0.0;
    for (double x : g_.components()) scale = std::max(scale, std::abs(x));
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (std::abs(g_(i, j) - g_(j, i)) > 1e-12 * scale) {
          throw Error(ErrorCode::not_positive_definite, "metric: not symmetric");
        }
      }
    }
    std::vector<double> a(g_.components().begin(), g_.components().end());
    if (!linalg::cholesky(a, n)) throw Error(ErrorCode::not_positive_definite, "metric: not positive definite");
    auto inv = linalg::inverse(std::vector<double>(g_.components().begin(), g_.components().end()), n);
    g_inv_ = TensorValue(n, {Variance::up, Variance::up}, std::move(inv));
  }

  int dim() const { return g_.dim(); }
  const TensorValue& g() const { return g_; }
  const TensorValue& g_inv() const { return g_inv_; }

  double operator()(const TensorValue& x, const TensorValue& y) const {
    double s = 0.0;
    for (int i = 0; i < dim(); ++i) {
      for (int j = 0; j < dim(); ++j) s += g_(i, j) * x(i) * y(j);
    }
    return s;
  }
  double norm(const TensorValue& x) const { return std::sqrt((*this)(x, x)); }
  TensorValue lower(const TensorValue& x) const { return insert(g_, 0, x); }
  TensorValue raise(const TensorValue& w) const { return insert(g_inv_, 0, w); }

 private:
  TensorValue g_;
  TensorValue g_inv_;
};

enum class Direction { up, down };

/// Raises or lowers slot `slot` in place: the slot keeps its position and
/// flips its variance.
inline TensorValue raise_lower(const TensorValue& t, int slot, const MetricAtPoint& metric, Direction direction) {
  if (slot < 0 || slot >= t.rank()) throw Error(ErrorCode::index_out_of_range, "raise_lower: slot out of range");
  const Variance target = direction == Direction::up ? Variance::up : Variance::down;
  if (t.slot(slot) == target) throw Error(ErrorCode::variance_mismatch, "raise_lower: slot already has that variance");
  if (t.dim() != metric.dim()) throw Error(ErrorCode::invalid_argument, "raise_lower: dimension mismatch");
  const TensorValue& m = direction == Direction::up ? metric.g_inv() : metric.g();
  Slots slots = t.slots();
  slots[slot] = target;
  TensorValue r(t.dim(), slots);
  const std::size_t st = t.stride(slot);
  for (std::size_t f = 0; f < r.size(); ++f) {
    const int a = static_cast<int>((f / st) % static_cast<std::size_t>(t.dim()));
    const std::size_t base = f - static_cast<std::size_t>(a) * st;
    double acc = 0.0;
    for (int b = 0; b < t.dim(); ++b) acc += m(a, b) * t[base + static_cast<std::size_t>(b) * st];
    r[f] = acc;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Orthonormal frames

struct OrthonormalFrame {
  std::vector<TensorValue> vectors;

  int dim() const { return static_cast<int>(vectors.size()); }
  const TensorValue& operator[](int i) const { return vectors[static_cast<std::size_t>(i)]; }
};

/// Gram determinant of the g-normalized vectors.
inline double normalized_gram_determinant(std::span<const TensorValue> vectors, const MetricAtPoint& metric) {
  const int k = static_cast<int>(vectors.size());
  std::vector<double> gram(static_cast<std::size_t>(k * k));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      gram[i * k + j] = metric(vectors[i], vectors[j]) / (metric.norm(vectors[i]) * metric.norm(vectors[j]));
    }
  }
  if (!linalg::cholesky(gram, k)) return 0.0;
  double det = 1.0;
  for (int i = 0; i < k; ++i) det *= gram[i * k + i] * gram[i * k + i];
  return det;
}

/// Modified Gram-Schmidt.  The first input vector keeps its direction.
inline OrthonormalFrame gram_schmidt(std::span<const TensorValue> vectors, const MetricAtPoint& metric) {
  if (static_cast<int>(vectors.size()) != metric.dim()) {
    throw Error(ErrorCode::degenerate_input, "gram_schmidt: need exactly dim vectors");
  }
  for (const auto& v : vectors) {
    if (v.slots() != Slots{Variance::up}) throw Error(ErrorCode::variance_mismatch, "gram_schmidt: expected vectors");
    if (!(metric.norm(v) > 0.0)) throw Error(ErrorCode::degenerate_input, "gram_schmidt: zero vector");
  }
  if (!(normalized_gram_determinant(vectors, metric) > 1e-10)) {
    throw Error(ErrorCode::degenerate_input, "gram_schmidt: vectors are linearly dependent");
  }
  OrthonormalFrame frame;
  for (const auto& v : vectors) {
    TensorValue u = v;
    for (const auto& e : frame.vectors) u -= e * metric(e, u);
    for (const auto& e : frame.vectors) u -= e * metric(e, u);  // second pass
    frame.vectors.push_back(u * (1.0 / metric.norm(u)));
  }
  return frame;
}

/// Orthonormal frame from the coordinate basis, optionally with `pinned`
/// (normalized) as its first element.  Coordinate vectors that become nearly
/// dependent on the ones already chosen are skipped.
inline OrthonormalFrame coordinate_frame(const MetricAtPoint& metric, const TensorValue* pinned = nullptr) {
  const int n = metric.dim();
  std::vector<TensorValue> chosen;
  if (pinned) chosen.push_back(*pinned);
  std::vector<TensorValue> candidates;
  for (int i = 0; i < n; ++i) candidates.push_back(coordinate_vector(n, i));
  // Prefer the coordinate directions least aligned with the pinned vector.
  if (pinned) {
    const double pn = metric.norm(*pinned);
    std::stable_sort(candidates.begin(), candidates.end(), [&](const TensorValue& a, const TensorValue& b) {
      return std::abs(metric(a, *pinned)) / metric.norm(a) / pn < std::abs(metric(b, *pinned)) / metric.norm(b) / pn;
    });
    candidates.pop_back();
  }
  chosen.insert(chosen.end(), candidates.begin(), candidates.end());
  return gram_schmidt(chosen, metric);
}

/// Components of t in an orthonormal frame: covariant slots are fed frame
/// vectors, contravariant slots the dual covectors g(e_i, .).
inline TensorValue frame_components(const TensorValue& t, const OrthonormalFrame& frame, const MetricAtPoint& metric) {
  const int n = t.dim();
  std::vector<double> e(static_cast<std::size_t>(n * n)), dual(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) {
    const auto low = metric.lower(frame[i]);
    for (int a = 0; a < n; ++a) {
      e[i * n + a] = frame[i](a);
      dual[i * n + a] = low(a);
    }
  }
  TensorValue r = t;
  for (int s = 0; s < t.rank(); ++s) {
    const auto& m = t.slot(s) == Variance::down ? e : dual;
    TensorValue next(n, r.slots());
    const std::size_t st = r.stride(s);
    for (std::size_t f = 0; f < r.size(); ++f) {
      const int i = static_cast<int>((f / st) % static_cast<std::size_t>(n));
      const std::size_t base = f - static_cast<std::size_t>(i) * st;
      double acc = 0.0;
      for (int a = 0; a < n; ++a) acc += m[i * n + a] * r[base + static_cast<std::size_t>(a) * st];
      next[f] = acc;
    }
    r = std::move(next);
  }
  return r;
}

/// Maximum absolute component in an orthonormal frame.
inline double frame_norm(const TensorValue& t, const OrthonormalFrame& frame, const MetricAtPoint& metric) {
  return max_abs(frame_components(t, frame, metric));
}

}  // namespace sasaki
