#pragma once

// Truncated multivariate Taylor arithmetic.
//
// A Jet of order K in d variables stores the Taylor coefficients
// f_alpha = (d^alpha f)(p) / alpha! for every multi-index |alpha| <= K.
// Arithmetic on jets is exact up to truncation, so a metric written once as a
// template over its scalar type yields derivatives up to third order at
// machine precision.  Monomials are ordered by degree, and within a degree the
// ordering does not depend on K, so the layout of order k is a prefix of the
// layout of any order K > k.

#include <array>
#include <cmath>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

namespace sasaki {

inline constexpr int kMaxJetDim = 7;
inline constexpr int kMaxJetOrder = 3;
inline constexpr int kMaxMonomials = 120;  // C(7 + 3, 3)

class JetLayout {
 public:
  struct Product {
    std::uint16_t lhs, rhs, out;
  };

  static const JetLayout& get(int dim, int order) {
    if (dim < 1 || dim > kMaxJetDim || order < 0 || order > kMaxJetOrder) {
      throw std::invalid_argument("jet layout: dimension or order out of range");
    }
    static const auto table = [] {
      std::vector<std::unique_ptr<JetLayout>> t;
      for (int d = 1; d <= kMaxJetDim; ++d) {
        for (int k = 0; k <= kMaxJetOrder; ++k) t.emplace_back(new JetLayout(d, k));
      }
      return t;
    }();
    return *table[(dim - 1) * (kMaxJetOrder + 1) + order];
  }

  int dim() const { return dim_; }
  int order() const { return order_; }
  int size() const { return static_cast<int>(degree_.size()); }
  int degree(int m) const { return degree_[m]; }
  std::span<const std::uint8_t> exponents(int m) const {
    return {exps_.data() + m * dim_, static_cast<std::size_t>(dim_)};
  }

  /// Index of the monomial with the given exponents, or -1 if its degree
  /// exceeds the layout order.
  int index_of(std::span<const std::uint8_t> e) const {
    int deg = 0;
    for (auto v : e) deg += v;
    if (deg > order_) return -1;
    for (int m = first_of_degree_[deg]; m < first_of_degree_[deg + 1]; ++m) {
      bool same = true;
      for (int v = 0; v < dim_; ++v) same = same && exps_[m * dim_ + v] == e[v];
      if (same) return m;
    }
    return -1;
  }

  std::span<const Product> products() const { return products_; }

  /// For the derivative along `var`: entry m (a monomial of the order-1
  /// layout) gives the source monomial in this layout and the factor.
  std::span<const std::pair<int, double>> derivative_map(int var) const {
    return deriv_[var];
  }

  /// alpha! for monomial m.
  double factorial(int m) const { return factorial_[m]; }

  int first_of_degree(int deg) const { return first_of_degree_[deg]; }

 private:
  JetLayout(int dim, int order) : dim_(dim), order_(order) {
    std::vector<std::uint8_t> e(dim, 0);
    first_of_degree_.assign(order + 2, 0);
    for (int deg = 0; deg <= order; ++deg) {
      first_of_degree_[deg] = size();
      enumerate(e, 0, deg);
    }
    first_of_degree_[order + 1] = size();

    for (int m = 0; m < size(); ++m) {
      double f = 1.0;
      for (auto v : exponents(m)) {
        for (int i = 2; i <= v; ++i) f *= i;
      }
      factorial_.push_back(f);
    }

    std::vector<std::uint8_t> sum(dim);
    for (int a = 0; a < size(); ++a) {
      for (int b = 0; b < size(); ++b) {
        if (degree_[a] + degree_[b] > order) continue;
        for (int v = 0; v < dim; ++v) sum[v] = exps_[a * dim + v] + exps_[b * dim + v];
        products_.push_back({static_cast<std::uint16_t>(a), static_cast<std::uint16_t>(b),
                             static_cast<std::uint16_t>(index_of(sum))});
      }
    }

    deriv_.resize(dim);
    if (order > 0) {
      const int lower = first_of_degree_[order];  // size of the order-1 layout
      for (int var = 0; var < dim; ++var) {
        for (int m = 0; m < lower; ++m) {
          std::vector<std::uint8_t> up(exponents(m).begin(), exponents(m).end());
          up[var] += 1;
          deriv_[var].emplace_back(index_of(up), static_cast<double>(up[var]));
        }
      }
    }
  }

  // Degree-`remaining` monomials over variables [var, dim), lexicographic.
  void enumerate(std::vector<std::uint8_t>& e, int var, int remaining) {
    if (var == dim_ - 1) {
      e[var] = static_cast<std::uint8_t>(remaining);
      exps_.insert(exps_.end(), e.begin(), e.end());
      int deg = 0;
      for (auto v : e) deg += v;
      degree_.push_back(deg);
      e[var] = 0;
      return;
    }
    for (int k = remaining; k >= 0; --k) {
      e[var] = static_cast<std::uint8_t>(k);
      enumerate(e, var + 1, remaining - k);
    }
    e[var] = 0;
  }

  int dim_;
  int order_;
  std::vector<std::uint8_t> exps_;
  std::vector<int> degree_;
  std::vector<int> first_of_degree_;
  std::vector<double> factorial_;
  std::vector<Product> products_;
  std::vector<std::vector<std::pair<int, double>>> deriv_;
};

/// Truncated Taylor polynomial.  A jet without a layout is a plain constant
/// and adapts to the layout of whatever it is combined with.
class Jet {
 public:
  Jet() = default;
  Jet(double v) { c_[0] = v; }  // NOLINT(google-explicit-constructor)

  static Jet constant(const JetLayout& layout, double v) {
    Jet j(v);
    j.layout_ = &layout;
    return j;
  }

  /// The coordinate function x_var around a point whose coordinate is `value`.
  static Jet variable(const JetLayout& layout, int var, double value) {
    Jet j = constant(layout, value);
    if (layout.order() >= 1) j.c_[1 + var] = 1.0;
    return j;
  }

  /// Coordinate jets for every variable at point p.
  static std::vector<Jet> variables(std::span<const double> p, int order) {
    const auto& layout = JetLayout::get(static_cast<int>(p.size()), order);
    std::vector<Jet> out;
    out.reserve(p.size());
    for (std::size_t v = 0; v < p.size(); ++v) out.push_back(variable(layout, static_cast<int>(v), p[v]));
    return out;
  }

  const JetLayout* layout() const { return layout_; }
  bool is_constant() const { return layout_ == nullptr; }
  /// Constants are exact to every order.
  int order() const { return layout_ ? layout_->order() : kMaxJetOrder; }
  double value() const { return c_[0]; }
  double coefficient(int m) const { return c_[m]; }
  double& coefficient(int m) { return c_[m]; }
  int size() const { return layout_ ? layout_->size() : 1; }

  /// Mixed partial derivative d^alpha f at the expansion point.
  double partial(std::span<const std::uint8_t> alpha) const {
    if (!layout_) {
      for (auto a : alpha) {
        if (a) return 0.0;
      }
      return c_[0];
    }
    const int m = layout_->index_of(alpha);
    if (m < 0) throw std::out_of_range("jet: derivative order exceeds jet order");
    return c_[m] * layout_->factorial(m);
  }

  Jet derivative(int var) const {
    if (!layout_) return Jet(0.0);
    if (layout_->order() == 0) throw std::domain_error("jet: cannot differentiate an order-0 jet");
    const auto& lower = JetLayout::get(layout_->dim(), layout_->order() - 1);
    Jet d;
    d.layout_ = &lower;
    auto map = layout_->derivative_map(var);
    for (int m = 0; m < lower.size(); ++m) d.c_[m] = map[m].second * c_[map[m].first];
    return d;
  }

  Jet truncated(int order) const {
    if (!layout_ || order >= layout_->order()) return *this;
    Jet t;
    t.layout_ = &JetLayout::get(layout_->dim(), order);
    for (int m = 0; m < t.size(); ++m) t.c_[m] = c_[m];
    return t;
  }

  Jet& operator+=(const Jet& o) {
    adopt(o);
    for (int m = 0, s = std::min(size(), o.size()); m < s; ++m) c_[m] += o.c_[m];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    adopt(o);
    for (int m = 0, s = std::min(size(), o.size()); m < s; ++m) c_[m] -= o.c_[m];
    return *this;
  }
  Jet& operator*=(double s) {
    for (int m = 0; m < size(); ++m) c_[m] *= s;
    return *this;
  }
  Jet& operator*=(const Jet& o) {
    *this = *this * o;
    return *this;
  }
  Jet& operator/=(const Jet& o) {
    *this = *this / o;
    return *this;
  }

  Jet operator-() const {
    Jet r = *this;
    for (int m = 0; m < size(); ++m) r.c_[m] = -r.c_[m];
    return r;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator/(Jet a, double s) { return a *= 1.0 / s; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    if (!a.layout_) return b * a.c_[0];
    if (!b.layout_) return a * b.c_[0];
    const JetLayout* layout = a.layout_->order() <= b.layout_->order() ? a.layout_ : b.layout_;
    check_dims(a, b);
    Jet r;
    r.layout_ = layout;
    for (const auto& p : layout->products()) r.c_[p.out] += a.c_[p.lhs] * b.c_[p.rhs];
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

  /// f(u) for a scalar function given its derivatives at u.value():
  /// derivs[k] = f^(k)(u0), k = 0..order.
  static Jet compose(const Jet& u, std::span<const double> derivs) {
    Jet r(derivs[0]);
    if (!u.layout_) return r;
    r.layout_ = u.layout_;
    Jet x = u;
    x.c_[0] = 0.0;  // nilpotent part
    Jet power = x;
    double fact = 1.0;
    for (int k = 1; k <= u.layout_->order(); ++k) {
      fact *= k;
      for (int m = 0; m < r.size(); ++m) r.c_[m] += derivs[k] / fact * power.c_[m];
      if (k < u.layout_->order()) power = power * x;
    }
    return r;
  }

  friend Jet reciprocal(const Jet& u) {
    const double v = u.c_[0];
    if (v == 0.0) throw std::domain_error("jet: reciprocal of zero");
    const double d[] = {1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v), -6.0 / (v * v * v * v)};
    return compose(u, d);
  }

  friend Jet sqrt(const Jet& u) {
    const double v = u.c_[0];
    if (v <= 0.0) throw std::domain_error("jet: sqrt of non-positive value");
    const double s = std::sqrt(v);
    const double d[] = {s, 0.5 / s, -0.25 / (s * v), 0.375 / (s * v * v)};
    return compose(u, d);
  }

 private:
  static void check_dims(const Jet& a, const Jet& b) {
    if (a.layout_->dim() != b.layout_->dim()) throw std::invalid_argument("jet: dimension mismatch");
  }

  // Combine layouts for addition: the result keeps the lower order.
  void adopt(const Jet& o) {
    if (!o.layout_) return;
    if (!layout_) {
      layout_ = o.layout_;
      return;
    }
    check_dims(*this, o);
    if (o.layout_->order() < layout_->order()) {
      const int keep = o.layout_->size();
      for (int m = keep; m < size(); ++m) c_[m] = 0.0;
      layout_ = o.layout_;
    }
  }

  const JetLayout* layout_ = nullptr;
  std::array<double, kMaxMonomials> c_{};
};

inline double value_of(double x) { return x; }
inline double value_of(const Jet& x) { return x.value(); }

}  // namespace sasaki
