#pragma once

// Sample plans, the portable generator behind them, and residual reports.
//
// The generator is SplitMix64 (Steele, Lea, Flood 2014): a 64-bit counter
// advanced by 0x9E3779B97F4A7C15 and passed through a fixed mixing function.
// Each point k draws from its own stream seeded by mix(seed ^ mix(k)), so a
// sample does not depend on how many values earlier points consumed.
// Normals come from Box-Muller on 53-bit uniforms.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "sasaki/chart.hpp"
#include "sasaki/tensor.hpp"

namespace sasaki {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }
  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) { return SplitMix64(mix(seed ^ mix(index + 1))); }

 private:
  std::uint64_t state_;
};

struct SamplePlan {
  int point_count = 20;
  std::uint64_t seed = 42;
  int vectors_per_point = 4;
  /// Suite name -> tolerance override applied to every identity of the suite.
  std::map<std::string, double> tolerances;
  DerivativeConfig fd;

  double tolerance(const std::string& suite, double fallback) const {
    auto it = tolerances.find(suite);
    return it == tolerances.end() ? fallback : it->second;
  }
};

/// Random tuples of tangent vectors at one sample point.
struct SamplePoint {
  Point point;
  /// vectors[t][k]: k-th vector of tuple t; standard normal coordinates,
  /// not yet normalized.
  std::vector<std::vector<TensorValue>> tuples;
};

inline constexpr int kVectorsPerTuple = 4;

/// Sample points uniform in the chart box, kept away from the boundary by
/// 5% of each side plus the third-order stencil margin.
inline std::vector<SamplePoint> sample_points(const ChartManifold& m, const SamplePlan& plan) {
  const int d = m.dim();
  const double margin = m.stencil_margin(3, false);
  std::vector<SamplePoint> out;
  out.reserve(static_cast<std::size_t>(plan.point_count));
  for (int k = 0; k < plan.point_count; ++k) {
    auto rng = SplitMix64::stream(plan.seed, static_cast<std::uint64_t>(k));
    SamplePoint s;
    s.point.resize(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
      const double lo = m.domain().lower[i], hi = m.domain().upper[i];
      const double pad = 0.05 * (hi - lo) + margin;
      s.point[i] = lo + pad + (hi - lo - 2.0 * pad) * rng.uniform();
    }
    for (int t = 0; t < plan.vectors_per_point; ++t) {
      std::vector<TensorValue> tuple;
      for (int v = 0; v < kVectorsPerTuple; ++v) {
        std::vector<double> c(static_cast<std::size_t>(d));
        for (auto& x : c) x = rng.normal();
        tuple.push_back(make_vector(std::move(c)));
      }
      s.tuples.push_back(std::move(tuple));
    }
    out.push_back(std::move(s));
  }
  return out;
}

/// Compact "%.6g" rendering for notes and model names.
inline std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

inline TensorValue normalized(const TensorValue& v, const MetricAtPoint& g) { return v * (1.0 / g.norm(v)); }

enum class PremiseStatus { not_applicable, passed, violated };

inline const char* to_string(PremiseStatus s) {
  switch (s) {
    case PremiseStatus::passed: return "passed";
    case PremiseStatus::violated: return "violated";
    default: return "n/a";
  }
}

struct ResidualReport {
  std::string suite;
  std::string identity;
  std::string anchor;  // the identity in formula form
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  Point worst_point;
  PremiseStatus premise = PremiseStatus::not_applicable;
  /// Skipped reports are informational: they never fail a run.
  bool skipped = false;
  std::string note;
};

/// Max-reduction over samples; the first point attaining the maximum wins,
/// so the result is independent of evaluation order for a fixed sample list.
class ResidualAccumulator {
 public:
  void add(double r, const Point& p) {
    if (std::isnan(r)) r = std::numeric_limits<double>::infinity();
    if (!seen_ || r > max_) {
      max_ = r;
      worst_ = p;
      seen_ = true;
    }
  }
  void merge(const ResidualAccumulator& o) {
    if (o.seen_) add(o.max_, o.worst_);
  }
  double max() const { return max_; }
  const Point& worst() const { return worst_; }

  ResidualReport report(std::string suite, std::string identity, std::string anchor, double tolerance,
                        PremiseStatus premise = PremiseStatus::not_applicable) const {
    ResidualReport r;
    r.suite = std::move(suite);
    r.identity = std::move(identity);
    r.anchor = std::move(anchor);
    r.max_residual = max_;
    r.tolerance = tolerance;
    r.worst_point = worst_;
    r.premise = premise;
    r.pass = max_ <= tolerance && premise != PremiseStatus::violated;
    r.skipped = premise == PremiseStatus::violated;
    return r;
  }

 private:
  double max_ = 0.0;
  Point worst_;
  bool seen_ = false;
};

inline PremiseStatus premise_from(double residual, double tolerance) {
  return residual <= tolerance ? PremiseStatus::passed : PremiseStatus::violated;
}

}  // namespace sasaki
