#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "minkgeo/conics.hpp"
#include "minkgeo/core.hpp"
#include "minkgeo/planar.hpp"
#include "minkgeo/rng.hpp"

namespace minkgeo {

/// Monte-Carlo sampling plan. Trials are addressed by absolute index in
/// [first_trial, first_trial + count), so disjoint batches with the same seed
/// reproduce exactly the draws of one sequential run.
struct SampleConfig {
  std::uint64_t seed = 0;
  std::size_t count = 1;
  double box_half_width = 10.0;
  std::size_t dimension = 2;
  std::uint64_t first_trial = 0;
};

/// Outcome of one property check. `max_violation` is in the property's
/// natural (usually relative) units and `passed` iff it is within
/// `tolerance`; `witness` holds the points of the worst offending sample and
/// is empty when nothing exceeded the tolerance. Witness searches
/// (find_triangle_violation) invert the reading: there `passed` means a
/// genuine violation was produced.
struct PropertyReport {
  std::string property;
  std::size_t trials = 0;
  double max_violation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::vector<Point> witness;
};

namespace detail {

constexpr double kAxiomTol = 1e-9;
constexpr double kAlgebraTol = 1e-12;
constexpr double kRatioTol = 1e-10;
constexpr double kMembershipTol = 1e-9;

inline void check_config(const SampleConfig& cfg) {
  if (cfg.count < 1) throw std::invalid_argument("SampleConfig: count must be >= 1");
  if (!(cfg.box_half_width > 0.0))
    throw std::invalid_argument("SampleConfig: box_half_width must be positive");
  if (cfg.dimension < 2) throw std::invalid_argument("SampleConfig: dimension must be >= 2");
}

inline Point sample_point(const CounterRng& rng, std::uint64_t trial, std::uint64_t slot0,
                          std::size_t dim, double w) {
  std::vector<double> c(dim);
  for (std::size_t j = 0; j < dim; ++j)
    c[j] = rng.uniform(trial, slot0 + static_cast<std::uint64_t>(j), -w, w);
  return Point(std::move(c));
}

struct ViolationTracker {
  double worst = 0.0;
  std::vector<Point> witness;

  void offer(double violation, std::initializer_list<Point> points, double tolerance) {
    if (violation > worst) {
      worst = violation;
      if (violation > tolerance) witness.assign(points);
    }
  }
};

}  // namespace detail

/// The three metric axioms on random triples from [-w, w]^n: identity
/// (d(x,x) = 0 and d(x,y) > 0 for x != y), symmetry (exact), and the
/// triangle inequality with relative tolerance 1e-9. Returns one report per
/// axiom, in (M1, M2, M3) order.
inline std::array<PropertyReport, 3> check_metric_axioms_detailed(const MetricSpec& spec,
                                                                  const SampleConfig& cfg) {
  detail::check_config(cfg);
  if (!spec.is_metric())
    throw NotAMetric("check_metric_axioms: exponent below 1 does not give a metric");
  if (cfg.dimension != spec.dimension())
    throw DimensionMismatch("check_metric_axioms: config dimension differs from spec");
  const std::size_t n = spec.dimension();
  const CounterRng rng(cfg.seed);
  detail::ViolationTracker m1, m2, m3;
  for (std::uint64_t t = cfg.first_trial; t < cfg.first_trial + cfg.count; ++t) {
    const Point x = detail::sample_point(rng, t, 0, n, cfg.box_half_width);
    const Point y = detail::sample_point(rng, t, n, n, cfg.box_half_width);
    const Point z = detail::sample_point(rng, t, 2 * n, n, cfg.box_half_width);
    const double dxy = distance(spec, x, y);
    const double dyx = distance(spec, y, x);
    const double dxz = distance(spec, x, z);
    const double dzy = distance(spec, z, y);
    // M1: d(x,x) is exactly zero by construction; positivity needs x != y.
    const double self = distance(spec, x, x);
    m1.offer(self, {x, x}, detail::kAxiomTol);
    if (!(x == y) && !(dxy > 0.0)) m1.offer(1.0, {x, y}, detail::kAxiomTol);
    // M2: both orders evaluate the same absolute values, so exact equality.
    m2.offer(std::abs(dxy - dyx) / std::max(dxy, 1e-300), {x, y}, detail::kAxiomTol);
    // M3: relative excess over the two-leg path.
    const double scale = std::max(dxy, dxz + dzy);
    if (scale > 0.0)
      m3.offer((dxy - dxz - dzy) / scale, {x, y, z}, detail::kAxiomTol);
  }
  auto finish = [&](const char* name, detail::ViolationTracker& tr) {
    return PropertyReport{name,       cfg.count,
                          tr.worst,   detail::kAxiomTol,
                          tr.worst <= detail::kAxiomTol,
                          std::move(tr.witness)};
  };
  return {finish("M1-identity", m1), finish("M2-symmetry", m2), finish("M3-triangle", m3)};
}

/// Combined axiom check: worst violation across M1/M2/M3.
inline PropertyReport check_metric_axioms(const MetricSpec& spec, const SampleConfig& cfg) {
  auto reports = check_metric_axioms_detailed(spec, cfg);
  PropertyReport out{"metric-axioms", cfg.count, 0.0, detail::kAxiomTol, true, {}};
  for (auto& r : reports) {
    if (r.max_violation > out.max_violation) {
      out.max_violation = r.max_violation;
      out.witness = std::move(r.witness);
    }
    out.passed = out.passed && r.passed;
  }
  return out;
}

/// Search for a triangle-inequality violation when 0 < p < 1. Tries the
/// deterministic family x = 0, z = (t,0,...), y = (t,t,0,...) first (that
/// family violates the inequality for the identity frame at any p < 1),
/// then random triples. `passed` means a witness was found; the report
/// carries the first one together with its absolute excess.
inline PropertyReport find_triangle_violation(const MetricSpec& spec, const SampleConfig& cfg) {
  detail::check_config(cfg);
  if (spec.is_metric())
    throw std::invalid_argument("find_triangle_violation requires 0 < exponent < 1");
  if (cfg.dimension != spec.dimension())
    throw DimensionMismatch("find_triangle_violation: config dimension differs from spec");
  const std::size_t n = spec.dimension();
  PropertyReport out{"triangle-violation-witness", 0, 0.0, detail::kAxiomTol, false, {}};
  auto try_triple = [&](const Point& x, const Point& y, const Point& z) {
    ++out.trials;
    const double excess = distance(spec, x, y) - distance(spec, x, z) - distance(spec, z, y);
    if (excess > detail::kAxiomTol) {
      out.max_violation = excess;
      out.passed = true;
      out.witness = {x, y, z};
      return true;
    }
    return false;
  };
  for (double t : {1.0, 0.5, 2.0, 0.1, 10.0}) {
    std::vector<double> xc(n, 0.0), zc(n, 0.0), yc(n, 0.0);
    zc[0] = t;
    yc[0] = t;
    yc[1] = t;
    if (try_triple(Point(xc), Point(yc), Point(zc))) return out;
  }
  const CounterRng rng(cfg.seed);
  for (std::uint64_t t = cfg.first_trial; t < cfg.first_trial + cfg.count; ++t) {
    const Point x = detail::sample_point(rng, t, 0, n, cfg.box_half_width);
    const Point y = detail::sample_point(rng, t, n, n, cfg.box_half_width);
    const Point z = detail::sample_point(rng, t, 2 * n, n, cfg.box_half_width);
    if (try_triple(x, y, z)) return out;
  }
  return out;  // no witness found: passed stays false, witness empty
}

/// Sandwich bound sigma <= d_p <= sigma n^(1/p) along an increasing exponent
/// schedule, monotone decrease of d_p, and the final gap to the maximum
/// metric within sigma (n^(1/p_max) - 1). Violations are normalized by sigma.
inline PropertyReport check_p_limit(const Frame& frame, const std::vector<double>& weights,
                                    const Point& x, const Point& y,
                                    const std::vector<double>& schedule) {
  if (schedule.empty()) throw std::invalid_argument("check_p_limit: empty schedule");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (!(schedule[i] >= 1.0)) throw std::invalid_argument("check_p_limit: exponents must be >= 1");
    if (i > 0 && !(schedule[i] > schedule[i - 1]))
      throw std::invalid_argument("check_p_limit: schedule must be increasing");
  }
  const std::size_t n = frame.dimension();
  const MetricSpec max_spec(frame, weights, kInf);
  const double sigma = distance(max_spec, x, y);
  PropertyReport out{"p-limit-sandwich", schedule.size(), 0.0, detail::kAlgebraTol, true, {}};
  if (sigma == 0.0) return out;  // x == y: every distance is exactly zero
  double prev = kInf;
  for (double p : schedule) {
    const double dp = distance(MetricSpec(frame, weights, p), x, y);
    const double upper = sigma * std::pow(static_cast<double>(n), 1.0 / p);
    const double viol =
        std::max({(sigma - dp) / sigma, (dp - upper) / sigma, (dp - prev) / sigma});
    out.max_violation = std::max(out.max_violation, viol);
    prev = dp;
  }
  const double residual_bound =
      sigma * (std::pow(static_cast<double>(n), 1.0 / schedule.back()) - 1.0);
  out.max_violation = std::max(out.max_violation, (prev - sigma - residual_bound) / sigma);
  out.passed = out.max_violation <= out.tolerance;
  if (!out.passed) out.witness = {x, y};
  return out;
}

namespace detail {

inline PropertyReport membership_report(const char* name, std::size_t trials) {
  return PropertyReport{name, trials, 0.0, kMembershipTol, true, {}};
}

inline void offer_membership(PropertyReport& rep, const BallSpec& spec, const MetricSpec& m,
                             Vec2 sample) {
  const double d = distance(m, to_point(spec.center()), to_point(sample));
  const double viol = std::abs(d - spec.radius()) / spec.radius();
  if (viol > rep.max_violation) {
    rep.max_violation = viol;
    if (viol > rep.tolerance) rep.witness = {to_point(sample)};
  }
}

}  // namespace detail

/// Membership of a sampled Polyline: every stored point must sit on the
/// level set within 1e-9 r (the segments between samples are not on the
/// curve for general p, so only the stored points are checked).
inline PropertyReport check_ball_membership(const BallSpec& spec, const Polyline& boundary) {
  PropertyReport rep = detail::membership_report("polyline-membership", boundary.points.size());
  const MetricSpec m = spec.as_metric_spec();
  for (const Vec2& q : boundary.points) detail::offer_membership(rep, spec, m, q);
  rep.passed = rep.max_violation <= rep.tolerance;
  return rep;
}

/// Membership of a Parallelogram4: all vertices plus `samples` random
/// points interpolated along the edges (edges of the p = 1 and p = infinity
/// balls lie exactly on the level set).
inline PropertyReport check_ball_membership(const BallSpec& spec, const Parallelogram4& boundary,
                                            std::size_t samples, std::uint64_t seed) {
  PropertyReport rep = detail::membership_report("parallelogram-membership", samples + 4);
  const MetricSpec m = spec.as_metric_spec();
  for (const Vec2& v : boundary.vertices) detail::offer_membership(rep, spec, m, v);
  const CounterRng rng(seed);
  for (std::uint64_t t = 0; t < samples; ++t) {
    const std::size_t k = static_cast<std::size_t>(rng.below(t, 0, 4));
    const double s = rng.uniform01(t, 1);
    const Vec2 a = boundary.vertices[k];
    const Vec2 b = boundary.vertices[(k + 1) % 4];
    detail::offer_membership(rep, spec, m, a + s * (b - a));
  }
  rep.passed = rep.max_violation <= rep.tolerance;
  return rep;
}

/// Membership of an ellipse boundary via random parametric samples.
inline PropertyReport check_ball_membership(const BallSpec& spec, const EllipseParams& boundary,
                                            std::size_t samples, std::uint64_t seed) {
  PropertyReport rep = detail::membership_report("ellipse-membership", samples);
  const MetricSpec m = spec.as_metric_spec();
  const CounterRng rng(seed);
  for (std::uint64_t t = 0; t < samples; ++t)
    detail::offer_membership(rep, spec, m, boundary.point_at(rng.uniform(t, 0, 0.0, 2.0 * std::numbers::pi)));
  rep.passed = rep.max_violation <= rep.tolerance;
  return rep;
}

/// Translation invariance (tolerance 1e-12) and collinear ratio preservation
/// (tolerance 1e-10) on random samples. The two sub-violations are each
/// normalized by their own tolerance, so the report's tolerance is 1.
inline PropertyReport check_invariance(const MetricSpec& spec, const SampleConfig& cfg) {
  detail::check_config(cfg);
  if (cfg.dimension != spec.dimension())
    throw DimensionMismatch("check_invariance: config dimension differs from spec");
  const std::size_t n = spec.dimension();
  const double w = cfg.box_half_width;
  const CounterRng rng(cfg.seed);
  PropertyReport out{"invariance", cfg.count, 0.0, 1.0, true, {}};
  for (std::uint64_t t = cfg.first_trial; t < cfg.first_trial + cfg.count; ++t) {
    const Point x = detail::sample_point(rng, t, 0, n, w);
    const Point y = detail::sample_point(rng, t, n, n, w);
    const Point shift = detail::sample_point(rng, t, 2 * n, n, w);
    const double d = distance(spec, x, y);
    const double dt = distance(spec, translate(x, shift), translate(y, shift));
    const double trans_viol = std::abs(dt - d) / std::max(d, 1e-300);
    if (trans_viol / detail::kAlgebraTol > out.max_violation) {
      out.max_violation = trans_viol / detail::kAlgebraTol;
      if (out.max_violation > 1.0) out.witness = {x, y, shift};
    }
    // Collinear quadruple x + s_k u: generalized ratios must match the
    // Euclidean ratios |s1 - s2| : |s4 - s3|.
    const Point base = detail::sample_point(rng, t, 3 * n, n, w);
    Point dir = detail::sample_point(rng, t, 4 * n, n, w);
    if (detail::norm2(dir.coords()) < 1e-6) continue;  // skip degenerate direction draw
    const double s1 = rng.uniform(t, 5 * n + 0, -w, w);
    const double s2 = rng.uniform(t, 5 * n + 1, -w, w);
    const double s3 = rng.uniform(t, 5 * n + 2, -w, w);
    const double s4 = s3 + 0.1 + rng.uniform01(t, 5 * n + 3) * w;
    auto at = [&](double s) {
      std::vector<double> c(n);
      for (std::size_t j = 0; j < n; ++j) c[j] = base[j] + s * dir[j];
      return Point(std::move(c));
    };
    const double d12 = distance(spec, at(s1), at(s2));
    const double d34 = distance(spec, at(s3), at(s4));
    const double lhs = d12 * std::abs(s4 - s3);
    const double rhs = d34 * std::abs(s1 - s2);
    const double ratio_viol = std::abs(lhs - rhs) / std::max({lhs, rhs, 1e-300});
    if (ratio_viol / detail::kRatioTol > out.max_violation) {
      out.max_violation = ratio_viol / detail::kRatioTol;
      if (out.max_violation > 1.0) out.witness = {at(s1), at(s2), at(s3), at(s4)};
    }
  }
  out.passed = out.max_violation <= out.tolerance;
  return out;
}

}  // namespace minkgeo
