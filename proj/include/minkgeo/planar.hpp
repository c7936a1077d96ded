#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "minkgeo/core.hpp"
#include "minkgeo/errors.hpp"

namespace minkgeo {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
  friend Vec2 operator-(Vec2 v) { return {-v.x, -v.y}; }
  friend bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double length(Vec2 v) { return std::hypot(v.x, v.y); }

/// Counterclockwise quarter turn.
inline Vec2 perp(Vec2 v) { return {-v.y, v.x}; }

inline Vec2 normalized(Vec2 v) {
  const double len = length(v);
  if (len < kIndependenceTol) throw ZeroVector("cannot normalize a (nearly) zero vector");
  return {v.x / len, v.y / len};
}

inline Point to_point(Vec2 v) { return Point{v.x, v.y}; }

inline Vec2 to_vec2(const Point& p) {
  if (p.dimension() != 2) throw DimensionMismatch("to_vec2: point is not planar");
  return {p[0], p[1]};
}

/// A line in the plane given by a point on it and a unit normal.
struct PlanarLine {
  Vec2 anchor;
  Vec2 normal;  // unit length
};

inline double line_distance(const PlanarLine& l, Vec2 q) {
  return std::abs(dot(l.normal, q - l.anchor));
}

/// Two independent unit vectors in the plane with the cached determinant
/// tau = cross(v1, v2) and the non-obtuse angle theta between them, so that
/// cos(theta) = |v1 . v2| and sin(theta) = |tau|.
class Frame2 {
 public:
  Frame2(Vec2 a, Vec2 b, bool normalize = false) {
    if (normalize) {
      a = normalized(a);
      b = normalized(b);
    } else {
      if (length(a) < kIndependenceTol || length(b) < kIndependenceTol)
        throw ZeroVector("frame vector is (nearly) zero");
      if (std::abs(length(a) - 1.0) > kUnitLengthTol || std::abs(length(b) - 1.0) > kUnitLengthTol)
        throw NotUnit("frame vector is not unit length");
    }
    v1_ = a;
    v2_ = b;
    tau_ = cross(v1_, v2_);
    if (std::abs(tau_) <= kIndependenceTol)
      throw DependentFrame("planar frame vectors are (nearly) parallel");
  }

  static Frame2 from_frame(const Frame& f) {
    if (f.dimension() != 2) throw DimensionMismatch("Frame2 requires a 2-D frame");
    return Frame2({f.row(0)[0], f.row(0)[1]}, {f.row(1)[0], f.row(1)[1]});
  }

  Frame to_frame() const { return Frame({{v1_.x, v1_.y}, {v2_.x, v2_.y}}); }

  Vec2 v1() const { return v1_; }
  Vec2 v2() const { return v2_; }
  double tau() const { return tau_; }
  double cos_theta() const { return std::min(std::abs(dot(v1_, v2_)), 1.0); }
  double theta() const { return std::atan2(std::abs(tau_), std::abs(dot(v1_, v2_))); }

 private:
  Vec2 v1_, v2_;
  double tau_;
};

enum class BallKind { kTaxicab, kEuclidean, kMaximum, kGeneral };

/// One planar circle of the family: frame, weights, center, radius, and which
/// exponent regime it lives in (kGeneral carries an explicit p > 0).
class BallSpec {
 public:
  BallSpec(Frame2 frame, double lambda1, double lambda2, Vec2 center, double radius,
           BallKind kind, double general_p = 0.0)
      : frame_(frame),
        lambda1_(lambda1),
        lambda2_(lambda2),
        center_(center),
        radius_(radius),
        kind_(kind),
        general_p_(general_p) {
    if (!(lambda1_ > 0.0) || !(lambda2_ > 0.0) || !std::isfinite(lambda1_) ||
        !std::isfinite(lambda2_))
      throw std::invalid_argument("BallSpec weights must be positive");
    if (!(radius_ > 0.0) || !std::isfinite(radius_))
      throw std::invalid_argument("BallSpec radius must be positive");
    if (kind_ == BallKind::kGeneral) detail::check_exponent(general_p_);
  }

  static BallSpec taxicab(Frame2 f, double l1, double l2, Vec2 c, double r) {
    return BallSpec(f, l1, l2, c, r, BallKind::kTaxicab);
  }
  static BallSpec euclidean(Frame2 f, double l1, double l2, Vec2 c, double r) {
    return BallSpec(f, l1, l2, c, r, BallKind::kEuclidean);
  }
  static BallSpec maximum(Frame2 f, double l1, double l2, Vec2 c, double r) {
    return BallSpec(f, l1, l2, c, r, BallKind::kMaximum);
  }
  static BallSpec general(Frame2 f, double l1, double l2, Vec2 c, double r, double p) {
    return BallSpec(f, l1, l2, c, r, BallKind::kGeneral, p);
  }

  const Frame2& frame() const { return frame_; }
  double lambda1() const { return lambda1_; }
  double lambda2() const { return lambda2_; }
  Vec2 center() const { return center_; }
  double radius() const { return radius_; }
  BallKind kind() const { return kind_; }

  double exponent() const {
    switch (kind_) {
      case BallKind::kTaxicab: return 1.0;
      case BallKind::kEuclidean: return 2.0;
      case BallKind::kMaximum: return kInf;
      case BallKind::kGeneral: return general_p_;
    }
    return general_p_;
  }

  MetricSpec as_metric_spec() const {
    return MetricSpec(frame_.to_frame(), {lambda1_, lambda2_}, exponent());
  }

  /// The lines l1, l2 through the center perpendicular to v1, v2.
  PlanarLine l1() const { return {center_, frame_.v1()}; }
  PlanarLine l2() const { return {center_, frame_.v2()}; }

 private:
  Frame2 frame_;
  double lambda1_, lambda2_;
  Vec2 center_;
  double radius_;
  BallKind kind_;
  double general_p_;
};

enum class ShapeKind { kParallelogram, kRectangle, kRhombus, kSquare, kEllipse, kCircle };

inline const char* shape_name(ShapeKind k) {
  switch (k) {
    case ShapeKind::kParallelogram: return "PARALLELOGRAM";
    case ShapeKind::kRectangle: return "RECTANGLE";
    case ShapeKind::kRhombus: return "RHOMBUS";
    case ShapeKind::kSquare: return "SQUARE";
    case ShapeKind::kEllipse: return "ELLIPSE";
    case ShapeKind::kCircle: return "CIRCLE";
  }
  return "?";
}

struct ShapeReport {
  ShapeKind kind;
  bool weights_equal;
  bool frame_orthogonal;
};

struct Parallelogram4 {
  std::array<Vec2, 4> vertices;  // counterclockwise, starting from A1/B1
  ShapeKind shape;
};

/// General quadratic A x^2 + B y^2 + 2C xy + 2D x + 2E y + F = 0.
/// The discriminants are always recomputed from the coefficients.
struct ConicCoeffs {
  double A = 0, B = 0, C = 0, D = 0, E = 0, F = 0;

  double delta() const { return A * B - C * C; }
  double Delta() const {
    return A * (B * F - E * E) - C * (C * F - E * D) + D * (C * E - B * D);
  }
  double value_at(Vec2 q) const {
    return A * q.x * q.x + B * q.y * q.y + 2.0 * C * q.x * q.y + 2.0 * D * q.x + 2.0 * E * q.y +
           F;
  }
};

struct Polyline {
  std::vector<Vec2> points;
  bool closed = false;
};

namespace detail {

/// Shift an origin-centered conic (D = E = 0, constant term f0) so its center
/// lands at `c`: the linear terms absorb the translation, the quadratic part
/// and both discriminant signs are unchanged.
inline ConicCoeffs conic_about_center(double A, double B, double C, double f0, Vec2 c) {
  ConicCoeffs out;
  out.A = A;
  out.B = B;
  out.C = C;
  out.D = -(A * c.x + C * c.y);
  out.E = -(B * c.y + C * c.x);
  out.F = f0 + A * c.x * c.x + B * c.y * c.y + 2.0 * C * c.x * c.y;
  return out;
}

constexpr double kShapeTol = 1e-9;

inline bool weights_equal(const BallSpec& s) {
  return std::abs(s.lambda1() - s.lambda2()) <= kShapeTol * std::max(s.lambda1(), s.lambda2());
}

inline bool frame_orthogonal(const Frame2& f) {
  return std::abs(dot(f.v1(), f.v2())) <= kShapeTol;
}

}  // namespace detail

/// Shape of the ball per the case tables: taxicab and maximum swap the roles
/// of the equal-weight and orthogonal conditions; the Euclidean ball is a
/// circle exactly when both hold.
inline ShapeReport classify_ball_shape(const BallSpec& spec) {
  if (spec.kind() == BallKind::kGeneral)
    throw UnsupportedExponent("classify_ball_shape: only taxicab/euclidean/maximum balls");
  const bool we = detail::weights_equal(spec);
  const bool fo = detail::frame_orthogonal(spec.frame());
  ShapeKind kind;
  switch (spec.kind()) {
    case BallKind::kTaxicab:
      kind = we && fo   ? ShapeKind::kSquare
             : we       ? ShapeKind::kRectangle
             : fo       ? ShapeKind::kRhombus
                        : ShapeKind::kParallelogram;
      break;
    case BallKind::kMaximum:
      kind = we && fo   ? ShapeKind::kSquare
             : we       ? ShapeKind::kRhombus
             : fo       ? ShapeKind::kRectangle
                        : ShapeKind::kParallelogram;
      break;
    default:
      kind = we && fo ? ShapeKind::kCircle : ShapeKind::kEllipse;
      break;
  }
  return {kind, we, fo};
}

/// The taxicab circle: a parallelogram whose diagonals lie on l1 and l2.
/// Unit-circle vertices A1 = (v22, -v21)/(lambda1 tau) and
/// A2 = (-v12, v11)/(lambda2 tau) with A3 = -A1, A4 = -A2, scaled by the
/// radius and shifted to the center. Output order is counterclockwise
/// starting from A1 (the printed order is reversed when tau < 0).
inline Parallelogram4 taxicab_circle(const BallSpec& spec) {
  if (spec.kind() != BallKind::kTaxicab)
    throw UnsupportedExponent("taxicab_circle needs a TAXICAB ball");
  const Frame2& f = spec.frame();
  const double tau = f.tau();
  const double r = spec.radius();
  const Vec2 a1 = (r / (spec.lambda1() * tau)) * Vec2{f.v2().y, -f.v2().x};
  const Vec2 a2 = (r / (spec.lambda2() * tau)) * Vec2{-f.v1().y, f.v1().x};
  Parallelogram4 out;
  out.vertices = {spec.center() + a1, spec.center() + a2, spec.center() - a1,
                  spec.center() - a2};
  if (tau < 0.0) std::swap(out.vertices[1], out.vertices[3]);
  out.shape = classify_ball_shape(spec).kind;
  return out;
}

/// The maximum circle: a parallelogram whose sides are parallel to l1 and l2.
/// Unit-circle vertices B1, B2 from the two sign choices of the active
/// constraints; B3 = -B1, B4 = -B2.
inline Parallelogram4 maximum_circle(const BallSpec& spec) {
  if (spec.kind() != BallKind::kMaximum)
    throw UnsupportedExponent("maximum_circle needs a MAXIMUM ball");
  const Frame2& f = spec.frame();
  const double tau = f.tau();
  const double l1 = spec.lambda1(), l2 = spec.lambda2();
  const double r = spec.radius();
  const double s = r / (l1 * l2 * tau);
  const Vec2 b1 = s * Vec2{-f.v1().y * l1 + f.v2().y * l2, f.v1().x * l1 - f.v2().x * l2};
  const Vec2 b2 = s * Vec2{-f.v1().y * l1 - f.v2().y * l2, f.v1().x * l1 + f.v2().x * l2};
  Parallelogram4 out;
  out.vertices = {spec.center() + b1, spec.center() + b2, spec.center() - b1,
                  spec.center() - b2};
  if (tau < 0.0) std::swap(out.vertices[1], out.vertices[3]);
  out.shape = classify_ball_shape(spec).kind;
  return out;
}

/// Implicit conic of the Euclidean (p = 2) ball. For a center at the origin
/// the coefficients are quadratic forms in the weighted frame rows with
/// D = E = 0 and F = -r^2; a general center only shifts the linear terms.
inline ConicCoeffs euclidean_circle_conic(const BallSpec& spec) {
  if (spec.kind() != BallKind::kEuclidean)
    throw UnsupportedExponent("euclidean_circle_conic needs a EUCLIDEAN ball");
  const Frame2& f = spec.frame();
  const double l1 = spec.lambda1() * spec.lambda1();
  const double l2 = spec.lambda2() * spec.lambda2();
  const double A = l1 * f.v1().x * f.v1().x + l2 * f.v2().x * f.v2().x;
  const double B = l1 * f.v1().y * f.v1().y + l2 * f.v2().y * f.v2().y;
  const double C = l1 * f.v1().x * f.v1().y + l2 * f.v2().x * f.v2().y;
  return detail::conic_about_center(A, B, C, -spec.radius() * spec.radius(), spec.center());
}

namespace detail {

inline double ball_direction_norm(const BallSpec& spec, Vec2 dir) {
  double terms[2] = {spec.lambda1() * std::abs(dot(spec.frame().v1(), dir)),
                     spec.lambda2() * std::abs(dot(spec.frame().v2(), dir))};
  return lp_combine(terms, 2, spec.exponent());
}

}  // namespace detail

/// Boundary samples at equally spaced angles, counterclockwise and closed.
/// The point along direction d is center + (r / N(d)) d where N is the
/// induced norm: exact by 1-homogeneity, no root finding involved.
inline Polyline ball_boundary_points(const BallSpec& spec, std::size_t count) {
  if (count < 4) throw std::invalid_argument("ball_boundary_points: count must be >= 4");
  Polyline out;
  out.closed = true;
  out.points.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double phi = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
    const Vec2 d{std::cos(phi), std::sin(phi)};
    const double n = detail::ball_direction_norm(spec, d);
    out.points.push_back(spec.center() + (spec.radius() / n) * d);
  }
  return out;
}

/// The four points shared by every ball of the family with this frame,
/// weights, center and radius, independent of the exponent: the
/// intersections of l1 and l2 with the boundary. Along l1 only the v2 term
/// is active (and vice versa), so each intersection is exponent-free.
/// Returns {Q1+, Q1-, Q2+, Q2-} with Q1 on l1 and Q2 on l2.
inline std::array<Vec2, 4> common_points(const Frame2& frame, double lambda1, double lambda2,
                                         Vec2 center, double radius) {
  if (!(lambda1 > 0.0) || !(lambda2 > 0.0))
    throw std::invalid_argument("common_points: weights must be positive");
  if (!(radius > 0.0)) throw std::invalid_argument("common_points: radius must be positive");
  const double at = std::abs(frame.tau());
  const Vec2 q1 = (radius / (lambda2 * at)) * perp(frame.v1());
  const Vec2 q2 = (radius / (lambda1 * at)) * perp(frame.v2());
  return {center + q1, center - q1, center + q2, center - q2};
}

inline std::array<Vec2, 4> common_points(const BallSpec& spec) {
  return common_points(spec.frame(), spec.lambda1(), spec.lambda2(), spec.center(),
                       spec.radius());
}

}  // namespace minkgeo
