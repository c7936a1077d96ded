#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <utility>

#include "minkgeo/errors.hpp"
#include "minkgeo/planar.hpp"

namespace minkgeo {

inline Vec2 rotate(Vec2 v, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

namespace detail {

/// Direction angle folded into [0, pi): lines and axes have no orientation.
inline double line_angle(Vec2 dir) {
  double a = std::atan2(dir.y, dir.x);
  if (a < 0.0) a += std::numbers::pi;
  if (a >= std::numbers::pi) a -= std::numbers::pi;
  return a;
}

/// Unit bisector of the non-obtuse angle between two line directions.
/// Flipping one direction into the same half-plane first keeps the sum away
/// from zero, so no atan2 branch cases arise.
inline Vec2 acute_bisector(Vec2 d1, Vec2 d2) {
  if (dot(d1, d2) < 0.0) d2 = -d2;
  return normalized(d1 + d2);
}

}  // namespace detail

/// An ellipse by center, semi-axes and major-axis angle. Construction
/// normalizes to a >= b (swapping the axes rotates the angle by pi/2) and
/// folds the angle into [0, pi).
class EllipseParams {
 public:
  EllipseParams(Vec2 center, double a, double b, double angle)
      : center_(center), a_(a), b_(b), angle_(angle) {
    if (!(a_ > 0.0) || !(b_ > 0.0) || !std::isfinite(a_) || !std::isfinite(b_))
      throw std::invalid_argument("EllipseParams: semi-axes must be positive");
    if (!std::isfinite(angle_)) throw std::invalid_argument("EllipseParams: angle must be finite");
    if (a_ < b_) {
      std::swap(a_, b_);
      angle_ += std::numbers::pi / 2.0;
    }
    angle_ = std::fmod(angle_, std::numbers::pi);
    if (angle_ < 0.0) angle_ += std::numbers::pi;
  }

  Vec2 center() const { return center_; }
  double a() const { return a_; }
  double b() const { return b_; }
  double angle() const { return angle_; }

  /// Unit direction of the major / minor axis.
  Vec2 major_dir() const { return {std::cos(angle_), std::sin(angle_)}; }
  Vec2 minor_dir() const { return perp(major_dir()); }

  /// Map a point from axis-aligned ellipse coordinates to the world frame.
  Vec2 to_world(Vec2 local) const { return center_ + rotate(local, angle_); }

  /// Parametric boundary point at eccentric anomaly t.
  Vec2 point_at(double t) const { return to_world({a_ * std::cos(t), b_ * std::sin(t)}); }

 private:
  Vec2 center_;
  double a_, b_;
  double angle_;
};

/// Two lines through a common point, stored by unit directions. theta is the
/// non-obtuse angle between them.
class LinePair {
 public:
  LinePair(Vec2 point, Vec2 dir1, Vec2 dir2)
      : point_(point), dir1_(normalized(dir1)), dir2_(normalized(dir2)) {
    if (std::abs(cross(dir1_, dir2_)) <= kIndependenceTol)
      throw DependentFrame("LinePair: directions are (nearly) parallel");
  }

  Vec2 point() const { return point_; }
  Vec2 dir1() const { return dir1_; }
  Vec2 dir2() const { return dir2_; }
  double cos_theta() const { return std::min(std::abs(dot(dir1_, dir2_)), 1.0); }
  double theta() const { return std::atan2(std::abs(cross(dir1_, dir2_)), std::abs(dot(dir1_, dir2_))); }

  PlanarLine line1() const { return {point_, perp(dir1_)}; }
  PlanarLine line2() const { return {point_, perp(dir2_)}; }

 private:
  Vec2 point_;
  Vec2 dir1_, dir2_;
};

/// The two-eccentrices description of an ellipse: the locus of points whose
/// squared distances to the two lines sum to `constant`.
struct EccentrixForm {
  EccentrixForm(LinePair line_pair, double c) : lines(std::move(line_pair)), constant(c) {
    if (!(constant > 0.0) || !std::isfinite(constant))
      throw std::invalid_argument("EccentrixForm: constant must be positive");
  }

  LinePair lines;
  double constant;
};

class RectangleSpec {
 public:
  RectangleSpec(Vec2 center, double half_a, double half_b, double angle)
      : center_(center), a_(half_a), b_(half_b), angle_(angle) {
    if (!(a_ > 0.0) || !(b_ > 0.0) || !std::isfinite(a_) || !std::isfinite(b_))
      throw std::invalid_argument("RectangleSpec: half sides must be positive");
    if (!std::isfinite(angle_)) throw std::invalid_argument("RectangleSpec: angle must be finite");
  }

  Vec2 center() const { return center_; }
  double half_a() const { return a_; }
  double half_b() const { return b_; }
  double angle() const { return angle_; }

  /// Corners in counterclockwise order.
  std::array<Vec2, 4> corners() const {
    return {center_ + rotate({a_, b_}, angle_), center_ + rotate({-a_, b_}, angle_),
            center_ + rotate({-a_, -b_}, angle_), center_ + rotate({a_, -b_}, angle_)};
  }

 private:
  Vec2 center_;
  double a_, b_;
  double angle_;
};

class RhombusSpec {
 public:
  RhombusSpec(Vec2 center, double half_e, double half_f, double angle)
      : center_(center), e_(half_e), f_(half_f), angle_(angle) {
    if (!(e_ > 0.0) || !(f_ > 0.0) || !std::isfinite(e_) || !std::isfinite(f_))
      throw std::invalid_argument("RhombusSpec: half diagonals must be positive");
    if (!std::isfinite(angle_)) throw std::invalid_argument("RhombusSpec: angle must be finite");
  }

  Vec2 center() const { return center_; }
  double half_e() const { return e_; }
  double half_f() const { return f_; }
  double angle() const { return angle_; }

  /// Vertices in counterclockwise order (diagonal endpoints alternate).
  std::array<Vec2, 4> vertices() const {
    return {center_ + rotate({e_, 0.0}, angle_), center_ + rotate({0.0, f_}, angle_),
            center_ + rotate({-e_, 0.0}, angle_), center_ + rotate({0.0, -f_}, angle_)};
  }

 private:
  Vec2 center_;
  double e_, f_;
  double angle_;
};

/// A unit-weight ball given by frame, center and radius: the common result
/// shape of the inverse constructions.
struct BallForm {
  Frame2 frame;
  Vec2 center;
  double radius;
};

/// The p = 2 ball of a unit-weight frame is an ellipse with semi-axes
/// a = r/sqrt(1 - cos theta), b = r/sqrt(1 + cos theta) and major axis along
/// the bisector of the non-obtuse angle between l1 and l2. With an orthogonal
/// frame it degenerates to a circle (a = b = r), which is returned unless
/// `require_strict_ellipse` is set.
inline EllipseParams ellipse_from_ball(const Frame2& frame, Vec2 center, double r,
                                       bool require_strict_ellipse = false) {
  if (!(r > 0.0) || !std::isfinite(r))
    throw std::invalid_argument("ellipse_from_ball: radius must be positive");
  const double ct = frame.cos_theta();
  if (require_strict_ellipse && ct <= detail::kShapeTol)
    throw DegenerateFrame("ellipse_from_ball: orthogonal frame gives a circle, not an ellipse");
  const double a = r / std::sqrt(1.0 - ct);
  const double b = r / std::sqrt(1.0 + ct);
  const Vec2 bis = detail::acute_bisector(perp(frame.v1()), perp(frame.v2()));
  return EllipseParams(center, a, b, detail::line_angle(bis));
}

/// Inverse of ellipse_from_ball: the eccentrices are the diagonals
/// b x +- a y = 0 of the circumscribed rectangle (in axis coordinates), the
/// frame vectors their unit normals, and r = sqrt(2) a b / sqrt(a^2 + b^2).
/// For a circle the +-45 degree pair relative to the stored angle is chosen
/// (any perpendicular pair would do).
inline BallForm ball_from_ellipse(const EllipseParams& e) {
  const double a = e.a(), b = e.b();
  const double h = std::hypot(a, b);
  const Vec2 n1 = rotate({b / h, -a / h}, e.angle());
  const Vec2 n2 = rotate({b / h, a / h}, e.angle());
  const double r = std::numbers::sqrt2 * a * b / h;
  return {Frame2(n1, n2), e.center(), r};
}

/// A rectangle with half sides (a, b) is the taxicab circle whose frame
/// vectors are the unit normals of its diagonals, with radius
/// 2ab / sqrt(a^2 + b^2).
inline BallForm taxicab_ball_from_rectangle(const RectangleSpec& rect) {
  const double a = rect.half_a(), b = rect.half_b();
  const double h = std::hypot(a, b);
  const Vec2 n1 = rotate({-b / h, a / h}, rect.angle());  // normal of diagonal (a, b)
  const Vec2 n2 = rotate({b / h, a / h}, rect.angle());   // normal of diagonal (a, -b)
  return {Frame2(n1, n2), rect.center(), 2.0 * a * b / h};
}

/// A rhombus with half diagonals (e, f) is the maximum circle whose frame
/// vectors are the unit normals of its sides, with radius ef / sqrt(e^2+f^2).
inline BallForm maximum_ball_from_rhombus(const RhombusSpec& rh) {
  const double e = rh.half_e(), f = rh.half_f();
  const double h = std::hypot(e, f);
  const Vec2 n1 = rotate({f / h, e / h}, rh.angle());   // normal of side through (e,0)-(0,f)
  const Vec2 n2 = rotate({f / h, -e / h}, rh.angle());  // normal of side through (e,0)-(0,-f)
  return {Frame2(n1, n2), rh.center(), e * f / h};
}

/// Eccentricity from the semi-axes.
inline double eccentricity(const EllipseParams& e) {
  const double ratio = e.b() / e.a();
  return std::sqrt(std::max(0.0, 1.0 - ratio * ratio));
}

/// Eccentricity from the eccentrix angle alone: sqrt(1 - tan^2(theta/2)).
/// Ellipses sharing theta are similar, so this is well defined.
inline double eccentricity_from_eccentrix_angle(double theta) {
  const double t = std::tan(theta / 2.0);
  return std::sqrt(std::max(0.0, 1.0 - t * t));
}

/// Half-length R = sqrt(a^2 + b^2) / sqrt(2) of the chords the eccentrices
/// cut from the ellipse; satisfies R r = a b.
inline double eccentric_radius(const EllipseParams& e) {
  return std::hypot(e.a(), e.b()) / std::numbers::sqrt2;
}

/// Implicit conic of the ellipse (delta > 0, Delta < 0).
inline ConicCoeffs conic_from_ellipse(const EllipseParams& e) {
  const double c = std::cos(e.angle()), s = std::sin(e.angle());
  const double ia = 1.0 / (e.a() * e.a()), ib = 1.0 / (e.b() * e.b());
  const double A = c * c * ia + s * s * ib;
  const double B = s * s * ia + c * c * ib;
  const double C = c * s * (ia - ib);
  return detail::conic_about_center(A, B, C, -1.0, e.center());
}

/// Recover center, semi-axes and major-axis angle from a conic that is a
/// real ellipse (delta > 0 and nonempty locus). The center solves the
/// gradient system, the axes come from the eigenvalues of the quadratic
/// part evaluated against the constant term at the center.
inline EllipseParams ellipse_from_conic(ConicCoeffs c) {
  if (c.delta() <= 0.0)
    throw std::invalid_argument("ellipse_from_conic: not an ellipse (delta <= 0)");
  if (c.A + c.B < 0.0) {  // normalize to a positive-definite quadratic part
    c = {-c.A, -c.B, -c.C, -c.D, -c.E, -c.F};
  }
  const double delta = c.delta();
  const Vec2 center{(-c.D * c.B + c.E * c.C) / delta, (-c.E * c.A + c.D * c.C) / delta};
  const double fc = c.F + c.D * center.x + c.E * center.y;
  if (!(fc < 0.0)) throw std::invalid_argument("ellipse_from_conic: empty or degenerate locus");
  const double half_diff = 0.5 * (c.A - c.B);
  const double rad = std::hypot(half_diff, c.C);
  const double mu_min = 0.5 * (c.A + c.B) - rad;
  const double mu_max = 0.5 * (c.A + c.B) + rad;
  const double a = std::sqrt(-fc / mu_min);
  const double b = std::sqrt(-fc / mu_max);
  Vec2 axis{mu_min - c.B, c.C};  // eigenvector of mu_min (the major axis)
  const Vec2 alt{c.C, mu_min - c.A};
  if (length(alt) > length(axis)) axis = alt;
  if (length(axis) <= 1e-14 * (std::abs(c.A) + std::abs(c.B))) axis = {1.0, 0.0};  // circle
  return EllipseParams(center, a, b, detail::line_angle(axis));
}

/// Both intersection points of the line anchor + t dir with a conic, ordered
/// by the parameter t. Substituting the line yields a quadratic in t; a
/// discriminant below -1e-12 (relative) means no real intersection.
inline std::array<Vec2, 2> line_conic_intersection(const ConicCoeffs& c, Vec2 anchor, Vec2 dir) {
  const double q2 = c.A * dir.x * dir.x + c.B * dir.y * dir.y + 2.0 * c.C * dir.x * dir.y;
  const double q1 = 2.0 * (c.A * anchor.x * dir.x + c.B * anchor.y * dir.y +
                           c.C * (anchor.x * dir.y + anchor.y * dir.x) + c.D * dir.x +
                           c.E * dir.y);
  const double q0 = c.value_at(anchor);
  if (q2 == 0.0) throw std::invalid_argument("line_conic_intersection: line is asymptotic");
  double disc = q1 * q1 - 4.0 * q2 * q0;
  const double scale = std::max(q1 * q1, std::abs(4.0 * q2 * q0));
  if (disc < 0.0) {
    if (disc < -1e-12 * scale)
      throw std::invalid_argument("line_conic_intersection: no real intersection");
    disc = 0.0;
  }
  const double root = std::sqrt(disc);
  double t0 = (-q1 - root) / (2.0 * q2);
  double t1 = (-q1 + root) / (2.0 * q2);
  if (t0 > t1) std::swap(t0, t1);
  return {anchor + t0 * dir, anchor + t1 * dir};
}

struct Chord {
  Vec2 p0, p1;

  Vec2 midpoint() const { return 0.5 * (p0 + p1); }
  double half_length() const { return 0.5 * length(p1 - p0); }
};

/// The chords the two eccentrices cut from the ellipse. They are conjugate
/// diameters with semi-diameter R each, so the Apollonius relations read
/// R^2 + R^2 = a^2 + b^2 and |cross(s1, s2)| = a b for the semi-diameter
/// vectors s1, s2.
inline std::array<Chord, 2> conjugate_diameter_chords(const EllipseParams& e) {
  const ConicCoeffs conic = conic_from_ellipse(e);
  const BallForm ball = ball_from_ellipse(e);
  const Vec2 d1 = perp(ball.frame.v1());
  const Vec2 d2 = perp(ball.frame.v2());
  const auto c1 = line_conic_intersection(conic, e.center(), d1);
  const auto c2 = line_conic_intersection(conic, e.center(), d2);
  return {Chord{c1[0], c1[1]}, Chord{c2[0], c2[1]}};
}

/// The tangent scaffold of an ellipse: the circumscribed rectangle with
/// sides 2a x 2b (whose diagonals are the eccentrices), the circumscribed
/// rhombus tangent at the conjugate-chord endpoints (side 2R, diagonals
/// 2 sqrt(2) a and 2 sqrt(2) b along the axes), and the similar ellipse with
/// semi-axes sqrt(2) a, sqrt(2) b through all eight scaffold vertices.
struct Scaffold {
  std::array<Vec2, 4> rectangle;
  std::array<Vec2, 4> rhombus;
  EllipseParams similar_ellipse;
};

inline Scaffold scaffold(const EllipseParams& e) {
  const double a = e.a(), b = e.b();
  const double s = std::numbers::sqrt2;
  return Scaffold{
      {e.to_world({a, b}), e.to_world({-a, b}), e.to_world({-a, -b}), e.to_world({a, -b})},
      {e.to_world({s * a, 0.0}), e.to_world({0.0, s * b}), e.to_world({-s * a, 0.0}),
       e.to_world({0.0, -s * b})},
      EllipseParams(e.center(), s * a, s * b, e.angle())};
}

/// Inverse of ellipse_from_ball at the eccentrix-form level: the lines are
/// the rectangle diagonals and the constant is r^2 = 2 a^2 b^2 / (a^2 + b^2).
inline EccentrixForm eccentrix_form_from_ellipse(const EllipseParams& e) {
  const double a = e.a(), b = e.b();
  const Vec2 d1 = rotate(normalized({a, b}), e.angle());
  const Vec2 d2 = rotate(normalized({-a, b}), e.angle());
  const double constant = 2.0 * a * a * b * b / (a * a + b * b);
  return EccentrixForm(LinePair(e.center(), d1, d2), constant);
}

/// An eccentrix form determines the ellipse with a = sqrt(c/(1 - cos theta)),
/// b = sqrt(c/(1 + cos theta)), centered at the line intersection with the
/// major axis along the acute-angle bisector.
inline EllipseParams ellipse_from_eccentrix_form(const EccentrixForm& f) {
  const double ct = f.lines.cos_theta();
  const double a = std::sqrt(f.constant / (1.0 - ct));
  const double b = std::sqrt(f.constant / (1.0 + ct));
  const Vec2 bis = detail::acute_bisector(f.lines.dir1(), f.lines.dir2());
  return EllipseParams(f.lines.point(), a, b, detail::line_angle(bis));
}

/// Asymptote data of the two-line hyperbola: either two finite slopes whose
/// product is -1, or an axis-aligned (one vertical, one horizontal) pair.
struct HyperbolaForm {
  ConicCoeffs conic;
  bool axis_pair;
  double slope1;
  double slope2;
};

/// The locus d(P, l1)^2 - d(P, l2)^2 = k for the two lines of the pair: a
/// hyperbola with perpendicular asymptotes. With the line normals as rows
/// the quadratic part is A = v11^2 - v21^2, B = v12^2 - v22^2,
/// C = v11 v12 - v21 v22; unit normals force A + B = 0, so the asymptote
/// slope quadratic B m^2 + 2 C m + A = 0 has root product A/B = -1, except
/// when B = 0 (then A = 0 too and the asymptotes are the axes directions).
/// Opposite signs of k give the conjugate hyperbola with the same asymptotes.
inline HyperbolaForm hyperbola_from_line_pair(const LinePair& lines, double k) {
  if (k == 0.0 || !std::isfinite(k))
    throw std::invalid_argument("hyperbola_from_line_pair: k must be nonzero");
  const Vec2 v1 = perp(lines.dir1());
  const Vec2 v2 = perp(lines.dir2());
  const double A = v1.x * v1.x - v2.x * v2.x;
  const double B = v1.y * v1.y - v2.y * v2.y;
  const double C = v1.x * v1.y - v2.x * v2.y;
  HyperbolaForm out{detail::conic_about_center(A, B, C, -k, lines.point()), false, 0.0, 0.0};
  if (std::abs(B) <= kIndependenceTol) {
    out.axis_pair = true;
    return out;
  }
  const double disc = std::sqrt(std::max(0.0, C * C - A * B));
  out.slope1 = (-C - disc) / B;
  out.slope2 = (-C + disc) / B;
  return out;
}

}  // namespace minkgeo
