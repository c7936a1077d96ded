#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "minkgeo/planar.hpp"
#include "minkgeo/rng.hpp"

using namespace minkgeo;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

Frame2 example_frame2() { return Frame2({3, -1}, {-1, 5}, true); }

Frame2 identity_frame2() { return Frame2({1, 0}, {0, 1}); }

double ball_distance(const BallSpec& spec, Vec2 q) {
  return distance(spec.as_metric_spec(), to_point(spec.center()), to_point(q));
}

double signed_area(const std::array<Vec2, 4>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < 4; ++i) s += cross(v[i], v[(i + 1) % 4]);
  return 0.5 * s;
}

double point_segment_distance(Vec2 q, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double t = std::clamp(dot(q - a, ab) / dot(ab, ab), 0.0, 1.0);
  return length(q - (a + t * ab));
}

Frame2 random_frame2(const CounterRng& rng, std::uint64_t trial) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    const double a1 = rng.uniform(trial, 200 + 2 * attempt, 0.0, 2.0 * std::numbers::pi);
    const double a2 = rng.uniform(trial, 201 + 2 * attempt, 0.0, 2.0 * std::numbers::pi);
    if (std::abs(std::sin(a1 - a2)) < 0.05) continue;  // avoid near-parallel draws
    return Frame2({std::cos(a1), std::sin(a1)}, {std::cos(a2), std::sin(a2)});
  }
}

BallSpec random_ball(const CounterRng& rng, std::uint64_t trial, BallKind kind,
                     double general_p = 0.0) {
  const Frame2 f = random_frame2(rng, trial);
  const double l1 = rng.uniform(trial, 210, 0.1, 10.0);
  const double l2 = rng.uniform(trial, 211, 0.1, 10.0);
  const Vec2 c{rng.uniform(trial, 212, -10.0, 10.0), rng.uniform(trial, 213, -10.0, 10.0)};
  const double r = rng.uniform(trial, 214, 0.1, 10.0);
  return BallSpec(f, l1, l2, c, r, kind, general_p);
}

}  // namespace

TEST_CASE("Frame2 caches tau and the non-obtuse angle") {
  const Frame2 f = example_frame2();
  REQUIRE_THAT(f.tau(), WithinRel(0.86824314212445919, 1e-14));
  // cos theta = |v1 . v2| = 8/sqrt(260)
  REQUIRE_THAT(f.cos_theta(), WithinRel(0.49613893835683387, 1e-14));
  REQUIRE(f.theta() > 0.0);
  REQUIRE(f.theta() <= std::numbers::pi / 2.0 + 1e-15);
  // sin^2 + cos^2 = 1 ties theta to tau
  REQUIRE_THAT(f.cos_theta() * f.cos_theta() + f.tau() * f.tau(), WithinRel(1.0, 1e-13));
  REQUIRE_THAT(std::sin(f.theta()), WithinRel(std::abs(f.tau()), 1e-13));
}

TEST_CASE("Frame2 validates input") {
  REQUIRE_THROWS_AS(Frame2({3, -1}, {-1, 5}, false), NotUnit);
  REQUIRE_THROWS_AS(Frame2({1, 0}, {-1, 0}, true), DependentFrame);
  REQUIRE_THROWS_AS(Frame2({0, 0}, {0, 1}, true), ZeroVector);
  const Frame f3 = validate_frame({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  REQUIRE_THROWS_AS(Frame2::from_frame(f3), DimensionMismatch);
}

TEST_CASE("Frame2 round-trips through the n-dimensional Frame") {
  const Frame2 f = example_frame2();
  const Frame2 back = Frame2::from_frame(f.to_frame());
  REQUIRE(back.v1() == f.v1());
  REQUIRE(back.v2() == f.v2());
  REQUIRE(back.tau() == f.tau());
}

TEST_CASE("BallSpec validates and exposes the exponent per kind") {
  const Frame2 f = identity_frame2();
  REQUIRE_THROWS_AS(BallSpec::taxicab(f, 0.0, 1.0, {0, 0}, 1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(BallSpec::taxicab(f, 1.0, 1.0, {0, 0}, 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(BallSpec::general(f, 1.0, 1.0, {0, 0}, 1.0, 0.0), UnsupportedExponent);
  REQUIRE(BallSpec::taxicab(f, 1, 1, {0, 0}, 1).exponent() == 1.0);
  REQUIRE(BallSpec::euclidean(f, 1, 1, {0, 0}, 1).exponent() == 2.0);
  REQUIRE(std::isinf(BallSpec::maximum(f, 1, 1, {0, 0}, 1).exponent()));
  REQUIRE(BallSpec::general(f, 1, 1, {0, 0}, 1, 0.7).exponent() == 0.7);
}

TEST_CASE("taxicab_circle of the identity frame is the unit diamond") {
  const auto para = taxicab_circle(BallSpec::taxicab(identity_frame2(), 1, 1, {0, 0}, 1));
  REQUIRE_THAT(length(para.vertices[0] - Vec2{1, 0}), WithinAbs(0.0, 1e-15));
  REQUIRE_THAT(length(para.vertices[1] - Vec2{0, 1}), WithinAbs(0.0, 1e-15));
  REQUIRE_THAT(length(para.vertices[2] - Vec2{-1, 0}), WithinAbs(0.0, 1e-15));
  REQUIRE_THAT(length(para.vertices[3] - Vec2{0, -1}), WithinAbs(0.0, 1e-15));
  REQUIRE(para.shape == ShapeKind::kSquare);
}

TEST_CASE("taxicab_circle matches the worked example vertex") {
  const auto para = taxicab_circle(BallSpec::taxicab(example_frame2(), 1, 1, {0, 0}, 1));
  // A1 = (5 sqrt(10)/14, sqrt(10)/14)
  REQUIRE_THAT(para.vertices[0].x, WithinRel(1.1293848786315640, 1e-14));
  REQUIRE_THAT(para.vertices[0].y, WithinRel(0.22587697572631281, 1e-14));
  REQUIRE(para.shape == ShapeKind::kRectangle);
}

TEST_CASE("taxicab_circle vertices lie on the ball and diagonals on l1/l2") {
  const CounterRng rng(8001);
  for (std::uint64_t t = 0; t < 200; ++t) {
    const BallSpec spec = random_ball(rng, t, BallKind::kTaxicab);
    const auto para = taxicab_circle(spec);
    for (const Vec2& v : para.vertices)
      REQUIRE_THAT(ball_distance(spec, v), WithinRel(spec.radius(), 1e-11));
    // Diagonal A1A3 lies along l2, A2A4 along l1.
    const Vec2 d13 = para.vertices[2] - para.vertices[0];
    const Vec2 d24 = para.vertices[3] - para.vertices[1];
    REQUIRE_THAT(std::abs(dot(normalized(d13), spec.frame().v2())), WithinAbs(0.0, 1e-9));
    REQUIRE_THAT(std::abs(dot(normalized(d24), spec.frame().v1())), WithinAbs(0.0, 1e-9));
    // Vertex centroid is the center; opposite sides are parallel.
    const Vec2 centroid = 0.25 * (para.vertices[0] + para.vertices[1] + para.vertices[2] +
                                  para.vertices[3]);
    REQUIRE_THAT(length(centroid - spec.center()), WithinAbs(0.0, 1e-9 * spec.radius()));
    const Vec2 s1 = para.vertices[1] - para.vertices[0];
    const Vec2 s3 = para.vertices[3] - para.vertices[2];
    REQUIRE_THAT(std::abs(cross(normalized(s1), normalized(s3))), WithinAbs(0.0, 1e-9));
  }
}

TEST_CASE("taxicab_circle orders vertices counterclockwise even for negative tau") {
  const auto pos = taxicab_circle(BallSpec::taxicab(identity_frame2(), 1, 1, {0, 0}, 1));
  REQUIRE(signed_area(pos.vertices) > 0.0);
  const Frame2 flipped({0, 1}, {1, 0});  // tau = -1
  REQUIRE(flipped.tau() < 0.0);
  const auto neg = taxicab_circle(BallSpec::taxicab(flipped, 1, 1, {0, 0}, 1));
  REQUIRE(signed_area(neg.vertices) > 0.0);
}

TEST_CASE("maximum_circle of the identity frame is the unit square") {
  const auto para = maximum_circle(BallSpec::maximum(identity_frame2(), 1, 1, {0, 0}, 1));
  REQUIRE_THAT(length(para.vertices[0] - Vec2{1, 1}), WithinAbs(0.0, 1e-15));
  REQUIRE_THAT(length(para.vertices[1] - Vec2{-1, 1}), WithinAbs(0.0, 1e-15));
  REQUIRE_THAT(length(para.vertices[2] - Vec2{-1, -1}), WithinAbs(0.0, 1e-15));
  REQUIRE_THAT(length(para.vertices[3] - Vec2{1, -1}), WithinAbs(0.0, 1e-15));
  REQUIRE(para.shape == ShapeKind::kSquare);
}

TEST_CASE("maximum_circle matches the worked example vertex") {
  const auto para = maximum_circle(BallSpec::maximum(example_frame2(), 1, 1, {0, 0}, 1));
  // B1 = ((sqrt(10) + 5 sqrt(26))/14·... frozen from the closed form
  REQUIRE_THAT(para.vertices[0].x, WithinRel(1.4936005581739058, 1e-14));
  REQUIRE_THAT(para.vertices[0].y, WithinRel(1.3185240143533381, 1e-14));
  REQUIRE(para.shape == ShapeKind::kRhombus);
}

TEST_CASE("maximum_circle vertices lie on the ball and sides parallel l1/l2") {
  const CounterRng rng(8002);
  for (std::uint64_t t = 0; t < 200; ++t) {
    const BallSpec spec = random_ball(rng, t, BallKind::kMaximum);
    const auto para = maximum_circle(spec);
    for (const Vec2& v : para.vertices)
      REQUIRE_THAT(ball_distance(spec, v), WithinRel(spec.radius(), 1e-11));
    // Sides are parallel to the through-center lines: B1B2 to l2, B1B4 to l1.
    const Vec2 s12 = para.vertices[1] - para.vertices[0];
    const Vec2 s14 = para.vertices[3] - para.vertices[0];
    const bool pairing_a =
        std::abs(dot(normalized(s12), spec.frame().v2())) <= 1e-9 &&
        std::abs(dot(normalized(s14), spec.frame().v1())) <= 1e-9;
    const bool pairing_b =
        std::abs(dot(normalized(s12), spec.frame().v1())) <= 1e-9 &&
        std::abs(dot(normalized(s14), spec.frame().v2())) <= 1e-9;
    REQUIRE((pairing_a || pairing_b));
    REQUIRE(signed_area(para.vertices) > 0.0);
  }
}

TEST_CASE("euclidean_circle_conic matches hand-evaluated coefficients") {
  const auto id = euclidean_circle_conic(BallSpec::euclidean(identity_frame2(), 1, 1, {0, 0}, 1));
  REQUIRE(id.A == 1.0);
  REQUIRE(id.B == 1.0);
  REQUIRE(id.C == 0.0);
  REQUIRE(id.D == 0.0);
  REQUIRE(id.E == 0.0);
  REQUIRE(id.F == -1.0);
  const auto c = euclidean_circle_conic(BallSpec::euclidean(example_frame2(), 1, 1, {0, 0}, 1));
  REQUIRE_THAT(c.A, WithinRel(61.0 / 65.0, 1e-14));
  REQUIRE_THAT(c.B, WithinRel(69.0 / 65.0, 1e-14));
  REQUIRE_THAT(c.C, WithinRel(-32.0 / 65.0, 1e-14));
  REQUIRE_THAT(c.delta(), WithinRel(49.0 / 65.0, 1e-14));
}

TEST_CASE("euclidean conic discriminants for random specs") {
  const CounterRng rng(8003);
  for (std::uint64_t t = 0; t < 200; ++t) {
    const BallSpec spec = random_ball(rng, t, BallKind::kEuclidean);
    const auto c = euclidean_circle_conic(spec);
    const double tau = spec.frame().tau();
    const double want_delta =
        spec.lambda1() * spec.lambda1() * spec.lambda2() * spec.lambda2() * tau * tau;
    REQUIRE_THAT(c.delta(), WithinRel(want_delta, 1e-11));
    // Delta() expands a 3x3 determinant whose terms grow like |c|^2 |M|^3
    // while the value stays at r^2 delta, so the tolerance must scale with
    // the cancelled term magnitudes rather than the result.
    const double dscale = std::abs(c.A) * (std::abs(c.B * c.F) + c.E * c.E) +
                          std::abs(c.C) * (std::abs(c.C * c.F) + std::abs(c.E * c.D)) +
                          std::abs(c.D) * (std::abs(c.C * c.E) + std::abs(c.B * c.D));
    REQUIRE_THAT(c.Delta(),
                 WithinAbs(-spec.radius() * spec.radius() * want_delta, 1e-12 * dscale));
    REQUIRE(c.delta() > 0.0);
    REQUIRE(c.Delta() < 0.0);
    REQUIRE(c.Delta() / (c.A + c.B) < 0.0);
    // Boundary points satisfy the implicit equation.
    const Polyline line = ball_boundary_points(spec, 32);
    const double scale = std::abs(c.F) + 1.0;
    for (const Vec2& q : line.points) REQUIRE_THAT(c.value_at(q), WithinAbs(0.0, 1e-9 * scale));
  }
}

TEST_CASE("ball_boundary_points hits the cardinal points of the unit circle") {
  const Polyline line =
      ball_boundary_points(BallSpec::euclidean(identity_frame2(), 1, 1, {0, 0}, 1), 4);
  REQUIRE(line.closed);
  REQUIRE(line.points.size() == 4);
  REQUIRE_THAT(length(line.points[0] - Vec2{1, 0}), WithinAbs(0.0, 1e-15));
  REQUIRE_THAT(length(line.points[1] - Vec2{0, 1}), WithinAbs(0.0, 1e-15));
  REQUIRE_THAT(length(line.points[2] - Vec2{-1, 0}), WithinAbs(0.0, 1e-15));
  REQUIRE_THAT(length(line.points[3] - Vec2{0, -1}), WithinAbs(0.0, 1e-15));
  REQUIRE_THROWS_AS(
      ball_boundary_points(BallSpec::euclidean(identity_frame2(), 1, 1, {0, 0}, 1), 3),
      std::invalid_argument);
}

TEST_CASE("ball_boundary_points stay on the level set for all exponents") {
  const CounterRng rng(8004);
  for (double p : {0.7, 1.0, 2.0, 3.0, kInf}) {
    for (std::uint64_t t = 0; t < 50; ++t) {
      const BallSpec spec = random_ball(rng, t, BallKind::kGeneral, p == kInf ? 1.0 : p);
      const BallSpec used = std::isinf(p)
                                ? BallSpec::maximum(spec.frame(), spec.lambda1(), spec.lambda2(),
                                                    spec.center(), spec.radius())
                                : spec;
      const Polyline line = ball_boundary_points(used, 64);
      for (const Vec2& q : line.points)
        REQUIRE_THAT(ball_distance(used, q), WithinRel(used.radius(), 1e-9));
    }
  }
}

TEST_CASE("ball_boundary_points of a taxicab ball lie on the parallelogram edges") {
  const CounterRng rng(8005);
  for (std::uint64_t t = 0; t < 20; ++t) {
    const BallSpec spec = random_ball(rng, t, BallKind::kTaxicab);
    const auto para = taxicab_circle(spec);
    const Polyline line = ball_boundary_points(spec, 128);
    for (const Vec2& q : line.points) {
      double best = 1e300;
      for (std::size_t i = 0; i < 4; ++i)
        best = std::min(best,
                        point_segment_distance(q, para.vertices[i], para.vertices[(i + 1) % 4]));
      REQUIRE_THAT(best, WithinAbs(0.0, 1e-9 * spec.radius()));
    }
  }
}

TEST_CASE("boundary points are centrally symmetric") {
  const CounterRng rng(8006);
  for (double p : {1.0, 2.0, 5.0}) {
    const BallSpec spec = random_ball(rng, 7, BallKind::kGeneral, p);
    const Polyline line = ball_boundary_points(spec, 64);
    for (const Vec2& q : line.points) {
      const Vec2 mirrored = 2.0 * spec.center() - q;
      REQUIRE_THAT(ball_distance(spec, mirrored), WithinRel(spec.radius(), 1e-9));
    }
  }
}

TEST_CASE("balls with smaller p nest inside balls with larger p") {
  const CounterRng rng(8007);
  const double ps[] = {0.7, 1.0, 2.0, 5.0};
  for (std::uint64_t t = 0; t < 30; ++t) {
    const BallSpec base = random_ball(rng, t, BallKind::kGeneral, 1.0);
    for (std::size_t i = 0; i + 1 < std::size(ps); ++i) {
      const BallSpec inner = BallSpec::general(base.frame(), base.lambda1(), base.lambda2(),
                                               base.center(), base.radius(), ps[i]);
      const BallSpec outer = BallSpec::general(base.frame(), base.lambda1(), base.lambda2(),
                                               base.center(), base.radius(), ps[i + 1]);
      for (const Vec2& q : ball_boundary_points(inner, 48).points)
        REQUIRE(ball_distance(outer, q) <= base.radius() * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("common_points lie on every ball of the family") {
  const CounterRng rng(8008);
  for (std::uint64_t t = 0; t < 100; ++t) {
    const BallSpec base = random_ball(rng, t, BallKind::kTaxicab);
    const auto qs = common_points(base);
    for (double p : {0.7, 1.0, 2.0, 3.0}) {
      const BallSpec spec = BallSpec::general(base.frame(), base.lambda1(), base.lambda2(),
                                              base.center(), base.radius(), p);
      // A rounded point on l1 keeps a rounding-level residual against the
      // inactive row, and p < 1 amplifies a residual eps to eps^p.
      const double tol = p < 1.0 ? 5e-8 : 1e-12;
      for (const Vec2& q : qs)
        REQUIRE_THAT(ball_distance(spec, q), WithinRel(base.radius(), tol));
    }
    const BallSpec maxspec = BallSpec::maximum(base.frame(), base.lambda1(), base.lambda2(),
                                               base.center(), base.radius());
    for (const Vec2& q : qs)
      REQUIRE_THAT(ball_distance(maxspec, q), WithinRel(base.radius(), 1e-12));
  }
}

TEST_CASE("common_points satisfy the Euclidean line-distance law for unit weights") {
  const CounterRng rng(8009);
  for (std::uint64_t t = 0; t < 100; ++t) {
    const Frame2 f = random_frame2(rng, t);
    const Vec2 c{rng.uniform(t, 300, -5.0, 5.0), rng.uniform(t, 301, -5.0, 5.0)};
    const double r = rng.uniform(t, 302, 0.1, 10.0);
    const auto qs = common_points(f, 1.0, 1.0, c, r);
    const PlanarLine l1{c, f.v1()};
    const PlanarLine l2{c, f.v2()};
    // Q1 (on l1) has Euclidean distance r to l2, and Q2 to l1.
    REQUIRE_THAT(line_distance(l2, qs[0]), WithinRel(r, 1e-12));
    REQUIRE_THAT(line_distance(l2, qs[1]), WithinRel(r, 1e-12));
    REQUIRE_THAT(line_distance(l1, qs[2]), WithinRel(r, 1e-12));
    REQUIRE_THAT(line_distance(l1, qs[3]), WithinRel(r, 1e-12));
    // And they do lie on their own lines.
    REQUIRE_THAT(line_distance(l1, qs[0]), WithinAbs(0.0, 1e-12 * r));
    REQUIRE_THAT(line_distance(l2, qs[2]), WithinAbs(0.0, 1e-12 * r));
  }
}

TEST_CASE("classify_ball_shape follows the case tables") {
  const Frame2 orth = identity_frame2();
  const Frame2 skew = example_frame2();
  auto kind = [](const BallSpec& s) { return classify_ball_shape(s).kind; };
  // Taxicab: equal weights -> rectangle, orthogonal -> rhombus, both -> square.
  REQUIRE(kind(BallSpec::taxicab(orth, 1, 1, {0, 0}, 1)) == ShapeKind::kSquare);
  REQUIRE(kind(BallSpec::taxicab(skew, 1, 1, {0, 0}, 1)) == ShapeKind::kRectangle);
  REQUIRE(kind(BallSpec::taxicab(orth, 1, 2, {0, 0}, 1)) == ShapeKind::kRhombus);
  REQUIRE(kind(BallSpec::taxicab(skew, 1, 2, {0, 0}, 1)) == ShapeKind::kParallelogram);
  // Maximum: equal weights -> rhombus, orthogonal -> rectangle, both -> square.
  REQUIRE(kind(BallSpec::maximum(orth, 1, 1, {0, 0}, 1)) == ShapeKind::kSquare);
  REQUIRE(kind(BallSpec::maximum(skew, 1, 1, {0, 0}, 1)) == ShapeKind::kRhombus);
  REQUIRE(kind(BallSpec::maximum(orth, 1, 2, {0, 0}, 1)) == ShapeKind::kRectangle);
  REQUIRE(kind(BallSpec::maximum(skew, 1, 2, {0, 0}, 1)) == ShapeKind::kParallelogram);
  // Euclidean: both conditions -> circle, otherwise ellipse.
  REQUIRE(kind(BallSpec::euclidean(orth, 1, 1, {0, 0}, 1)) == ShapeKind::kCircle);
  REQUIRE(kind(BallSpec::euclidean(skew, 1, 1, {0, 0}, 1)) == ShapeKind::kEllipse);
  REQUIRE(kind(BallSpec::euclidean(orth, 1, 2, {0, 0}, 1)) == ShapeKind::kEllipse);
  const auto report = classify_ball_shape(BallSpec::taxicab(orth, 1, 1, {0, 0}, 1));
  REQUIRE(report.weights_equal);
  REQUIRE(report.frame_orthogonal);
  REQUIRE_THROWS_AS(classify_ball_shape(BallSpec::general(orth, 1, 1, {0, 0}, 1, 3.0)),
                    UnsupportedExponent);
}

TEST_CASE("shape tags are consistent with measured side lengths") {
  // Taxicab with equal weights: right angles at the vertices and equal
  // diagonals, matching the RECTANGLE tag.
  const auto rect = taxicab_circle(BallSpec::taxicab(example_frame2(), 1, 1, {0, 0}, 2));
  REQUIRE(rect.shape == ShapeKind::kRectangle);
  const Vec2 s01 = rect.vertices[1] - rect.vertices[0];
  const Vec2 s12 = rect.vertices[2] - rect.vertices[1];
  REQUIRE_THAT(dot(normalized(s01), normalized(s12)), WithinAbs(0.0, 1e-12));
  REQUIRE_THAT(length(rect.vertices[2] - rect.vertices[0]),
               WithinRel(length(rect.vertices[3] - rect.vertices[1]), 1e-12));
  // Maximum with equal weights: all four sides equal (RHOMBUS tag).
  const auto rhomb = maximum_circle(BallSpec::maximum(example_frame2(), 1, 1, {0, 0}, 2));
  REQUIRE(rhomb.shape == ShapeKind::kRhombus);
  double side[4];
  for (std::size_t i = 0; i < 4; ++i)
    side[i] = length(rhomb.vertices[(i + 1) % 4] - rhomb.vertices[i]);
  for (std::size_t i = 1; i < 4; ++i) REQUIRE_THAT(side[i], WithinRel(side[0], 1e-9));
}
