// Renders a nested family of unit circles that share one frame, one center
// and one radius but sweep the exponent: the taxicab parallelogram, the
// Euclidean ellipse, the maximum parallelogram and two general exponents.
// All of them pass through the same four common points on the lines l1, l2.

#include <fstream>
#include <iostream>
#include <vector>

#include "minkgeo/minkgeo.hpp"

using namespace minkgeo;

namespace {

BallSpec make_ball(const Frame2& frame, Vec2 center, double radius, double p) {
  if (p == 1.0) return BallSpec::taxicab(frame, 1.0, 1.0, center, radius);
  if (p == 2.0) return BallSpec::euclidean(frame, 1.0, 1.0, center, radius);
  if (std::isinf(p)) return BallSpec::maximum(frame, 1.0, 1.0, center, radius);
  return BallSpec::general(frame, 1.0, 1.0, center, radius, p);
}

}  // namespace

int main(int argc, char** argv) {
  const std::string out_path = argc > 1 ? argv[1] : "nested_circles.svg";

  // The running example frame: rows (3,-1) and (-1,5), normalized to unit
  // length. tau = sin of the angle between the rows (up to sign).
  const Frame2 frame({3.0, -1.0}, {-1.0, 5.0}, true);
  const Vec2 center{0.0, 0.0};
  const double radius = 1.0;

  std::cout << "frame: tau = " << frame.tau() << ", theta = " << frame.theta() << " rad\n";

  const Point x{1.0, 2.0};
  const Point y{4.0, 6.0};
  for (double p : {1.0, 2.0, kInf}) {
    const MetricSpec spec = make_ball(frame, center, radius, p).as_metric_spec();
    std::cout << "d_p(x, y) at p = " << p << ": " << distance(spec, x, y) << '\n';
  }

  // The p = 1 and p = infinity balls are parallelograms with closed-form
  // vertices; equal weights make the maximum ball a rhombus.
  const Parallelogram4 taxi = taxicab_circle(make_ball(frame, center, radius, 1.0));
  const Parallelogram4 maxi = maximum_circle(make_ball(frame, center, radius, kInf));
  std::cout << "taxicab ball: " << shape_name(taxi.shape) << ", first vertex ("
            << taxi.vertices[0].x << ", " << taxi.vertices[0].y << ")\n";
  std::cout << "maximum ball: " << shape_name(maxi.shape) << ", first vertex ("
            << maxi.vertices[0].x << ", " << maxi.vertices[0].y << ")\n";

  // The p = 2 ball is an ellipse; the inverse construction recovers the
  // frame's angle and the radius from its semi-axes.
  const EllipseParams ellipse = ellipse_from_ball(frame, center, radius);
  const BallForm recovered = ball_from_ellipse(ellipse);
  std::cout << "euclidean ball: semi-axes a = " << ellipse.a() << ", b = " << ellipse.b()
            << ", recovered radius = " << recovered.radius << '\n';

  std::vector<BoundaryCurve> curves;
  for (double p : {0.7, 1.0, 2.0, 5.0, kInf}) {
    BoundaryCurve curve;
    curve.p = p;
    if (p == 2.0)
      curve.exact_ellipse = ellipse;
    else
      curve.polyline = ball_boundary_points(make_ball(frame, center, radius, p), 256);
    curves.push_back(std::move(curve));
  }

  const BallSpec any = make_ball(frame, center, radius, 2.0);
  const std::array<Vec2, 4> qs = common_points(any);
  std::cout << "common points: (" << qs[0].x << ", " << qs[0].y << ") and 3 more, on every curve\n";

  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "cannot open " << out_path << " for writing\n";
    return 1;
  }
  RenderStyle style;
  write_svg(out, curves, style, {any.l1(), any.l2()}, {qs.begin(), qs.end()});
  std::cout << "wrote " << out_path << '\n';
  return 0;
}
