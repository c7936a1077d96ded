// geomctl: evaluate generalized Minkowski distances, render planar unit
// balls to CSV/SVG, convert between ball and conic representations, and run
// the verification suites. All outputs are deterministic given flags + seed.

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "minkgeo/minkgeo.hpp"
#include "minkgeo/spec_io.hpp"

using namespace minkgeo;

namespace {

std::string fmt15(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%#.15g", v);
  return buf;
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_real(const std::string& tok, const char* what) {
  double v = 0.0;
  const char* b = tok.data();
  const char* e = b + tok.size();
  const auto res = std::from_chars(b, e, v);
  if (tok.empty() || res.ec != std::errc{} || res.ptr != e)
    throw ParseError(std::string(what) + ": cannot parse real number from '" + tok + "'");
  return v;
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(text.substr(start, comma == std::string::npos ? comma : comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<double> parse_reals(const std::string& text, const char* what) {
  std::vector<double> out;
  for (const std::string& tok : split_commas(text)) out.push_back(parse_real(tok, what));
  return out;
}

Vec2 parse_vec2(const std::string& text, const char* what) {
  const std::vector<double> v = parse_reals(text, what);
  if (v.size() != 2) throw ParseError(std::string(what) + ": expected exactly two reals 'X,Y'");
  return {v[0], v[1]};
}

double parse_exponent(const std::string& tok) {
  if (tok == "inf") return kInf;
  const double p = parse_real(tok, "exponent");
  if (!(p > 0.0)) throw ParseError("exponent must be positive (or 'inf')");
  return p;
}

/// The running-example spec used when `verify` is given no --spec file.
SpecDocument default_document() {
  SpecDocument doc;
  doc.dimension = 2;
  doc.exponent = 2.0;
  doc.vectors = {{3.0, -1.0}, {-1.0, 5.0}};
  doc.weights = {1.0, 1.0};
  doc.normalize = true;
  return doc;
}

void print_vec2(const char* name, Vec2 v) {
  std::cout << name << " = " << fmt15(v.x) << ' ' << fmt15(v.y) << '\n';
}

void print_real(const char* name, double v) { std::cout << name << " = " << fmt15(v) << '\n'; }

// ---------------------------------------------------------------------------
// dist

struct DistArgs {
  std::string spec_path;
  std::string x, y;
};

int run_dist(const DistArgs& args) {
  const MetricSpec spec = load_metric_spec(args.spec_path);
  const Point x(parse_reals(args.x, "point X"));
  const Point y(parse_reals(args.y, "point Y"));
  std::cout << fmt15(distance(spec, x, y)) << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// ball

struct BallArgs {
  std::string spec_path;
  std::string center = "0,0";
  double radius = 1.0;
  std::string p_list = "1,2,inf";
  std::string out_path;
  std::string format = "svg";
  std::size_t samples = 256;
  double width = 800.0;
  double height = 600.0;
  bool no_lines = false;
  bool no_markers = false;
};

BallSpec make_ball_spec(const Frame2& frame, double l1, double l2, Vec2 center, double radius,
                        double p) {
  if (p == 1.0) return BallSpec::taxicab(frame, l1, l2, center, radius);
  if (p == 2.0) return BallSpec::euclidean(frame, l1, l2, center, radius);
  if (std::isinf(p)) return BallSpec::maximum(frame, l1, l2, center, radius);
  return BallSpec::general(frame, l1, l2, center, radius, p);
}

int run_ball(const BallArgs& args) {
  const SpecDocument doc = load_spec_document(args.spec_path);
  const MetricSpec mspec = to_metric_spec(doc);
  const Frame2 frame = Frame2::from_frame(mspec.frame());
  const Vec2 center = parse_vec2(args.center, "--center");
  if (!(args.radius > 0.0)) throw ParseError("--radius must be positive");
  const double l1 = mspec.weights()[0];
  const double l2 = mspec.weights()[1];

  std::vector<double> ps;
  for (const std::string& tok : split_commas(args.p_list)) ps.push_back(parse_exponent(tok));

  std::ofstream file;
  if (!args.out_path.empty()) {
    file.open(args.out_path);
    if (!file) throw ParseError("cannot open output file: " + args.out_path);
  }
  std::ostream& out = args.out_path.empty() ? std::cout : file;

  if (args.format == "csv") {
    if (ps.size() != 1) throw ParseError("csv output takes exactly one --p exponent");
    if (args.samples < 8) throw ParseError("csv output needs --samples >= 8");
    const BallSpec spec = make_ball_spec(frame, l1, l2, center, args.radius, ps[0]);
    write_csv(out, ball_boundary_points(spec, args.samples));
    return 0;
  }
  if (args.format != "svg") throw ParseError("--format must be csv or svg");

  std::vector<BoundaryCurve> curves;
  for (double p : ps) {
    const BallSpec spec = make_ball_spec(frame, l1, l2, center, args.radius, p);
    BoundaryCurve curve;
    curve.p = p;
    if (p == 1.0) {
      const Parallelogram4 para = taxicab_circle(spec);
      curve.polyline.points.assign(para.vertices.begin(), para.vertices.end());
      curve.polyline.closed = true;
    } else if (std::isinf(p)) {
      const Parallelogram4 para = maximum_circle(spec);
      curve.polyline.points.assign(para.vertices.begin(), para.vertices.end());
      curve.polyline.closed = true;
    } else if (p == 2.0) {
      curve.exact_ellipse = ellipse_from_conic(euclidean_circle_conic(spec));
    } else {
      curve.polyline = ball_boundary_points(spec, args.samples);
    }
    curves.push_back(std::move(curve));
  }

  RenderStyle style;
  style.width = args.width;
  style.height = args.height;
  style.draw_lines = !args.no_lines;
  style.draw_markers = !args.no_markers;
  const BallSpec any = make_ball_spec(frame, l1, l2, center, args.radius, ps[0]);
  const auto qs = common_points(any);
  write_svg(out, curves, style, {any.l1(), any.l2()}, {qs.begin(), qs.end()});
  return 0;
}

// ---------------------------------------------------------------------------
// convert

struct ConvertArgs {
  std::string kind;
  double a = 0.0, b = 0.0;
  double e = 0.0, f = 0.0;
  double angle = 0.0;
  std::string center = "0,0";
  double radius = 1.0;
  std::string spec_path;
  std::string point = "0,0";
  std::string dir1, dir2;
  double constant = 0.0;
  bool has_a = false, has_b = false, has_e = false, has_f = false;
  bool has_dir1 = false, has_dir2 = false, has_constant = false, has_spec = false;
};

void print_ball_form(const BallForm& ball) {
  print_vec2("v1", ball.frame.v1());
  print_vec2("v2", ball.frame.v2());
  print_vec2("center", ball.center);
  print_real("radius", ball.radius);
}

void print_ellipse(const EllipseParams& e) {
  print_real("a", e.a());
  print_real("b", e.b());
  print_real("angle", e.angle());
  print_vec2("center", e.center());
}

int run_convert(const ConvertArgs& args) {
  const Vec2 center = parse_vec2(args.center, "--center");
  auto need = [](bool present, const char* flag) {
    if (!present) throw ParseError(std::string("this conversion requires ") + flag);
  };
  if (args.kind == "ellipse2ball") {
    need(args.has_a, "--a");
    need(args.has_b, "--b");
    print_ball_form(ball_from_ellipse(EllipseParams(center, args.a, args.b, args.angle)));
    return 0;
  }
  if (args.kind == "ball2ellipse") {
    need(args.has_spec, "--spec");
    const MetricSpec mspec = load_metric_spec(args.spec_path);
    const Frame2 frame = Frame2::from_frame(mspec.frame());
    for (double w : mspec.weights())
      if (w != 1.0) throw ParseError("ball2ellipse requires unit weights in the spec");
    if (!(args.radius > 0.0)) throw ParseError("--radius must be positive");
    print_ellipse(ellipse_from_ball(frame, center, args.radius));
    return 0;
  }
  if (args.kind == "rect2taxi") {
    need(args.has_a, "--a");
    need(args.has_b, "--b");
    print_ball_form(taxicab_ball_from_rectangle(RectangleSpec(center, args.a, args.b, args.angle)));
    return 0;
  }
  if (args.kind == "rhomb2max") {
    need(args.has_e, "--e");
    need(args.has_f, "--f");
    print_ball_form(maximum_ball_from_rhombus(RhombusSpec(center, args.e, args.f, args.angle)));
    return 0;
  }
  if (args.kind == "ellipse2eccx") {
    need(args.has_a, "--a");
    need(args.has_b, "--b");
    const EccentrixForm form =
        eccentrix_form_from_ellipse(EllipseParams(center, args.a, args.b, args.angle));
    print_vec2("line1 point", form.lines.point());
    print_vec2("line1 dir", form.lines.dir1());
    print_vec2("line2 point", form.lines.point());
    print_vec2("line2 dir", form.lines.dir2());
    print_real("constant", form.constant);
    return 0;
  }
  if (args.kind == "eccx2ellipse") {
    need(args.has_dir1, "--dir1");
    need(args.has_dir2, "--dir2");
    need(args.has_constant, "--constant");
    const LinePair lines(parse_vec2(args.point, "--point"), parse_vec2(args.dir1, "--dir1"),
                         parse_vec2(args.dir2, "--dir2"));
    print_ellipse(ellipse_from_eccentrix_form(EccentrixForm(lines, args.constant)));
    return 0;
  }
  throw ParseError("unknown conversion kind: " + args.kind);
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::string suite = "all";
  std::string spec_path;
  std::uint64_t seed = 0;
  std::size_t count = 10000;
};

struct SuiteRun {
  bool all_passed = true;

  void emit(const PropertyReport& rep) {
    std::cout << "PROPERTY " << rep.property << (rep.passed ? " PASS" : " FAIL")
              << " max_violation=" << fmt17(rep.max_violation) << '\n';
    all_passed = all_passed && rep.passed;
  }

  /// A raw aggregate that did not come out of a PropertyReport.
  void emit(const char* name, double max_violation, double tolerance) {
    PropertyReport rep{name, 0, max_violation, tolerance, max_violation <= tolerance, {}};
    emit(rep);
  }
};

void run_axioms(SuiteRun& run, const MetricSpec& spec, const SampleConfig& cfg) {
  if (spec.is_metric()) {
    for (const PropertyReport& rep : check_metric_axioms_detailed(spec, cfg)) run.emit(rep);
    return;
  }
  // Below p = 1 the triangle inequality must fail; report the witness.
  const PropertyReport rep = find_triangle_violation(spec, cfg);
  std::cout << "PROPERTY " << rep.property << " FAIL max_violation=" << fmt17(rep.max_violation)
            << '\n';
  if (rep.witness.size() == 3) {
    const char* names[3] = {"witness x", "witness y", "witness z"};
    for (std::size_t i = 0; i < 3; ++i) {
      std::cout << names[i] << " =";
      for (std::size_t j = 0; j < rep.witness[i].dimension(); ++j)
        std::cout << ' ' << fmt15(rep.witness[i][j]);
      std::cout << '\n';
    }
  }
  run.all_passed = false;
}

void run_plimit(SuiteRun& run, const MetricSpec& spec, const SampleConfig& cfg) {
  std::vector<double> schedule;
  for (double p = 1.0; p <= 1024.0; p *= 2.0) schedule.push_back(p);
  const CounterRng rng(cfg.seed);
  const std::size_t n = spec.dimension();
  PropertyReport worst{"p-limit-sandwich", cfg.count, 0.0, 1e-12, true, {}};
  for (std::uint64_t t = 0; t < cfg.count; ++t) {
    std::vector<double> xc(n), yc(n);
    for (std::size_t j = 0; j < n; ++j) {
      xc[j] = rng.uniform(t, j, -cfg.box_half_width, cfg.box_half_width);
      yc[j] = rng.uniform(t, n + j, -cfg.box_half_width, cfg.box_half_width);
    }
    const PropertyReport rep =
        check_p_limit(spec.frame(), std::vector<double>(spec.weights().begin(), spec.weights().end()),
                      Point(xc), Point(yc), schedule);
    worst.max_violation = std::max(worst.max_violation, rep.max_violation);
  }
  worst.passed = worst.max_violation <= worst.tolerance;
  run.emit(worst);
}

void run_balls(SuiteRun& run, const MetricSpec& mspec, const SampleConfig& cfg) {
  const Frame2 frame = Frame2::from_frame(mspec.frame());
  const double l1 = mspec.weights()[0];
  const double l2 = mspec.weights()[1];
  const Vec2 center{0.5, -0.25};
  const double radius = 1.5;
  const BallSpec taxi = BallSpec::taxicab(frame, l1, l2, center, radius);
  run.emit(check_ball_membership(taxi, taxicab_circle(taxi), cfg.count, cfg.seed));
  const BallSpec maxi = BallSpec::maximum(frame, l1, l2, center, radius);
  run.emit(check_ball_membership(maxi, maximum_circle(maxi), cfg.count, cfg.seed));
  const BallSpec round = BallSpec::euclidean(frame, l1, l2, center, radius);
  const EllipseParams e = ellipse_from_conic(euclidean_circle_conic(round));
  run.emit(check_ball_membership(round, e, cfg.count, cfg.seed));
  for (double p : {0.7, 3.0}) {
    const BallSpec spec = BallSpec::general(frame, l1, l2, center, radius, p);
    run.emit(check_ball_membership(spec, ball_boundary_points(spec, 512)));
  }
}

void run_conics(SuiteRun& run, const SampleConfig& cfg) {
  const CounterRng rng(cfg.seed);
  double relations = 0.0;
  double apollonius = 0.0;
  double asymptotes = 0.0;
  for (std::uint64_t t = 0; t < cfg.count; ++t) {
    const double a = rng.uniform(t, 0, 0.5, 5.0);
    const double b = a * rng.uniform(t, 1, 0.2, 0.95);
    const double angle = rng.uniform(t, 2, 0.0, std::numbers::pi);
    const Vec2 c{rng.uniform(t, 3, -10.0, 10.0), rng.uniform(t, 4, -10.0, 10.0)};
    const EllipseParams e(c, a, b, angle);
    const BallForm ball = ball_from_ellipse(e);
    const double r = ball.radius;
    // Harmonic-mean radius law, ordering, half-angle, eccentric radius.
    relations = std::max(relations,
                         std::abs(r * r * (a * a + b * b) / (2.0 * a * a * b * b) - 1.0));
    if (b > r || r > a) relations = std::max(relations, 1.0);
    relations = std::max(relations, std::abs(std::tan(ball.frame.theta() / 2.0) * a / b - 1.0));
    const double R = eccentric_radius(e);
    relations = std::max(relations, std::abs(R * r / (a * b) - 1.0));
    relations = std::max(relations, std::abs(eccentricity_from_eccentrix_angle(ball.frame.theta()) -
                                             eccentricity(e)));
    const auto chords = conjugate_diameter_chords(e);
    const Vec2 s1 = chords[0].p1 - chords[0].midpoint();
    const Vec2 s2 = chords[1].p1 - chords[1].midpoint();
    apollonius = std::max(apollonius,
                          std::abs((dot(s1, s1) + dot(s2, s2)) / (a * a + b * b) - 1.0));
    apollonius = std::max(apollonius, std::abs(std::abs(cross(s1, s2)) / (a * b) - 1.0));
    // A random line pair and its two-line hyperbola.
    for (std::uint64_t attempt = 0;; ++attempt) {
      const double a1 = rng.uniform(t, 10 + 2 * attempt, 0.0, 2.0 * std::numbers::pi);
      const double a2 = rng.uniform(t, 11 + 2 * attempt, 0.0, 2.0 * std::numbers::pi);
      if (std::abs(std::sin(a1 - a2)) < 0.05) continue;
      const LinePair lines(c, {std::cos(a1), std::sin(a1)}, {std::cos(a2), std::sin(a2)});
      const double k = rng.uniform(t, 9, 0.1, 5.0);
      const HyperbolaForm h = hyperbola_from_line_pair(lines, k);
      if (!(h.conic.delta() < 0.0)) asymptotes = std::max(asymptotes, 1.0);
      if (!h.axis_pair) asymptotes = std::max(asymptotes, std::abs(h.slope1 * h.slope2 + 1.0));
      break;
    }
  }
  run.emit("ellipse-relations", relations, 1e-10);
  run.emit("apollonius", apollonius, 1e-10);
  run.emit("hyperbola-asymptotes", asymptotes, 1e-10);
}

int run_verify(const VerifyArgs& args) {
  const SpecDocument doc =
      args.spec_path.empty() ? default_document() : load_spec_document(args.spec_path);
  const MetricSpec mspec = to_metric_spec(doc);
  SampleConfig cfg;
  cfg.seed = args.seed;
  cfg.count = args.count;
  cfg.dimension = mspec.dimension();
  SuiteRun run;
  const bool planar = mspec.dimension() == 2;
  if (args.suite == "axioms" || args.suite == "all") run_axioms(run, mspec, cfg);
  if (args.suite == "plimit" || args.suite == "all") run_plimit(run, mspec, cfg);
  if (args.suite == "invariance" || args.suite == "all") run.emit(check_invariance(mspec, cfg));
  if (args.suite == "balls" || (args.suite == "all" && planar)) {
    if (!planar) throw ParseError("the balls suite needs a 2-dimensional spec");
    run_balls(run, mspec, cfg);
  }
  if (args.suite == "conics" || (args.suite == "all" && planar)) run_conics(run, cfg);
  return run.all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized Minkowski distances and their planar unit balls"};
  app.require_subcommand(1);

  DistArgs dist_args;
  CLI::App* dist_cmd = app.add_subcommand("dist", "evaluate the distance between two points");
  dist_cmd->add_option("--spec", dist_args.spec_path, "JSON spec file")->required();
  dist_cmd->add_option("X", dist_args.x, "first point, comma-separated reals")->required();
  dist_cmd->add_option("Y", dist_args.y, "second point, comma-separated reals")->required();

  BallArgs ball_args;
  CLI::App* ball_cmd = app.add_subcommand("ball", "construct and render unit-ball boundaries");
  ball_cmd->add_option("--spec", ball_args.spec_path, "JSON spec file (2-D frame and weights)")
      ->required();
  ball_cmd->add_option("--center", ball_args.center, "ball center X,Y (default 0,0)");
  ball_cmd->add_option("--radius", ball_args.radius, "ball radius (default 1)");
  ball_cmd->add_option("--p", ball_args.p_list,
                       "comma-separated exponents, 'inf' allowed; the spec file's exponent is "
                       "ignored (default 1,2,inf)");
  ball_cmd->add_option("--out", ball_args.out_path, "output file (default stdout)");
  ball_cmd->add_option("--format", ball_args.format, "csv or svg (default svg)");
  ball_cmd->add_option("--samples", ball_args.samples,
                       "boundary samples for generic exponents (default 256)");
  ball_cmd->add_option("--width", ball_args.width, "svg width in pixels");
  ball_cmd->add_option("--height", ball_args.height, "svg height in pixels");
  ball_cmd->add_flag("--no-lines", ball_args.no_lines, "omit the through-center lines l1, l2");
  ball_cmd->add_flag("--no-markers", ball_args.no_markers, "omit the four common Q points");

  ConvertArgs conv_args;
  CLI::App* conv_cmd = app.add_subcommand("convert", "convert between representations");
  conv_cmd
      ->add_option("--kind", conv_args.kind,
                   "ellipse2ball | ball2ellipse | rect2taxi | rhomb2max | ellipse2eccx | "
                   "eccx2ellipse")
      ->required();
  auto* opt_a = conv_cmd->add_option("--a", conv_args.a, "ellipse/rectangle semi-axis a");
  auto* opt_b = conv_cmd->add_option("--b", conv_args.b, "ellipse/rectangle semi-axis b");
  auto* opt_e = conv_cmd->add_option("--e", conv_args.e, "rhombus half diagonal e");
  auto* opt_f = conv_cmd->add_option("--f", conv_args.f, "rhombus half diagonal f");
  conv_cmd->add_option("--angle", conv_args.angle, "rotation angle in radians (default 0)");
  conv_cmd->add_option("--center", conv_args.center, "center X,Y (default 0,0)");
  conv_cmd->add_option("--radius", conv_args.radius, "ball radius for ball2ellipse (default 1)");
  auto* opt_spec = conv_cmd->add_option("--spec", conv_args.spec_path,
                                        "JSON spec file for ball2ellipse (unit weights)");
  conv_cmd->add_option("--point", conv_args.point, "line intersection X,Y for eccx2ellipse");
  auto* opt_d1 = conv_cmd->add_option("--dir1", conv_args.dir1, "first line direction X,Y");
  auto* opt_d2 = conv_cmd->add_option("--dir2", conv_args.dir2, "second line direction X,Y");
  auto* opt_c = conv_cmd->add_option("--constant", conv_args.constant,
                                     "squared-distance sum for eccx2ellipse");

  VerifyArgs verify_args;
  CLI::App* verify_cmd = app.add_subcommand("verify", "run verification suites");
  verify_cmd
      ->add_option("--suite", verify_args.suite,
                   "axioms | plimit | balls | invariance | conics | all (default all)")
      ->check(CLI::IsMember({"axioms", "plimit", "balls", "invariance", "conics", "all"}));
  verify_cmd->add_option("--spec", verify_args.spec_path,
                         "JSON spec file (default: the normalized (3,-1),(-1,5) frame, p=2)");
  verify_cmd->add_option("--seed", verify_args.seed, "sampling seed (default 0)");
  verify_cmd->add_option("--count", verify_args.count, "trials per property (default 10000)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    conv_args.has_a = opt_a->count() > 0;
    conv_args.has_b = opt_b->count() > 0;
    conv_args.has_e = opt_e->count() > 0;
    conv_args.has_f = opt_f->count() > 0;
    conv_args.has_spec = opt_spec->count() > 0;
    conv_args.has_dir1 = opt_d1->count() > 0;
    conv_args.has_dir2 = opt_d2->count() > 0;
    conv_args.has_constant = opt_c->count() > 0;
    if (dist_cmd->parsed()) return run_dist(dist_args);
    if (ball_cmd->parsed()) return run_ball(ball_args);
    if (conv_cmd->parsed()) return run_convert(conv_args);
    if (verify_cmd->parsed()) return run_verify(verify_args);
    return 2;
  } catch (const FrameError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
