// pcm: command line front end for rendering scenes and running probes.
//
// Exit codes: 0 success, 1 failed check or other error, 2 invalid input,
// 3 truncated computation.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pcm/pcm.hpp"

using namespace pcm;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitTruncated = 3;

struct SceneSource {
  std::string file;
  std::string gallery_name;

  void attach(CLI::App* app) {
    app->add_option("scene", file, "scene JSON file");
    app->add_option("--gallery,-g", gallery_name, "built-in scene name (see `pcm gallery --list`)");
  }

  SceneConfig load() const {
    if (!file.empty() && !gallery_name.empty()) throw ValidationError("give either a scene file or --gallery, not both");
    if (!gallery_name.empty()) {
      try {
        return gallery(gallery_name);
      } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
      }
    }
    if (file.empty()) throw ValidationError("no scene given (pass a JSON file or --gallery NAME)");
    return load_scene(file);
  }
};

SpherePoint parse_point(const std::string& s) {
  if (s == "inf") return SpherePoint::infinity();
  double x = 0, y = 0;
  char comma = 0;
  std::istringstream is(s);
  if (!(is >> x >> comma >> y) || comma != ',') throw ValidationError("expected a point as X,Y or inf: " + s);
  return SpherePoint(cplx(x, y));
}

std::pair<int, int> parse_res(const std::string& s) {
  int w = 0, h = 0;
  char x = 0;
  std::istringstream is(s);
  if (!(is >> w >> x >> h) || (x != 'x' && x != 'X') || w <= 0 || h <= 0) {
    throw ValidationError("expected a resolution as WxH: " + s);
  }
  return {w, h};
}

// The single boundary circle of a two-region scene, as the deformation
// and Schottky probes need it.
GenCircle single_boundary(const PiecewiseMap& f) {
  const auto circles = f.partition().boundary_circles();
  if (f.size() != 2 || circles.size() != 1) {
    throw ValidationError("this probe needs a two-region scene with a single boundary circle");
  }
  return circles[0];
}

void print_line(const char* fmt, auto... args) {
  std::printf(fmt, args...);
  std::printf("\n");
}

int cmd_render(const SceneSource& src, const std::string& out, const std::string& res, int depth, int prefix,
               std::size_t budget) {
  SceneConfig s = src.load();
  if (!res.empty()) std::tie(s.width, s.height) = parse_res(res);
  if (depth >= 0) s.depth = depth;
  if (prefix > 0) s.prefix = prefix;
  const std::string path = !out.empty() ? out : (!s.output.empty() ? s.output : (s.name.empty() ? "out" : s.name) + ".ppm");
  const RenderResult r = render(s, budget);
  write_file(path, r.image.ppm());
  print_line("wrote %s (%dx%d, %zu arcs, %zu periodic marks)", path.c_str(), s.width, s.height, r.arcs,
             r.periodic_marks);
  if (r.truncated) {
    std::fprintf(stderr, "warning: %s; overlay drawn at a lower depth\n", r.warning.c_str());
    return kExitTruncated;
  }
  return 0;
}

int cmd_gallery(bool list, const std::string& name, const std::string& out) {
  if (list || name.empty()) {
    for (const auto& n : gallery_names()) {
      const SceneConfig s = gallery(n);
      print_line("%-20s %s", n.c_str(), s.notes.c_str());
    }
    return 0;
  }
  SceneConfig s;
  try {
    s = gallery(name);
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }
  const std::string text = serialize_scene(s);
  if (out.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    write_file(out, text);
    print_line("wrote %s", out.c_str());
  }
  return 0;
}

int cmd_components(const SceneSource& src, const std::string& at, const std::string& res, int prefix) {
  SceneConfig s = src.load();
  if (!res.empty()) std::tie(s.width, s.height) = parse_res(res);
  if (prefix > 0) s.prefix = prefix;
  const PiecewiseMap f = s.build();
  const std::optional<SpherePoint> probe = at.empty() ? s.probe : std::optional<SpherePoint>(parse_point(at));
  if (!probe) throw ValidationError("no probe point (pass --at X,Y or set \"probe\" in the scene)");
  const ItineraryGrid g = raster_itineraries(f, s.viewport, s.width, s.height, s.prefix);
  const ComponentMap cm = components(g);
  const int label = component_at(g, cm, *probe);
  print_line("classes %zu  components %zu", g.classes.size(), cm.comps.size());
  if (label < 0) {
    print_line("no component found at %s (on the pre-discontinuity set or too small)", to_string(*probe).c_str());
    return kExitFail;
  }
  const ComponentReport r = classify_component(f, g, cm, label);
  const Connectivity c = connectivity(f, g, cm, label);
  std::string itin;
  for (char ch : r.prefix) itin.push_back(static_cast<char>('0' + ch));
  print_line("component %d  area %zu px", label, cm.comps[static_cast<std::size_t>(label)].area);
  print_line("itinerary    %s", itin.c_str());
  print_line("case         %s%s", to_string(r.kase), r.low_confidence ? " (low confidence)" : "");
  print_line("period       %d", r.period);
  print_line("return map   %s", r.return_type ? to_string(*r.return_type) : "none");
  for (const auto& [pt, loc] : r.fixed) print_line("fixed point  %s  %s", to_string(pt).c_str(), to_string(loc));
  print_line("connectivity %s", c.text().c_str());
  return 0;
}

int cmd_strata(const SceneSource& src, int depth, const std::string& out, std::size_t budget) {
  SceneConfig s = src.load();
  if (depth >= 0) s.depth = depth;
  const PrediscontinuitySet pd = pd_up_to(s.build(), s.depth, budget);
  const std::string text = export_arcs(pd);
  if (out.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    write_file(out, text);
    print_line("wrote %s", out.c_str());
  }
  if (pd.stabilized_at) std::fprintf(stderr, "strata stabilize at level %d\n", *pd.stabilized_at);
  return 0;
}

struct ProbeOptions {
  std::vector<int> depths{4, 6, 8, 10};
  int words = 8;
  int seeds = 100;
  int iterations = 2000;
  unsigned rng_seed = 1;
  double radius = 3.0;
  int depth = 8;
  double sign = 1.0;
  std::vector<double> schedule{0.2, 0.1, 0.05, 0.025};
  std::string against_file, against_gallery;
  std::string res = "1024x1024";
  int prefix = 16;
};

int probe_alpha(const PiecewiseMap& f, const ProbeOptions& o) {
  const auto lim = limit_set_approx(f.branches(), o.words);
  print_line("limit-set points %zu (words up to length %d)", lim.size(), o.words);
  print_line("%6s %12s %14s %14s", "depth", "samples", "shell->limit", "dR<->limit");
  for (const auto& r : alpha_limit_probe(f, o.depths, lim)) {
    if (r.shell_points == 0) {
      print_line("%6d %12s %14s %14.6f", r.depth, "0", "empty", r.boundary_to_limit);
    } else {
      print_line("%6d %12zu %14.6f %14.6f", r.depth, r.shell_points, r.shell_to_limit, r.boundary_to_limit);
    }
  }
  return 0;
}

int probe_omega(const PiecewiseMap& f, const ProbeOptions& o) {
  const auto lim = limit_set_approx(f.branches(), o.words);
  std::mt19937_64 rng(o.rng_seed);
  std::uniform_real_distribution<double> u(-o.radius, o.radius);
  std::vector<SpherePoint> seeds;
  for (int i = 0; i < o.seeds; ++i) seeds.emplace_back(cplx(u(rng), u(rng)));
  const OmegaReport r = omega_limit_probe(f, seeds, static_cast<std::size_t>(o.iterations), lim);
  print_line("seeds %d  iterations %d  limit-set points %zu", o.seeds, o.iterations, lim.size());
  print_line("max tail->limit distance %.6g", r.max_distance);
  return 0;
}

int probe_continuity(const PiecewiseMap& f, const ProbeOptions& o) {
  const GenCircle b = single_boundary(f).canonical();
  if (b.is_line()) throw ValidationError("continuity probe deforms a circle's radius; the boundary is a line");
  const cplx c = b.centre();
  const double r0 = b.radius();
  const Side side = f.partition().region(0).constraints.at(0).side;
  DeformationSpec spec{[=](double e) { return GenCircle::circle(c, r0 + o.sign * e); }, side, o.schedule};
  const auto rows = continuity_probe(f.branch(0), f.branch(1), spec, o.depth);
  print_line("radius %.6g %s eps, depth %d", r0, o.sign > 0 ? "+" : "-", o.depth);
  print_line("%10s %14s %12s %14s", "eps", "d_H", "spacing", "dR_eps->limit");
  for (const auto& row : rows) {
    print_line("%10.4g %14.6f %12.3g %14.6f", row.eps, row.distance, row.spacing, row.boundary_to_limit);
  }
  return 0;
}

void print_schottky(const char* label, const SchottkyResult& r) {
  if (!r.found) {
    print_line("%s: pairing not detected (%s)", label, r.reason.c_str());
    return;
  }
  print_line("%s: pairing found; boundary in fundamental region: %s", label, r.boundary_in_fundamental_region ? "yes" : "no");
  for (const auto& c : r.circles) print_line("  circle centre %s radius %.6g", to_string(SpherePoint(c.centre)).c_str(), c.radius);
}

int probe_schottky(const PiecewiseMap& f) {
  if (f.size() != 2) throw ValidationError("schottky probe needs exactly two branches");
  const auto circles = f.partition().boundary_circles();
  const std::optional<GenCircle> b = circles.size() == 1 ? std::optional<GenCircle>(circles[0]) : std::nullopt;
  print_schottky("isometric circles", schottky_check(f.branch(0), f.branch(1), b));
  return 0;
}

int probe_stability(const PiecewiseMap& f, const SceneConfig& s, const ProbeOptions& o) {
  SceneSource other{o.against_file, o.against_gallery};
  const PiecewiseMap fp = other.load().build();
  const auto [w, h] = parse_res(o.res);
  const StabilityReport r = structural_stability_probe(f, fp, s.viewport, w, h, o.prefix, o.depth);
  print_line("itinerary agreement %.4f over %zu pixels (K=%d, %dx%d)", r.agreement, r.compared, o.prefix, w, h);
  for (std::size_t n = 0; n < r.drift.size(); ++n) print_line("drift PD_%zu %.6f", n, r.drift[n]);
  print_schottky("first map", r.schottky_f);
  print_schottky("second map", r.schottky_g);
  print_line("%s", r.consistent_with_conjugacy ? "consistent with conjugacy (not a proof)"
                                                : "not consistent with conjugacy at these settings");
  return 0;
}

// Invariant checks on one scene. Prints one line per check.
int cmd_verify(const SceneSource& src) {
  const SceneConfig s = src.load();
  const PiecewiseMap f = s.build();
  int failures = 0;
  auto report = [&](const std::string& name, bool ok, const std::string& detail) {
    print_line("%s %-28s %s", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    failures += ok ? 0 : 1;
  };
  report("partition", true, "regions cover the sphere without overlap");

  // Semiconjugacy: itinerary(F(x)) is the shift of itinerary(x).
  {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> ui(0, 1023);
    int bad = 0, used = 0;
    for (int i = 0; i < 1000; ++i) {
      const SpherePoint p = s.viewport.pixel_center(ui(rng), ui(rng), 1024, 1024);
      const auto a = f.itinerary(p, 21), b = f.itinerary(f(p), 20);
      if (a.contaminated() || b.contaminated()) continue;
      ++used;
      if (!std::equal(b.symbols.begin(), b.symbols.end(), a.symbols.begin() + 1)) ++bad;
    }
    report("semiconjugacy", bad == 0, std::to_string(used) + " points, " + std::to_string(bad) + " mismatches");
  }

  // Forward images of each shell lie on the shallower strata.
  {
    const int n = std::min(s.depth, 6);
    const PrediscontinuitySet pd = pd_up_to(f, n);
    double worst = 0.0;
    for (int level = 1; level <= n; ++level) {
      const ArcStratum* sh = pd.shell(level);
      if (!sh) continue;
      const ArcSetIndex idx(pd.arcs_up_to(level - 1), 0.01);
      for (const auto& a : sh->arcs()) {
        const auto pts = a.sample(0.01);
        for (std::size_t k = 1; k + 1 < pts.size(); ++k) worst = std::max(worst, idx.distance(f(pts[k])));
      }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "depth %d, worst distance %.3g", n, worst);
    report("forward invariance", worst <= 1e-7, buf);
  }

  // Rendering twice gives identical bytes.
  {
    SceneConfig small = s;
    small.width = std::min(s.width, 256);
    small.height = std::min(s.height, 256);
    const bool same = render(small).image.rgb == render(small).image.rgb;
    report("deterministic render", same, "256x256 rendered twice");
  }
  return failures == 0 ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Piecewise conformal maps on the Riemann sphere: render scenes and run probes"};
  app.require_subcommand(1);

  SceneSource render_src;
  std::string render_out, render_res;
  int render_depth = -1, render_prefix = 0;
  auto* render_cmd = app.add_subcommand("render", "render a scene to a binary PPM");
  render_src.attach(render_cmd);
  render_cmd->add_option("--out,-o", render_out, "output path (default: the scene's output field)");
  render_cmd->add_option("--res", render_res, "resolution WxH");
  render_cmd->add_option("--depth", render_depth, "pre-discontinuity overlay depth");
  render_cmd->add_option("--prefix", render_prefix, "itinerary prefix length K");
  std::size_t render_budget = kDefaultArcBudget;
  render_cmd->add_option("--arc-budget", render_budget, "maximum arcs per overlay stratum")->check(CLI::PositiveNumber);

  bool gallery_list = false;
  std::string gallery_name, gallery_out;
  auto* gallery_cmd = app.add_subcommand("gallery", "list built-in scenes or print one as JSON");
  gallery_cmd->add_flag("--list,-l", gallery_list, "list scene names");
  gallery_cmd->add_option("name", gallery_name, "scene to print");
  gallery_cmd->add_option("--out,-o", gallery_out, "write the JSON to a file");

  SceneSource comp_src;
  std::string comp_at, comp_res;
  int comp_prefix = 0;
  auto* comp_cmd = app.add_subcommand("components", "classify the regular component at a point");
  comp_src.attach(comp_cmd);
  comp_cmd->add_option("--at", comp_at, "point X,Y (default: the scene's probe)");
  comp_cmd->add_option("--res", comp_res, "resolution WxH");
  comp_cmd->add_option("--prefix", comp_prefix, "itinerary prefix length K");

  SceneSource strata_src;
  int strata_depth = -1;
  std::string strata_out;
  auto* strata_cmd = app.add_subcommand("strata", "export pre-discontinuity arcs as text");
  strata_src.attach(strata_cmd);
  strata_cmd->add_option("--depth", strata_depth, "deepest level");
  strata_cmd->add_option("--out,-o", strata_out, "output path (default: stdout)");
  std::size_t strata_budget = kDefaultArcBudget;
  strata_cmd->add_option("--arc-budget", strata_budget, "maximum arcs per stratum")->check(CLI::PositiveNumber);

  SceneSource probe_src;
  std::string probe_kind;
  ProbeOptions po;
  auto* probe_cmd = app.add_subcommand("probe", "numerical probes: alpha, omega, continuity, schottky, stability");
  probe_cmd->add_option("kind", probe_kind, "probe name")
      ->required()
      ->check(CLI::IsMember({"alpha", "omega", "continuity", "schottky", "stability"}));
  probe_src.attach(probe_cmd);
  probe_cmd->add_option("--depths", po.depths, "alpha: shell depths")->delimiter(',');
  probe_cmd->add_option("--words", po.words, "maximum word length for the limit set");
  probe_cmd->add_option("--seeds", po.seeds, "omega: number of random seeds");
  probe_cmd->add_option("--iter", po.iterations, "omega: iterations per seed");
  probe_cmd->add_option("--rng", po.rng_seed, "omega: random seed");
  probe_cmd->add_option("--radius", po.radius, "omega: seeds are drawn from [-r, r]^2");
  probe_cmd->add_option("--depth", po.depth, "continuity/stability: strata depth");
  probe_cmd->add_option("--sign", po.sign, "continuity: +1 grows the boundary radius, -1 shrinks it");
  probe_cmd->add_option("--schedule", po.schedule, "continuity: eps values")->delimiter(',');
  probe_cmd->add_option("--against", po.against_file, "stability: second scene file");
  probe_cmd->add_option("--against-gallery", po.against_gallery, "stability: second built-in scene");
  probe_cmd->add_option("--res", po.res, "stability: raster resolution WxH");
  probe_cmd->add_option("--prefix", po.prefix, "stability: itinerary prefix length K");

  SceneSource verify_src;
  auto* verify_cmd = app.add_subcommand("verify", "run invariant checks on a scene");
  verify_src.attach(verify_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*render_cmd) return cmd_render(render_src, render_out, render_res, render_depth, render_prefix, render_budget);
    if (*gallery_cmd) return cmd_gallery(gallery_list, gallery_name, gallery_out);
    if (*comp_cmd) return cmd_components(comp_src, comp_at, comp_res, comp_prefix);
    if (*strata_cmd) return cmd_strata(strata_src, strata_depth, strata_out, strata_budget);
    if (*verify_cmd) return cmd_verify(verify_src);
    if (*probe_cmd) {
      const SceneConfig s = probe_src.load();
      const PiecewiseMap f = s.build();
      if (probe_kind == "alpha") return probe_alpha(f, po);
      if (probe_kind == "omega") return probe_omega(f, po);
      if (probe_kind == "continuity") return probe_continuity(f, po);
      if (probe_kind == "schottky") return probe_schottky(f);
      return probe_stability(f, s, po);
    }
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInvalid;
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInvalid;
  } catch (const TruncationError& e) {
    std::fprintf(stderr, "truncated: %s\n", e.what());
    return kExitTruncated;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFail;
  }
  return 0;
}
