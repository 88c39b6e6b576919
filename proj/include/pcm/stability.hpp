// Hausdorff distances between sampled compacts, boundary-deformation tables
// and the structural-stability probe.
#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pcm/fatou.hpp"
#include "pcm/kleinian.hpp"
#include "pcm/prediscontinuity.hpp"
#include "pcm/spatial.hpp"

namespace pcm {

inline double hausdorff(const std::vector<SpherePoint>& a, const std::vector<SpherePoint>& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("hausdorff: empty point set");
  const PointIndex ia(a), ib(b);
  return std::max(directed_hausdorff(a, ib), directed_hausdorff(b, ia));
}

struct ArcDistance {
  double value = 0.0;
  double spacing = 0.0;  // sampling gap used on the measured side
};

namespace detail {

inline double directed_arc_distance(const std::vector<Arc>& from, const ArcSetIndex& to, double spacing) {
  std::vector<SpherePoint> pts;
  for (const auto& a : from) {
    const auto s = a.sample(spacing);
    pts.insert(pts.end(), s.begin(), s.end());
  }
  std::vector<double> d(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) { d[i] = to.distance(pts[i]); });
  double worst = 0.0;
  for (double x : d) worst = std::max(worst, x);
  return worst;
}

}  // namespace detail

// Hausdorff distance between two arc unions. Each direction measures
// samples of one side against the exact arcs of the other, so the only
// error is the sampling gap, which is refined until it is below 10% of the
// result (or `min_spacing` is reached).
inline ArcDistance arc_hausdorff(const std::vector<Arc>& a, const std::vector<Arc>& b, double spacing = 0.01,
                                 double min_spacing = 2.5e-4) {
  if (a.empty() || b.empty()) throw std::invalid_argument("arc_hausdorff: empty arc set");
  ArcDistance out;
  for (;;) {
    const ArcSetIndex ia(a, spacing), ib(b, spacing);
    out.value = std::max(detail::directed_arc_distance(a, ib, spacing), detail::directed_arc_distance(b, ia, spacing));
    out.spacing = spacing;
    if (out.value < 1e-12 || spacing <= 0.1 * out.value || spacing <= min_spacing) return out;
    spacing = std::max(min_spacing, 0.09 * out.value);
  }
}

// A one-parameter family of boundary circles; eps = 0 is the base scene.
struct DeformationSpec {
  std::function<GenCircle(double)> boundary;
  Side side = Side::negative;  // side of the circle carrying the first branch
  std::vector<double> schedule;
};

struct ContinuityRow {
  double eps = 0.0;
  double distance = 0.0;
  double spacing = 0.0;
  double boundary_to_limit = 0.0;
};

inline PiecewiseMap deformed(const Moebius& f, const Moebius& g, const DeformationSpec& spec, double eps) {
  PiecewiseMap m = PiecewiseMap::two_sided(spec.boundary(eps), f, g, spec.side);
  m.partition().validate();
  return m;
}

// Table of d_H(PD_N(F_eps), PD_N(F_0)) over the schedule, with the distance
// from each deformed boundary to an approximate limit set for context.
inline std::vector<ContinuityRow> continuity_probe(const Moebius& f, const Moebius& g, const DeformationSpec& spec,
                                                   int n, int limit_len = 8) {
  const PointIndex lim(limit_set_approx({f, g}, limit_len));
  const auto base = pd_up_to(deformed(f, g, spec, 0.0), n).arcs_up_to(n);
  std::vector<ContinuityRow> rows;
  for (double eps : spec.schedule) {
    const PiecewiseMap fe = deformed(f, g, spec, eps);
    const auto arcs = pd_up_to(fe, n).arcs_up_to(n);
    ContinuityRow r;
    r.eps = eps;
    if (eps == 0.0) {
      r.distance = 0.0;
    } else {
      const ArcDistance d = arc_hausdorff(arcs, base);
      r.distance = d.value;
      r.spacing = d.spacing;
    }
    double bd = INFINITY;
    for (const auto& p : Arc::full(spec.boundary(eps)).sample(0.002)) bd = std::min(bd, lim.nearest(p).first);
    r.boundary_to_limit = bd;
    rows.push_back(r);
  }
  return rows;
}

struct StabilityReport {
  double agreement = 0.0;            // fraction of comparable pixels with equal prefix
  std::size_t compared = 0;
  std::vector<double> drift;         // drift[n] = d_H(PD_n(F), PD_n(F'))
  SchottkyResult schottky_f, schottky_g;
  bool consistent_with_conjugacy = false;
};

// Compares F and F' on a shared partition. Agreement excludes pixels
// contaminated in either grid. Reported as consistency with conjugacy,
// never as a proof of it.
inline StabilityReport structural_stability_probe(const PiecewiseMap& f, const PiecewiseMap& fp, const Viewport& view,
                                                  int w, int h, int k, int n) {
  if (f.size() != 2 || fp.size() != 2) throw ValidationError("stability probe expects two-region maps");
  StabilityReport r;
  const ItineraryGrid ga = raster_itineraries(f, view, w, h, k);
  const ItineraryGrid gb = raster_itineraries(fp, view, w, h, k);
  std::size_t same = 0;
  for (std::size_t p = 0; p < ga.cls.size(); ++p) {
    if (ga.contaminated[p] || gb.contaminated[p]) continue;
    ++r.compared;
    if (ga.classes[ga.cls[p]] == gb.classes[gb.cls[p]]) ++same;
  }
  r.agreement = r.compared ? static_cast<double>(same) / static_cast<double>(r.compared) : 0.0;
  const auto pa = pd_up_to(f, n), pb = pd_up_to(fp, n);
  for (int level = 0; level <= n; ++level) {
    r.drift.push_back(arc_hausdorff(pa.arcs_up_to(level), pb.arcs_up_to(level)).value);
  }
  const auto circles = f.partition().boundary_circles();
  const std::optional<GenCircle> b = circles.size() == 1 ? std::optional<GenCircle>(circles[0]) : std::nullopt;
  r.schottky_f = schottky_check(f.branch(0), f.branch(1), b);
  r.schottky_g = schottky_check(fp.branch(0), fp.branch(1), b);
  r.consistent_with_conjugacy = r.agreement >= 0.99 && !r.drift.empty() && r.drift.back() <= 0.05;
  return r;
}

}  // namespace pcm
