// Deterministic PPM rendering: itinerary colouring, prediscontinuity overlay
// in black and periodic points in red.
#pragma once

#include <array>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "pcm/fatou.hpp"
#include "pcm/prediscontinuity.hpp"
#include "pcm/scene.hpp"

namespace pcm {

using RGB = std::array<std::uint8_t, 3>;

inline constexpr RGB kBlack{0, 0, 0};
inline constexpr RGB kRed{255, 0, 0};

// 64 fixed colours. Channels stay in [48, 238], so neither reserved colour
// (black, pure red) can occur.
inline const std::array<RGB, 64>& palette() {
  static const std::array<RGB, 64> p = [] {
    std::array<RGB, 64> out{};
    for (int i = 0; i < 64; ++i) {
      const int r = (i >> 4) & 3, g = (i >> 2) & 3, b = i & 3;
      // Spread the 4x4x4 cube and rotate channels so neighbours differ.
      out[static_cast<std::size_t>(i)] = {static_cast<std::uint8_t>(48 + 63 * ((r + g) % 4)),
                                          static_cast<std::uint8_t>(48 + 63 * ((g + 2 * b) % 4)),
                                          static_cast<std::uint8_t>(48 + 63 * ((b + 3 * r) % 4))};
    }
    return out;
  }();
  return p;
}

inline RGB prefix_color(const std::string& prefix) { return palette()[prefix_hash(prefix) % 64]; }

struct Image {
  int width = 0, height = 0;
  std::vector<std::uint8_t> rgb;

  void set(int i, int j, RGB c) {
    if (i < 0 || j < 0 || i >= width || j >= height) return;
    const std::size_t o = 3 * (static_cast<std::size_t>(j) * width + i);
    rgb[o] = c[0];
    rgb[o + 1] = c[1];
    rgb[o + 2] = c[2];
  }
  RGB get(int i, int j) const {
    const std::size_t o = 3 * (static_cast<std::size_t>(j) * width + i);
    return {rgb[o], rgb[o + 1], rgb[o + 2]};
  }
  std::string ppm() const {
    std::string out = "P6\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
    out.append(reinterpret_cast<const char*>(rgb.data()), rgb.size());
    return out;
  }
};

namespace detail {

// Chart coordinate of a point, or nothing at the chart's point at infinity.
inline std::optional<cplx> chart_of(const Viewport& v, const SpherePoint& p) {
  if (v.chart == Chart::plane) {
    if (p.is_infinity()) return std::nullopt;
    return p.value();
  }
  if (p.is_infinity()) return cplx(0.0);
  if (p.value() == cplx(0.0)) return std::nullopt;
  return 1.0 / p.value();
}

inline double rect_distance(const Viewport& v, cplx z) {
  const double dx = std::max({v.x0 - z.real(), 0.0, z.real() - v.x1});
  const double dy = std::max({v.y0 - z.imag(), 0.0, z.imag() - v.y1});
  return std::hypot(dx, dy);
}

// Visits points of the arc spaced at most half a pixel apart wherever the
// arc is inside the viewport.
template <class Fn>
void trace_arc(const Arc& arc, const Viewport& v, int w, int h, Fn&& visit) {
  const double px = std::min((v.x1 - v.x0) / w, (v.y1 - v.y0) / h);
  struct Node {
    double t0, t1;
    int depth;
  };
  const int pieces = 256;
  std::vector<Node> stack;
  for (int k = pieces - 1; k >= 0; --k) stack.push_back({static_cast<double>(k) / pieces, static_cast<double>(k + 1) / pieces, 0});
  while (!stack.empty()) {
    const Node n = stack.back();
    stack.pop_back();
    const auto a = chart_of(v, arc.at(n.t0)), b = chart_of(v, arc.at(n.t1));
    if (a && b) {
      const double chord = std::abs(*a - *b);
      if (rect_distance(v, *a) > chord + px && rect_distance(v, *b) > chord + px) continue;
      if (chord <= 0.5 * px || n.depth >= 48) {
        visit(*a);
        visit(*b);
        continue;
      }
    } else if (n.depth >= 48) {
      if (a) visit(*a);
      if (b) visit(*b);
      continue;
    }
    const double m = 0.5 * (n.t0 + n.t1);
    stack.push_back({m, n.t1, n.depth + 1});
    stack.push_back({n.t0, m, n.depth + 1});
  }
}

}  // namespace detail

struct RenderResult {
  Image image;
  bool truncated = false;
  std::string warning;
  std::size_t arcs = 0;
  std::size_t periodic_marks = 0;
};

// Renders a scene. Everything is computed in a fixed order, so the bytes
// depend only on the scene, never on the thread count. `arc_budget` caps
// each overlay stratum; past it the overlay falls back to a lower depth.
inline RenderResult render(const SceneConfig& scene, std::size_t arc_budget = kDefaultArcBudget) {
  const PiecewiseMap f = scene.build();
  const int w = scene.width, h = scene.height;
  RenderResult out;
  out.image.width = w;
  out.image.height = h;
  out.image.rgb.assign(static_cast<std::size_t>(w) * h * 3, 0);
  const ItineraryGrid g = raster_itineraries(f, scene.viewport, w, h, scene.prefix);
  std::vector<RGB> class_color(g.classes.size());
  for (std::size_t c = 0; c < g.classes.size(); ++c) {
    class_color[c] = scene.component_coloring ? prefix_color(g.classes[c]) : prefix_color(g.classes[c].substr(0, 1));
  }
  for (int j = 0; j < h; ++j) {
    for (int i = 0; i < w; ++i) out.image.set(i, j, class_color[g.class_at(i, j)]);
  }
  if (scene.pd_overlay) {
    std::vector<Arc> arcs;
    try {
      arcs = pd_up_to(f, scene.depth, arc_budget).arcs_up_to(scene.depth);
    } catch (const TruncationError& e) {
      out.truncated = true;
      out.warning = e.what();
      // Fall back to the deepest level that fits.
      for (int n = e.level - 1; n >= 0; --n) {
        try {
          arcs = pd_up_to(f, n, arc_budget).arcs_up_to(n);
          break;
        } catch (const TruncationError&) {
        }
      }
    }
    out.arcs = arcs.size();
    for (const auto& a : arcs) {
      detail::trace_arc(a, scene.viewport, w, h, [&](cplx z) {
        const auto p = scene.viewport.pixel_of(scene.viewport.chart == Chart::plane
                                                   ? SpherePoint(z)
                                                   : (z == cplx(0.0) ? SpherePoint::infinity() : SpherePoint(1.0 / z)),
                                               w, h);
        if (p) out.image.set(p->first, p->second, kBlack);
      });
    }
  }
  if (scene.periodic_markers) {
    const ComponentMap cm = components(g);
    std::vector<int> order;
    for (const auto& c : cm.comps) {
      if (c.area >= 64) order.push_back(c.id);
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return cm.comps[static_cast<std::size_t>(a)].area > cm.comps[static_cast<std::size_t>(b)].area; });
    if (order.size() > 256) order.resize(256);
    std::vector<ComponentReport> reports(order.size());
    parallel_for(order.size(), [&](std::size_t k) { reports[k] = classify_component(f, g, cm, order[k]); });
    for (const auto& r : reports) {
      if (r.period <= 0) continue;
      for (const auto& [pt, loc] : r.fixed) {
        if (loc == FixedLocation::outside) continue;
        SpherePoint x = pt;
        for (int s = 0; s < r.period; ++s) {
          if (const auto p = scene.viewport.pixel_of(x, w, h)) {
            for (int dj = -1; dj <= 1; ++dj) {
              for (int di = -1; di <= 1; ++di) {
                if (di * di + dj * dj <= 1) out.image.set(p->first + di, p->second + dj, kRed);
              }
            }
            ++out.periodic_marks;
          }
          x = f(x);
        }
      }
    }
  }
  return out;
}

inline void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace pcm
