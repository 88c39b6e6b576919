// Built-in scenes. Formulas transcribe the figure captions; viewports and
// probe points are our own choices, made to frame the interesting part of
// each picture.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "pcm/scene.hpp"
#include "pcm/stability.hpp"

namespace pcm {

namespace gallery_detail {

inline cplx expi(double t) { return std::polar(1.0, t); }

inline MapSpec scale(cplx k) { return {k, 0.0, 0.0, 1.0}; }
inline MapSpec affine(cplx k, cplx t) { return {k, t, 0.0, 1.0}; }
inline MapSpec mobius(cplx a, cplx b, cplx c, cplx d) { return {a, b, c, d}; }

// Region 0 is the open disc (or the negative side of a line), region 1 its
// closed complement.
inline SceneConfig two_region(std::string name, double ca, cplx cb, double cd, MapSpec inside, MapSpec outside,
                              Viewport view, std::optional<SpherePoint> probe, std::string notes) {
  SceneConfig s;
  s.name = std::move(name);
  s.regions.push_back({{{ca, cb, cd, Side::negative}}, inside, std::nullopt});
  s.regions.push_back({{{ca, cb, cd, Side::positive}}, outside, std::nullopt});
  s.viewport = view;
  s.width = 1024;
  s.height = 1024;
  s.prefix = 24;
  s.depth = 6;
  s.probe = probe;
  s.output = s.name + ".ppm";
  s.notes = std::move(notes);
  return s;
}

inline SceneConfig disc_scene(std::string name, cplx centre, double radius, MapSpec inside, MapSpec outside,
                              Viewport view, std::optional<SpherePoint> probe, std::string notes) {
  return two_region(std::move(name), 1.0, -centre, std::norm(centre) - radius * radius, inside, outside, view,
                    probe, std::move(notes));
}

inline Viewport square(cplx c, double half) { return Viewport::centred(c, half, half); }

}  // namespace gallery_detail

// Disc-automorphism generators of the Fuchsian pair (both parabolic).
inline Moebius spider_f() { return {cplx(1, 1), cplx(0, 1), cplx(0, -1), cplx(1, -1)}; }
inline Moebius spider_g() { return {cplx(1, 1), cplx(0, -1), cplx(0, 1), cplx(1, -1)}; }

// Generators of the Schottky scene for parameter lambda.
inline MapSpec schottky_f(double lam) { return {1.0, cplx(0, -lam), 1.0, cplx(0, lam)}; }
inline MapSpec schottky_g(double lam) { return {1.0, -lam, 1.0, lam}; }

inline SceneConfig schottky_scene(double lam) {
  using namespace gallery_detail;
  SceneConfig s = disc_scene("fig_schottky", cplx(0, 1), 0.5, schottky_f(lam), schottky_g(lam),
                             square(cplx(0, 0.5), 2.0), std::nullopt,
                             "f=(z-l i)/(l i+z), g=(z-l)/(l+z), l=" + std::to_string(lam));
  return s;
}

inline const std::map<std::string, std::function<SceneConfig()>>& gallery_table() {
  using namespace gallery_detail;
  static const std::map<std::string, std::function<SceneConfig()>> table = [] {
    std::map<std::string, std::function<SceneConfig()>> t;
    const cplx w3 = expi(2.0 * kPi / 3.0);
    const cplx w6 = expi(kPi / 3.0);
    const auto lam_pair = [](cplx l) { return std::make_pair(scale(l), affine(-l, l)); };

    t["fig_attr"] = [=] {
      const cplx l = 0.95 * w3;
      auto [a, b] = lam_pair(l);
      return disc_scene("fig_attr", -0.5, 1.0, a, b, square(0.0, 2.5), SpherePoint(0.0),
                        "R=|z+1/2|<1, f=lz, g=l(1-z), l=0.95 e^{2pi i/3}; probe: attracting fixed point 0");
    };
    t["fig_rot"] = [=] {
      auto [a, b] = lam_pair(w3);
      return disc_scene("fig_rot", -0.5, 1.0, a, b, square(0.0, 2.5), SpherePoint(0.0),
                        "R=|z+1/2|<1, f=lz, g=l(1-z), l=e^{2pi i/3}; probe: rotation centre 0");
    };
    t["fig_rotneutr"] = [=] {
      auto [a, b] = lam_pair(w3);
      return disc_scene("fig_rotneutr", -0.5, 1.0, a, b, square(0.0, 2.5), SpherePoint(cplx(-0.62, 0.21)),
                        "same map as fig_rot; probe: component with itinerary (0,0,1)^inf, returned by a half-turn "
                        "after 3 steps, so F^6 is the identity on it");
    };
    t["fig_rotirr"] = [=] {
      const double alpha = (std::sqrt(5.0) - 1.0) / 2.0;
      auto [a, b] = lam_pair(expi(alpha * kPi));
      return disc_scene("fig_rotirr", -0.5, 1.0, a, b, square(0.0, 2.5), SpherePoint(0.0),
                        "R=|z+1/2|<1, f=lz, g=l(1-z), l=e^{alpha pi i}, alpha=(sqrt5-1)/2 (our choice)");
    };
    t["fig_parab"] = [=] {
      return disc_scene("fig_parab", -0.5, 0.5, mobius(1.0, 0.0, 1.0, 1.0), affine(-1.1 * w3, 1.1 * w3),
                        square(0.0, 2.0), SpherePoint(-0.02),
                        "R=|z+1/2|<1/2, f=z/(z+1), g=1.1e^{2pi i/3}(1-z); probe: disc tangent at 0");
    };
    t["fig_rot2fix"] = [=] {
      const cplx l(0.0, 1.0);
      return disc_scene("fig_rot2fix", 1.0, 0.5, affine(-l, l), scale(l), square(0.0, 2.5), SpherePoint(0.0),
                        "R=|z-1|<1/2, f=l-lz, g=lz, l=i; probe: 0 (component also contains infinity)");
    };
    t["fig_rotann"] = [=] {
      return disc_scene("fig_rotann", 0.0, 1.0, scale(4.0 / 3.0 * w6), scale(0.75 * w6), square(0.0, 2.0),
                        SpherePoint(1.15),
                        "R=|z|<1, f=(4/3)lz, g=(3/4)lz, l=e^{i pi/3}; probe: annulus 1<|z|<4/3");
    };
    t["fig_rotext"] = [=] {
      return disc_scene("fig_rotext", -0.5, 1.0, scale(0.95 * w6), scale(w6 / 0.95), square(0.0, 2.5),
                        SpherePoint(cplx(-0.55, 0.78)),
                        "R=|z+1/2|<1, f=0.95lz, g=lz/0.95, l=e^{i pi/3}; probe: itinerary (0,0,0,1,1,1)^inf");
    };
    t["fig_itin"] = [=] {
      auto [a, b] = lam_pair(w6);
      return disc_scene("fig_itin", 0.25, 0.25, a, b, square(cplx(0.5, 0.0), 1.5), SpherePoint(cplx(1.5, 1.2)),
                        "R=|z-1/4|<1/4, f=lz, g=l(1-z), l=e^{i pi/3}");
    };
    t["fig_wander"] = [=] {
      return two_region("fig_wander", 0.0, cplx(0.0, 1.0), 0.0, scale(cplx(0, 1)), affine(cplx(0, -1), cplx(1, 1)),
                        {-1.0, 5.0, -1.0, 5.0, Chart::plane}, SpherePoint(cplx(0.5, 0.5)),
                        "R=Im z<0, f=iz, g=-iz+1+i; viewport [-1,5]^2");
    };
    t["wander_squares"] = [=] {
      return two_region("wander_squares", 0.0, cplx(0.0, 1.0), 0.0, scale(cplx(0, 1)),
                        affine(cplx(0, -1), cplx(1, 1)), square(0.0, 4.0), SpherePoint(cplx(0.5, 0.5)),
                        "the wandering-square map on a symmetric viewport");
    };
    t["fig_conn_left"] = [=] {
      return disc_scene("fig_conn_left", 1.5, 0.5, scale(2.0), scale(cplx(0, 1)), square(0.0, 2.5),
                        SpherePoint(cplx(2.2, 2.2)), "R=|z-3/2|<1/2, f=2z, g=lz, l=e^{i pi/2}");
    };
    t["fig_conn_right"] = [=] {
      return disc_scene("fig_conn_right", 1.5, 0.5, scale(2.0), scale(expi(2.0 * kPi / 5.0)), square(0.0, 2.5),
                        SpherePoint(cplx(2.2, 2.2)), "R=|z-3/2|<1/2, f=2z, g=lz, l=e^{2pi i/5}");
    };
    t["fig_conninfty_left"] = [=] {
      return disc_scene("fig_conninfty_left", 1.0, 1.0 / 3.0, scale(1.0), scale(2.0),
                        {-0.6, 1.6, -1.1, 1.1, Chart::plane}, SpherePoint(cplx(0.5, 0.5)),
                        "R=|z-1|<1/3, f=z, g=2z");
    };
    t["fig_conninfty_right"] = [=] {
      return disc_scene("fig_conninfty_right", 1.5, 0.5, scale(2.0), scale(1.2 * expi(2.0 * kPi / 5.0)),
                        square(0.0, 2.5), SpherePoint(cplx(2.2, 2.2)), "R=|z-3/2|<1/2, f=2z, g=1.2e^{2pi i/5}z");
    };
    t["fig_spidstable"] = [=] {
      const Moebius f = spider_f(), g = spider_g();
      return disc_scene("fig_spidstable", 0.0, 2.0, mobius(f.a(), f.b(), f.c(), f.d()),
                        mobius(g.a(), g.b(), g.c(), g.d()), square(0.0, 3.0), std::nullopt,
                        "R=|z|<2; f,g parabolic automorphisms of the unit disc (limit set the unit circle)");
    };
    t["fig_spidunstable"] = [=] {
      const Moebius f = spider_f(), g = spider_g();
      return disc_scene("fig_spidunstable", -1.5, 1.0, mobius(f.a(), f.b(), f.c(), f.d()),
                        mobius(g.a(), g.b(), g.c(), g.d()), square(cplx(-0.5, 0.0), 3.0), std::nullopt,
                        "R=|z+3/2|<1; same generators as fig_spidstable");
    };
    t["fig_schottky"] = [=] { return schottky_scene(0.6); };
    t["whole_sphere"] = [=] {
      return disc_scene("whole_sphere", 0.0, 1.0, scale(2.0), scale(2.0 / 3.0), square(0.0, 2.5),
                        SpherePoint(0.5), "R=|z|<1, f=2z, g=(2/3)z");
    };
    return t;
  }();
  return table;
}

inline std::vector<std::string> gallery_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : gallery_table()) out.push_back(k);
  return out;
}

namespace gallery_detail {
inline std::size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}
}  // namespace gallery_detail

// Scene by name. Unknown names raise std::invalid_argument listing the
// closest matches and the full catalogue.
inline SceneConfig gallery(const std::string& name) {
  const auto& t = gallery_table();
  const auto it = t.find(name);
  if (it != t.end()) return it->second();
  std::vector<std::pair<std::size_t, std::string>> ranked;
  for (const auto& [k, v] : t) ranked.emplace_back(gallery_detail::edit_distance(name, k), k);
  std::sort(ranked.begin(), ranked.end());
  std::string msg = "unknown gallery scene '" + name + "'; did you mean";
  for (std::size_t i = 0; i < 3 && i < ranked.size(); ++i) msg += (i ? ", " : " ") + ranked[i].second;
  msg += "? available:";
  for (const auto& [k, v] : t) msg += " " + k;
  throw std::invalid_argument(msg);
}

// Boundary deformation families used by the continuity experiments.
inline DeformationSpec spidstable_family() {
  return {[](double e) { return GenCircle::circle(0.0, 2.0 - e); }, Side::negative, {0.2, 0.1, 0.05, 0.025}};
}
inline DeformationSpec spidunstable_family() {
  return {[](double e) { return GenCircle::circle(-1.5, 1.0 + e); }, Side::negative, {0.2, 0.1, 0.05, 0.025}};
}

}  // namespace pcm
