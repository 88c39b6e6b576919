// Itinerary rasterization and analysis of the resulting pixel components.
//
// Pixels are grouped by their exact K-symbol itinerary prefix. Connected
// groups approximate the components of the complement of the
// prediscontinuity set; each can then be assigned a return map, a
// fixed-point case and a connectivity.
#pragma once

#include <cstdint>
#include <cstring>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "pcm/parallel.hpp"
#include "pcm/piecewise.hpp"

namespace pcm {

enum class Chart { plane, infinity };

// Rectangle [x0, x1] x [y0, y1]. In the infinity chart the rectangle lives
// in the coordinate w = 1/z. Row 0 is the top (y1) edge.
struct Viewport {
  double x0 = -2.0, x1 = 2.0, y0 = -2.0, y1 = 2.0;
  Chart chart = Chart::plane;

  static Viewport centred(cplx c, double half_w, double half_h) {
    return {c.real() - half_w, c.real() + half_w, c.imag() - half_h, c.imag() + half_h, Chart::plane};
  }

  cplx chart_coord(double i, double j, int w, int h) const {
    return {x0 + (i + 0.5) * (x1 - x0) / w, y1 - (j + 0.5) * (y1 - y0) / h};
  }
  SpherePoint pixel_center(int i, int j, int w, int h) const {
    const cplx c = chart_coord(i, j, w, h);
    if (chart == Chart::plane) return SpherePoint(c);
    if (c == cplx(0.0)) return SpherePoint::infinity();
    return SpherePoint(1.0 / c);
  }
  // Pixel containing p, if any.
  std::optional<std::pair<int, int>> pixel_of(const SpherePoint& p, int w, int h) const {
    cplx c;
    if (chart == Chart::plane) {
      if (p.is_infinity()) return std::nullopt;
      c = p.value();
    } else {
      if (p.is_infinity()) {
        c = 0.0;
      } else if (p.value() == cplx(0.0)) {
        return std::nullopt;
      } else {
        c = 1.0 / p.value();
      }
    }
    const double fi = (c.real() - x0) / (x1 - x0) * w;
    const double fj = (y1 - c.imag()) / (y1 - y0) * h;
    if (!(fi >= 0.0 && fi < w && fj >= 0.0 && fj < h)) return std::nullopt;
    return std::make_pair(static_cast<int>(fi), static_cast<int>(fj));
  }
  double pixel_size(int w) const { return (x1 - x0) / w; }
};

struct ItineraryGrid {
  int width = 0, height = 0, prefix = 0;
  Viewport view;
  std::vector<std::uint32_t> cls;            // class id per pixel, row-major
  std::vector<std::uint8_t> contaminated;    // prefix touched a boundary
  std::vector<std::string> classes;          // class id -> exact prefix bytes

  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * width + i; }
  std::uint32_t class_at(int i, int j) const { return cls[index(i, j)]; }
  std::vector<std::uint8_t> prefix_of(std::uint32_t c) const {
    return {classes[c].begin(), classes[c].end()};
  }
};

// 64-bit FNV-1a hash of a symbol prefix.
inline std::uint64_t prefix_hash(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// Class ids are assigned in row-major order of first appearance, so the
// grid is identical for any thread count.
inline ItineraryGrid raster_itineraries(const PiecewiseMap& f, const Viewport& view, int w, int h, int k) {
  if (w <= 0 || h <= 0 || k <= 0) throw ValidationError("resolution and prefix length must be positive");
  ItineraryGrid g;
  g.width = w;
  g.height = h;
  g.prefix = k;
  g.view = view;
  g.cls.assign(static_cast<std::size_t>(w) * h, 0);
  g.contaminated.assign(static_cast<std::size_t>(w) * h, 0);
  std::unordered_map<std::string, std::uint32_t> intern;
  const int block = 32;
  std::vector<std::uint8_t> buf(static_cast<std::size_t>(block) * w * k);
  std::vector<std::uint8_t> cont(static_cast<std::size_t>(block) * w);
  for (int j0 = 0; j0 < h; j0 += block) {
    const int rows = std::min(block, h - j0);
    parallel_for(static_cast<std::size_t>(rows), [&](std::size_t r) {
      const int j = j0 + static_cast<int>(r);
      for (int i = 0; i < w; ++i) {
        const std::size_t slot = r * w + i;
        cont[slot] = f.itinerary_into(view.pixel_center(i, j, w, h), static_cast<std::size_t>(k),
                                      &buf[slot * k]) ? 1 : 0;
      }
    });
    std::string key(static_cast<std::size_t>(k), '\0');
    for (int r = 0; r < rows; ++r) {
      for (int i = 0; i < w; ++i) {
        const std::size_t slot = static_cast<std::size_t>(r) * w + i;
        std::memcpy(key.data(), &buf[slot * k], static_cast<std::size_t>(k));
        auto [it, fresh] = intern.try_emplace(key, static_cast<std::uint32_t>(g.classes.size()));
        if (fresh) g.classes.push_back(key);
        const std::size_t idx = g.index(i, j0 + r);
        g.cls[idx] = it->second;
        g.contaminated[idx] = cont[slot];
      }
    }
  }
  return g;
}

struct Component {
  int id = 0;
  std::uint32_t cls = 0;
  std::size_t area = 0;
  int rep_i = 0, rep_j = 0;  // most interior pixel
  bool touches_edge = false;
};

struct ComponentMap {
  std::vector<std::int32_t> label;  // -1: contaminated or below the area threshold
  std::vector<Component> comps;
};

// 4-connected pixel components of equal class, excluding contaminated
// pixels and components smaller than `min_area`.
inline ComponentMap components(const ItineraryGrid& g, std::size_t min_area = 4) {
  const int w = g.width, h = g.height;
  const std::size_t n = static_cast<std::size_t>(w) * h;
  ComponentMap cm;
  cm.label.assign(n, -1);
  std::vector<std::int32_t> raw(n, -1);
  std::vector<std::size_t> stack;
  std::vector<std::size_t> members;
  std::int32_t next_raw = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (raw[s] != -1 || g.contaminated[s]) continue;
    const std::uint32_t c = g.cls[s];
    members.clear();
    stack.push_back(s);
    raw[s] = next_raw;
    bool edge = false;
    while (!stack.empty()) {
      const std::size_t p = stack.back();
      stack.pop_back();
      members.push_back(p);
      const int i = static_cast<int>(p % w), j = static_cast<int>(p / w);
      if (i == 0 || j == 0 || i == w - 1 || j == h - 1) edge = true;
      auto push = [&](int a, int b) {
        if (a < 0 || b < 0 || a >= w || b >= h) return;
        const std::size_t q = static_cast<std::size_t>(b) * w + a;
        if (raw[q] != -1 || g.contaminated[q] || g.cls[q] != c) return;
        raw[q] = next_raw;
        stack.push_back(q);
      };
      push(i + 1, j);
      push(i - 1, j);
      push(i, j + 1);
      push(i, j - 1);
    }
    ++next_raw;
    if (members.size() < min_area) continue;
    Component comp;
    comp.id = static_cast<int>(cm.comps.size());
    comp.cls = c;
    comp.area = members.size();
    comp.touches_edge = edge;
    for (std::size_t p : members) cm.label[p] = comp.id;
    cm.comps.push_back(comp);
  }
  // Distance transform from component borders; the representative is the
  // first pixel (row-major) at maximal distance.
  std::vector<std::int32_t> dist(n, -1);
  std::deque<std::size_t> queue;
  for (std::size_t p = 0; p < n; ++p) {
    const std::int32_t l = cm.label[p];
    if (l < 0) continue;
    const int i = static_cast<int>(p % w), j = static_cast<int>(p / w);
    bool border = i == 0 || j == 0 || i == w - 1 || j == h - 1;
    if (!border) {
      border = cm.label[p - 1] != l || cm.label[p + 1] != l || cm.label[p - w] != l || cm.label[p + w] != l;
    }
    if (border) {
      dist[p] = 0;
      queue.push_back(p);
    }
  }
  while (!queue.empty()) {
    const std::size_t p = queue.front();
    queue.pop_front();
    const int i = static_cast<int>(p % w), j = static_cast<int>(p / w);
    const std::int32_t l = cm.label[p];
    auto relax = [&](int a, int b) {
      if (a < 0 || b < 0 || a >= w || b >= h) return;
      const std::size_t q = static_cast<std::size_t>(b) * w + a;
      if (cm.label[q] != l || dist[q] != -1) return;
      dist[q] = dist[p] + 1;
      queue.push_back(q);
    };
    relax(i + 1, j);
    relax(i - 1, j);
    relax(i, j + 1);
    relax(i, j - 1);
  }
  std::vector<std::int32_t> best(cm.comps.size(), -1);
  for (std::size_t p = 0; p < n; ++p) {
    const std::int32_t l = cm.label[p];
    if (l < 0) continue;
    if (dist[p] > best[static_cast<std::size_t>(l)]) {
      best[static_cast<std::size_t>(l)] = dist[p];
      cm.comps[static_cast<std::size_t>(l)].rep_i = static_cast<int>(p % w);
      cm.comps[static_cast<std::size_t>(l)].rep_j = static_cast<int>(p / w);
    }
  }
  return cm;
}

// Component label at a point, searching up to `slack` pixels around it
// when the pixel itself is unlabelled.
inline int component_at(const ItineraryGrid& g, const ComponentMap& cm, const SpherePoint& p, int slack = 3) {
  const auto px = g.view.pixel_of(p, g.width, g.height);
  if (!px) return -1;
  for (int r = 0; r <= slack; ++r) {
    for (int dj = -r; dj <= r; ++dj) {
      for (int di = -r; di <= r; ++di) {
        if (std::max(std::abs(di), std::abs(dj)) != r) continue;
        const int i = px->first + di, j = px->second + dj;
        if (i < 0 || j < 0 || i >= g.width || j >= g.height) continue;
        const int l = cm.label[g.index(i, j)];
        if (l >= 0) return l;
      }
    }
  }
  return -1;
}

enum class FatouCase { ia, ib, identity, iia, iib, iii, wandering, unresolved };

inline const char* to_string(FatouCase c) {
  switch (c) {
    case FatouCase::ia: return "ia";
    case FatouCase::ib: return "ib";
    case FatouCase::identity: return "identity";
    case FatouCase::iia: return "iia";
    case FatouCase::iib: return "iib";
    case FatouCase::iii: return "iii";
    case FatouCase::wandering: return "wandering-suspect";
    case FatouCase::unresolved: return "unresolved";
  }
  return "?";
}

enum class FixedLocation { inside, boundary, outside };

inline const char* to_string(FixedLocation l) {
  switch (l) {
    case FixedLocation::inside: return "inside";
    case FixedLocation::boundary: return "on boundary";
    case FixedLocation::outside: return "outside";
  }
  return "?";
}

struct ComponentReport {
  int id = -1;
  SpherePoint rep;
  std::vector<std::uint8_t> prefix;
  std::optional<Periodicity> periodicity;  // of the itinerary prefix
  int period = 0;                          // component period (0 if not periodic)
  FatouCase kase = FatouCase::unresolved;
  std::optional<MoebiusType> return_type;
  Moebius return_map;
  int fixed_inside = 0;
  std::vector<std::pair<SpherePoint, FixedLocation>> fixed;
  std::size_t area = 0;
  bool low_confidence = false;
};

namespace detail {

inline bool near_label(const ItineraryGrid& g, const ComponentMap& cm, int i, int j, int label, int r) {
  for (int dj = -r; dj <= r; ++dj) {
    for (int di = -r; di <= r; ++di) {
      const int a = i + di, b = j + dj;
      if (a < 0 || b < 0 || a >= g.width || b >= g.height) continue;
      if (cm.label[g.index(a, b)] == label) return true;
    }
  }
  return false;
}

}  // namespace detail

// Where a fixed point of the return map sits relative to component `label`.
// Finite points in the viewport are judged by pixel label and by their own
// itinerary; points off-screen count as inside only if the component
// reaches the viewport edge and the point carries the component's prefix.
inline FixedLocation locate_fixed_point(const PiecewiseMap& f, const ItineraryGrid& g, const ComponentMap& cm,
                                        int label, const SpherePoint& z) {
  const Component& comp = cm.comps[static_cast<std::size_t>(label)];
  const ItinerarySeq it = f.itinerary(z, static_cast<std::size_t>(g.prefix));
  const bool same_prefix = std::string(it.symbols.begin(), it.symbols.end()) == g.classes[comp.cls];
  const auto px = g.view.pixel_of(z, g.width, g.height);
  if (!px) {
    if (comp.touches_edge && same_prefix && !it.contaminated()) return FixedLocation::inside;
    return FixedLocation::outside;
  }
  const int l = cm.label[g.index(px->first, px->second)];
  if (l == label && same_prefix && !it.contaminated()) return FixedLocation::inside;
  if (detail::near_label(g, cm, px->first, px->second, label, 2)) return FixedLocation::boundary;
  return FixedLocation::outside;
}

// Return-map classification of one component. The itinerary period q is
// lifted to the component period: the smallest multiple j q for which the
// word map T^j brings the component's cycle point back into its own pixel
// component.
inline ComponentReport classify_component(const PiecewiseMap& f, const ItineraryGrid& g, const ComponentMap& cm,
                                          int label, int max_lift = 12) {
  ComponentReport rep;
  const Component& comp = cm.comps.at(static_cast<std::size_t>(label));
  rep.id = label;
  rep.area = comp.area;
  rep.rep = g.view.pixel_center(comp.rep_i, comp.rep_j, g.width, g.height);
  rep.prefix = g.prefix_of(comp.cls);
  rep.periodicity = detect_periodicity(rep.prefix);
  if (!rep.periodicity) {
    rep.kase = FatouCase::wandering;
    return rep;
  }
  const std::size_t p = rep.periodicity->preperiod, q = rep.periodicity->period;
  SpherePoint x = rep.rep;
  for (std::size_t i = 0; i < p; ++i) x = f(x);
  int cyc = component_at(g, cm, x, 1);
  const std::vector<std::uint8_t> word(rep.prefix.begin() + static_cast<std::ptrdiff_t>(p),
                                       rep.prefix.begin() + static_cast<std::ptrdiff_t>(p + q));
  const Moebius t = f.compose_word(word);
  Moebius r = t;
  int j = 1;
  if (cyc >= 0) {
    const Component& cc = cm.comps[static_cast<std::size_t>(cyc)];
    // Off-screen points count as returned when the cycle component reaches
    // the viewport edge and the point carries its prefix.
    auto returned = [&](const SpherePoint& y) {
      if (g.view.pixel_of(y, g.width, g.height)) return component_at(g, cm, y, 1) == cyc;
      if (!cc.touches_edge) return false;
      const ItinerarySeq it = f.itinerary(y, static_cast<std::size_t>(g.prefix));
      return !it.contaminated() && std::string(it.symbols.begin(), it.symbols.end()) == g.classes[cc.cls];
    };
    SpherePoint y = t.apply(x);
    while (j < max_lift && !returned(y)) {
      y = t.apply(y);
      r = t * r;
      ++j;
    }
    if (!returned(y)) {
      r = t;
      j = 1;
      rep.low_confidence = true;
    }
  } else {
    cyc = label;
    rep.low_confidence = true;
  }
  rep.period = static_cast<int>(j * q);
  rep.return_map = r;
  const MoebiusClass mc = r.classify();
  rep.return_type = mc.type;
  if (mc.type == MoebiusType::identity) {
    rep.kase = FatouCase::identity;
    return rep;
  }
  for (const auto& fp : mc.fixed) {
    const FixedLocation loc = locate_fixed_point(f, g, cm, cyc, fp.point);
    rep.fixed.emplace_back(fp.point, loc);
    if (loc == FixedLocation::inside) ++rep.fixed_inside;
  }
  switch (mc.type) {
    case MoebiusType::hyperbolic:
    case MoebiusType::loxodromic: {
      const FixedLocation a = rep.fixed[*mc.attracting].second;
      rep.kase = a == FixedLocation::inside ? FatouCase::ia
                 : a == FixedLocation::boundary ? FatouCase::iia
                                                : FatouCase::unresolved;
      break;
    }
    case MoebiusType::parabolic:
      rep.kase = rep.fixed[0].second == FixedLocation::outside ? FatouCase::unresolved : FatouCase::iib;
      break;
    case MoebiusType::elliptic:
      rep.kase = rep.fixed_inside > 0 ? FatouCase::ib : FatouCase::iii;
      break;
    default:
      break;
  }
  return rep;
}

struct Connectivity {
  int holes = 0;       // enclosed complementary pieces found
  int value = 0;       // connectivity (number of complementary components)
  bool lower_bound = false;
  bool resolved = true;
  std::string text() const {
    if (!resolved) return "unresolved";
    return (lower_bound ? ">= " : "") + std::to_string(value);
  }
};

namespace detail {

struct HolePiece {
  std::uint32_t min_cls;      // smallest class id in the piece (identity)
  std::string ident;          // exact prefix of that class
  std::size_t area;
  bool touches_edge;
  double ci, cj;              // centroid in pixels
};

// Complementary pieces of a pixel mask. Non-mask pixels first group into
// cells of equal class. Two cells then merge when their shared border is at
// least a fifth of the smaller cell's perimeter. Cells cut apart by a
// pre-discontinuity arc share a long border and merge. Tangent holes touch
// along only about sqrt(r) pixels of a perimeter near 8r, so they stay
// separate.
inline std::vector<HolePiece> complement_pieces(const ItineraryGrid& g, const std::vector<std::uint8_t>& mask) {
  const int w = g.width, h = g.height;
  const std::size_t n = static_cast<std::size_t>(w) * h;
  constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> cell(n, kNone);
  std::vector<HolePiece> cells;
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < n; ++s) {
    if (mask[s] || cell[s] != kNone) continue;
    const auto id = static_cast<std::uint32_t>(cells.size());
    HolePiece hp{g.cls[s], g.classes[g.cls[s]], 0, false, 0.0, 0.0};
    const std::uint32_t c = g.cls[s];
    const std::uint8_t cont = g.contaminated[s];
    stack.push_back(s);
    cell[s] = id;
    while (!stack.empty()) {
      const std::size_t p = stack.back();
      stack.pop_back();
      const int i = static_cast<int>(p % w), j = static_cast<int>(p / w);
      ++hp.area;
      hp.ci += i;
      hp.cj += j;
      if (i == 0 || j == 0 || i == w - 1 || j == h - 1) hp.touches_edge = true;
      auto push = [&](int a, int b) {
        if (a < 0 || b < 0 || a >= w || b >= h) return;
        const std::size_t q = static_cast<std::size_t>(b) * w + a;
        if (mask[q] || cell[q] != kNone || g.cls[q] != c || g.contaminated[q] != cont) return;
        cell[q] = id;
        stack.push_back(q);
      };
      push(i + 1, j);
      push(i - 1, j);
      push(i, j + 1);
      push(i, j - 1);
    }
    if (cont) hp.ident = "~" + hp.ident;  // contaminated pixels form their own pieces
    cells.push_back(hp);
  }

  std::vector<std::size_t> perimeter(cells.size(), 0);
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> shared;
  auto edge = [&](std::size_t p, std::size_t q) {
    const std::uint32_t a = cell[p], b = cell[q];
    if (a == b) return;
    if (a != kNone) ++perimeter[a];
    if (b != kNone) ++perimeter[b];
    if (a != kNone && b != kNone) ++shared[{std::min(a, b), std::max(a, b)}];
  };
  for (int j = 0; j < h; ++j) {
    for (int i = 0; i < w; ++i) {
      const std::size_t p = static_cast<std::size_t>(j) * w + i;
      if (i + 1 < w) edge(p, p + 1);
      if (j + 1 < h) edge(p, p + static_cast<std::size_t>(w));
    }
  }
  std::vector<std::uint32_t> parent(cells.size());
  for (std::uint32_t k = 0; k < parent.size(); ++k) parent[k] = k;
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [key, len] : shared) {
    if (5 * len >= std::min(perimeter[key.first], perimeter[key.second])) {
      const std::uint32_t ra = find(key.first), rb = find(key.second);
      if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    }
  }

  // Each merged piece is named by its smallest-id cell, in first-seen order.
  std::vector<HolePiece> out;
  std::vector<std::uint32_t> slot(cells.size(), kNone);
  for (std::uint32_t k = 0; k < cells.size(); ++k) {
    const std::uint32_t r = find(k);
    if (slot[r] == kNone) {
      slot[r] = static_cast<std::uint32_t>(out.size());
      out.push_back(cells[r]);
      out.back().area = 0;
      out.back().ci = out.back().cj = 0.0;
      out.back().touches_edge = false;
    }
    HolePiece& hp = out[slot[r]];
    hp.area += cells[k].area;
    hp.ci += cells[k].ci;
    hp.cj += cells[k].cj;
    hp.touches_edge = hp.touches_edge || cells[k].touches_edge;
  }
  for (auto& hp : out) {
    hp.ci /= static_cast<double>(hp.area);
    hp.cj /= static_cast<double>(hp.area);
  }
  return out;
}

// Whether the region beyond the viewport (out to infinity) carries the
// given prefix everywhere we probe it.
inline bool exterior_has_prefix(const PiecewiseMap& f, const Viewport& v, int k, const std::string& prefix) {
  const cplx c((v.x0 + v.x1) / 2.0, (v.y0 + v.y1) / 2.0);
  const double rad = std::hypot(v.x1 - v.x0, v.y1 - v.y0) / 2.0;
  std::vector<SpherePoint> probes{SpherePoint::infinity()};
  for (double s : {1.02, 1.5, 3.0, 10.0, 1e3}) {
    for (int a = 0; a < 64; ++a) probes.emplace_back(c + s * rad * std::polar(1.0, kTwoPi * a / 64.0));
  }
  for (const auto& p : probes) {
    const ItinerarySeq it = f.itinerary(p, static_cast<std::size_t>(k));
    if (it.contaminated() || std::string(it.symbols.begin(), it.symbols.end()) != prefix) return false;
  }
  return true;
}

}  // namespace detail

// Connectivity of a component: the number of complementary components on
// the sphere. Exact for components inside the viewport (holes + 1) and for
// components that provably contain everything beyond the viewport (holes);
// otherwise a lower bound.
inline Connectivity connectivity(const PiecewiseMap& f, const ItineraryGrid& g, const ComponentMap& cm, int label) {
  const Component& comp = cm.comps.at(static_cast<std::size_t>(label));
  std::vector<std::uint8_t> mask(cm.label.size());
  for (std::size_t p = 0; p < mask.size(); ++p) mask[p] = cm.label[p] == label;
  const auto pieces = detail::complement_pieces(g, mask);
  Connectivity out;
  bool open_piece = false;
  for (const auto& hp : pieces) {
    if (hp.touches_edge) {
      open_piece = true;
    } else {
      ++out.holes;
    }
  }
  if (!comp.touches_edge) {
    out.value = out.holes + 1;
  } else if (!open_piece && g.view.chart == Chart::plane &&
             detail::exterior_has_prefix(f, g.view, g.prefix, g.classes[comp.cls])) {
    out.value = out.holes;
  } else {
    out.value = out.holes;
    out.lower_bound = true;
  }
  return out;
}

struct ZoomConnectivity {
  Connectivity result;
  std::vector<int> holes_per_level;  // distinct holes known after each level
  std::vector<Viewport> views;
};

// Connectivity with zoom refinement towards accumulating holes. When the
// smallest enclosed holes are near the pixel scale, the viewport is
// re-rasterized around them at the same resolution and distinct holes
// (identified by exact prefix) are accumulated until `threshold` is reached
// or no small holes remain.
inline ZoomConnectivity connectivity_zoom(const PiecewiseMap& f, const Viewport& view, int w, int h, int k,
                                          const SpherePoint& probe, int threshold, int max_zooms = 8,
                                          double factor = 16.0) {
  ZoomConnectivity z;
  ItineraryGrid g = raster_itineraries(f, view, w, h, k);
  ComponentMap cm = components(g);
  const int label = component_at(g, cm, probe);
  if (label < 0) {
    z.result.resolved = false;
    return z;
  }
  z.result = connectivity(f, g, cm, label);
  z.views.push_back(view);
  const std::string prefix = g.classes[cm.comps[static_cast<std::size_t>(label)].cls];
  std::set<std::string> known;
  Viewport v = view;
  std::vector<std::uint8_t> mask(cm.label.size());
  for (std::size_t p = 0; p < mask.size(); ++p) mask[p] = cm.label[p] == label;
  for (int level = 0;; ++level) {
    const auto pieces = detail::complement_pieces(g, mask);
    const detail::HolePiece* smallest = nullptr;
    for (const auto& hp : pieces) {
      if (hp.touches_edge) continue;
      known.insert(hp.ident);
      if (!smallest || hp.area < smallest->area) smallest = &hp;
    }
    z.holes_per_level.push_back(static_cast<int>(known.size()));
    if (static_cast<int>(known.size()) >= threshold || level >= max_zooms || !smallest ||
        smallest->area > static_cast<std::size_t>(w * h) / 4096) {
      break;
    }
    const cplx c = v.chart_coord(smallest->ci, smallest->cj, w, h);
    v = Viewport::centred(c, (v.x1 - v.x0) / (2.0 * factor), (v.y1 - v.y0) / (2.0 * factor));
    z.views.push_back(v);
    g = raster_itineraries(f, v, w, h, k);
    for (std::size_t p = 0; p < mask.size(); ++p) {
      mask[p] = !g.contaminated[p] && g.classes[g.cls[p]] == prefix;
    }
  }
  const int total = static_cast<int>(known.size());
  if (total > z.result.holes) {
    z.result.holes = total;
    z.result.value = total + (cm.comps[static_cast<std::size_t>(label)].touches_edge ? 0 : 1);
    z.result.lower_bound = true;
  }
  if (z.result.value >= threshold) {
    z.result.value = threshold;
    z.result.lower_bound = true;
  }
  return z;
}

}  // namespace pcm
