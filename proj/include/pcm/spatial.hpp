// Nearest-neighbour queries in the chordal metric. Chordal distance is the
// Euclidean distance of the unit-sphere embeddings, so a uniform 3D grid on
// the embeddings answers exact nearest-point queries.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pcm/sphere.hpp"

namespace pcm {

class PointIndex {
 public:
  PointIndex() = default;

  explicit PointIndex(const std::vector<SpherePoint>& pts, double cell = 0.0) {
    std::vector<std::array<double, 3>> xs;
    xs.reserve(pts.size());
    for (const auto& p : pts) xs.push_back(p.to_sphere());
    build(std::move(xs), cell);
  }
  explicit PointIndex(std::vector<std::array<double, 3>> xs, double cell = 0.0) {
    build(std::move(xs), cell);
  }

  std::size_t size() const { return xs_.size(); }
  bool empty() const { return xs_.empty(); }
  const std::array<double, 3>& point(std::size_t i) const { return xs_[i]; }

  // Distance and index of the nearest indexed point; (inf, npos) when empty.
  std::pair<double, std::size_t> nearest(const std::array<double, 3>& x) const {
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = static_cast<std::size_t>(-1);
    if (xs_.empty()) return {best, arg};
    const auto c = cell_of(x);
    for (int r = 0; r <= n_; ++r) {
      visit_ring(c, r, [&](std::uint32_t i) {
        const double d = dist3(x, xs_[i]);
        if (d < best || (d == best && i < arg)) {
          best = d;
          arg = i;
        }
      });
      if (best <= r * cell_) break;
    }
    return {best, arg};
  }
  std::pair<double, std::size_t> nearest(const SpherePoint& p) const { return nearest(p.to_sphere()); }

  // Calls fn(i) for every indexed point within `radius` of x.
  template <class Fn>
  void within(const std::array<double, 3>& x, double radius, Fn&& fn) const {
    if (xs_.empty()) return;
    const auto c = cell_of(x);
    const int rr = std::min(n_, static_cast<int>(std::ceil(radius / cell_)) + 1);
    for (int dx = -rr; dx <= rr; ++dx) {
      for (int dy = -rr; dy <= rr; ++dy) {
        for (int dz = -rr; dz <= rr; ++dz) {
          const auto it = cells_.find(key(c[0] + dx, c[1] + dy, c[2] + dz));
          if (it == cells_.end()) continue;
          for (std::uint32_t k = it->second.first; k < it->second.second; ++k) {
            const std::uint32_t i = order_[k];
            if (dist3(x, xs_[i]) <= radius) fn(i);
          }
        }
      }
    }
  }

 private:
  void build(std::vector<std::array<double, 3>> xs, double cell) {
    xs_ = std::move(xs);
    if (cell <= 0.0) {
      cell = std::sqrt(100.0 / std::max<double>(1.0, static_cast<double>(xs_.size())));
    }
    cell_ = std::clamp(cell, 1e-5, 2.1);
    n_ = static_cast<int>(std::ceil(2.0 / cell_)) + 1;
    std::vector<std::uint64_t> keys(xs_.size());
    order_.resize(xs_.size());
    for (std::size_t i = 0; i < xs_.size(); ++i) {
      const auto c = cell_of(xs_[i]);
      keys[i] = key(c[0], c[1], c[2]);
      order_[i] = static_cast<std::uint32_t>(i);
    }
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return keys[a] < keys[b]; });
    for (std::size_t k = 0; k < order_.size();) {
      std::size_t e = k;
      while (e < order_.size() && keys[order_[e]] == keys[order_[k]]) ++e;
      cells_[keys[order_[k]]] = {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(e)};
      k = e;
    }
  }

  std::array<int, 3> cell_of(const std::array<double, 3>& x) const {
    return {static_cast<int>(std::floor((x[0] + 1.05) / cell_)),
            static_cast<int>(std::floor((x[1] + 1.05) / cell_)),
            static_cast<int>(std::floor((x[2] + 1.05) / cell_))};
  }
  static std::uint64_t key(int x, int y, int z) {
    auto u = [](int v) { return static_cast<std::uint64_t>(static_cast<std::uint32_t>(v + (1 << 20))) & 0x1FFFFF; };
    return (u(x) << 42) | (u(y) << 21) | u(z);
  }

  template <class Fn>
  void visit_ring(const std::array<int, 3>& c, int r, Fn&& fn) const {
    auto visit = [&](int x, int y, int z) {
      const auto it = cells_.find(key(x, y, z));
      if (it == cells_.end()) return;
      for (std::uint32_t k = it->second.first; k < it->second.second; ++k) fn(order_[k]);
    };
    if (r == 0) {
      visit(c[0], c[1], c[2]);
      return;
    }
    for (int dx = -r; dx <= r; ++dx) {
      for (int dy = -r; dy <= r; ++dy) {
        if (std::abs(dx) == r || std::abs(dy) == r) {
          for (int dz = -r; dz <= r; ++dz) visit(c[0] + dx, c[1] + dy, c[2] + dz);
        } else {
          visit(c[0] + dx, c[1] + dy, c[2] - r);
          visit(c[0] + dx, c[1] + dy, c[2] + r);
        }
      }
    }
  }

  std::vector<std::array<double, 3>> xs_;
  std::vector<std::uint32_t> order_;
  std::unordered_map<std::uint64_t, std::pair<std::uint32_t, std::uint32_t>> cells_;
  double cell_ = 0.1;
  int n_ = 21;
};

// Directed Hausdorff distance sup_{a in A} inf_{b in B} chordal(a, b).
inline double directed_hausdorff(const std::vector<SpherePoint>& a, const PointIndex& b) {
  double worst = 0.0;
  for (const auto& p : a) worst = std::max(worst, b.nearest(p).first);
  return worst;
}

// Exact distance to a union of arcs. Samples narrow the candidate set, then
// candidate arcs are measured exactly.
class ArcSetIndex {
 public:
  ArcSetIndex() = default;
  ArcSetIndex(std::vector<Arc> arcs, double spacing) : arcs_(std::move(arcs)), spacing_(spacing) {
    std::vector<std::array<double, 3>> xs;
    circles_.reserve(arcs_.size());
    for (std::size_t i = 0; i < arcs_.size(); ++i) {
      circles_.push_back(sphere_circle(arcs_[i].parent));
      for (const auto& p : arcs_[i].sample(spacing_)) {
        xs.push_back(p.to_sphere());
        owner_.push_back(static_cast<std::uint32_t>(i));
      }
    }
    samples_ = PointIndex(std::move(xs));
  }

  bool empty() const { return arcs_.empty(); }
  const std::vector<Arc>& arcs() const { return arcs_; }

  double distance(const SpherePoint& p) const {
    if (arcs_.empty()) return std::numeric_limits<double>::infinity();
    const auto x = p.to_sphere();
    const double d0 = samples_.nearest(x).first;
    double best = d0;
    std::vector<std::uint32_t> cand;
    samples_.within(x, d0 + spacing_, [&](std::size_t i) { cand.push_back(owner_[i]); });
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    for (std::uint32_t k : cand) best = std::min(best, point_arc_distance(p, arcs_[k], circles_[k]));
    return best;
  }

 private:
  std::vector<Arc> arcs_;
  std::vector<SphereCircle> circles_;
  std::vector<std::uint32_t> owner_;
  PointIndex samples_;
  double spacing_ = 0.01;
};

// Removes points closer than `eps` to an earlier point, keeping order.
inline std::vector<SpherePoint> dedup_points(const std::vector<SpherePoint>& pts, double eps) {
  std::vector<SpherePoint> out;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> grid;
  const double cell = std::max(eps, 1e-12) * 2.0;
  auto key = [&](long x, long y, long z) {
    return (static_cast<std::uint64_t>(x & 0x1FFFFF) << 42) | (static_cast<std::uint64_t>(y & 0x1FFFFF) << 21) |
           static_cast<std::uint64_t>(z & 0x1FFFFF);
  };
  std::vector<std::array<double, 3>> kept;
  for (const auto& p : pts) {
    const auto x = p.to_sphere();
    const long cx = static_cast<long>(std::floor(x[0] / cell)), cy = static_cast<long>(std::floor(x[1] / cell)),
               cz = static_cast<long>(std::floor(x[2] / cell));
    bool dup = false;
    for (long dx = -1; dx <= 1 && !dup; ++dx) {
      for (long dy = -1; dy <= 1 && !dup; ++dy) {
        for (long dz = -1; dz <= 1 && !dup; ++dz) {
          const auto it = grid.find(key(cx + dx, cy + dy, cz + dz));
          if (it == grid.end()) continue;
          for (std::uint32_t i : it->second) {
            if (dist3(kept[i], x) < eps) {
              dup = true;
              break;
            }
          }
        }
      }
    }
    if (dup) continue;
    grid[key(cx, cy, cz)].push_back(static_cast<std::uint32_t>(kept.size()));
    kept.push_back(x);
    out.push_back(p);
  }
  return out;
}

}  // namespace pcm
