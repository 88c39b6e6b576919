// Exact arc strata of the prediscontinuity set.
//
// Shell n holds the preimages F^{-n}(dR), organised in cells indexed by
// symbol words t = (m_1, ..., m_n). The cell of s.m is the pullback of cell s
// through branch m, clipped to the open region m. Arcs lying on one of region
// m's own constraint circles are dropped: they are already part of dR.
#pragma once

#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pcm/errors.hpp"
#include "pcm/piecewise.hpp"
#include "pcm/spatial.hpp"

namespace pcm {

using Word = std::vector<std::uint8_t>;

inline std::string word_string(const Word& w) {
  if (w.empty()) return "-";
  std::string s;
  for (std::uint8_t c : w) s.push_back(static_cast<char>('0' + c));
  return s;
}

struct Cell {
  std::vector<Arc> arcs;
  std::vector<SpherePoint> isolated;  // tangency points
};

struct ArcStratum {
  int level = 0;
  std::map<Word, Cell> cells;  // lexicographic word order

  std::size_t arc_count() const {
    std::size_t n = 0;
    for (const auto& [w, c] : cells) n += c.arcs.size();
    return n;
  }
  std::vector<Arc> arcs() const {
    std::vector<Arc> out;
    for (const auto& [w, c] : cells) out.insert(out.end(), c.arcs.begin(), c.arcs.end());
    return out;
  }
  std::vector<SpherePoint> isolated() const {
    std::vector<SpherePoint> out;
    for (const auto& [w, c] : cells) out.insert(out.end(), c.isolated.begin(), c.isolated.end());
    return out;
  }
};

inline constexpr std::size_t kDefaultArcBudget = 2'000'000;

namespace detail {

// Arcs bucketed by parent locus so that coverage and duplicate queries are
// cheap. Lookup tolerates rounding through a window on a scalar key.
class LocusIndex {
 public:
  void add(const Arc& a) {
    const std::size_t id = arcs_.size();
    arcs_.push_back(a);
    by_key_.emplace(key(a.parent), id);
  }
  template <class Fn>
  void for_same_locus(const GenCircle& c, Fn&& fn) const {
    const double k = key(c);
    const double w = 1e-7 * std::max(1.0, std::abs(k));
    for (auto it = by_key_.lower_bound(k - w); it != by_key_.end() && it->first <= k + w; ++it) {
      if (same_locus(arcs_[it->second].parent, c)) fn(arcs_[it->second]);
    }
  }
  // Arc equal to an indexed one (same locus, same parameter interval).
  bool contains_equal(const Arc& a) const {
    bool found = false;
    for_same_locus(a.parent, [&](const Arc& b) {
      if (found) return;
      if (a.is_full() && b.is_full()) {
        found = true;
      } else if (!a.is_full() && !b.is_full()) {
        const double ds = std::abs(wrap_angle(a.start - b.start + kPi) - kPi);
        found = ds <= 1e-9 && std::abs(a.sweep - b.sweep) <= 1e-9;
      }
    });
    return found;
  }
  // Whether a is covered by indexed arcs on its locus (checked at 17 points).
  bool covers(const Arc& a, double slack = 1e-8) const {
    std::vector<Arc> same;
    for_same_locus(a.parent, [&](const Arc& b) { same.push_back(b); });
    if (same.empty()) return false;
    for (int i = 0; i <= 16; ++i) {
      const double th = wrap_angle(a.param(i / 16.0));
      bool in = false;
      for (const auto& b : same) in = in || b.contains_param(th, slack);
      if (!in) return false;
    }
    return true;
  }

 private:
  static double key(const GenCircle& c) {
    const GenCircle g = c.canonical();
    return g.b.real() + 0.372 * g.b.imag() + 0.113 * g.d + 0.77 * g.a;
  }
  std::vector<Arc> arcs_;
  std::multimap<double, std::size_t> by_key_;
};

}  // namespace detail

struct Clipped {
  std::vector<Arc> arcs;
  std::vector<SpherePoint> isolated;
};

// Part of `arc` inside the open region `r` of the partition, split at every
// crossing with the region's constraint circles.
inline Clipped clip_to_region(const Arc& arc, const Partition& part, std::size_t r) {
  Clipped out;
  const Region& reg = part.region(r);
  for (const auto& c : reg.constraints) {
    if (same_locus(c.circle, arc.parent)) return out;
  }
  struct Cut {
    double off;  // offset from arc start, in (0, sweep)
    bool tangent;
    SpherePoint p;
  };
  std::vector<Cut> cuts;
  const double ang_eps = 1e-12;
  for (const auto& c : reg.constraints) {
    const CircleIntersection ci = circle_intersect(arc.parent, c.circle);
    for (const auto& p : ci.points) {
      const double off = wrap_angle(arc.parent.param_of(p) - arc.start);
      if (arc.is_full()) {
        cuts.push_back({off, ci.tangent, p});
      } else if (off > ang_eps && off < arc.sweep - ang_eps) {
        cuts.push_back({off, ci.tangent, p});
      } else if (ci.tangent && part.in_closure(r, p)) {
        out.isolated.push_back(p);  // tangency at an endpoint
      }
    }
  }
  auto inside = [&](double off) { return part.min_margin(r, arc.parent.point_at(arc.start + off)) > 0.0; };

  if (cuts.empty()) {
    if (inside(arc.is_full() ? 0.0 : arc.sweep / 2.0)) out.arcs.push_back(arc);
    return out;
  }
  std::sort(cuts.begin(), cuts.end(), [](const Cut& a, const Cut& b) { return a.off < b.off; });
  // Pieces between consecutive cut offsets.
  std::vector<std::pair<double, double>> pieces;
  std::vector<std::size_t> left_cut, right_cut;  // cut index at each end, npos for arc end
  const std::size_t npos = static_cast<std::size_t>(-1);
  if (arc.is_full()) {
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      const std::size_t j = (i + 1) % cuts.size();
      double e = cuts[j].off;
      if (j == 0) e += kTwoPi;
      if (e - cuts[i].off <= ang_eps) continue;
      pieces.emplace_back(cuts[i].off, e);
      left_cut.push_back(i);
      right_cut.push_back(j);
    }
  } else {
    double s = 0.0;
    std::size_t lc = npos;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      if (cuts[i].off - s > ang_eps) {
        pieces.emplace_back(s, cuts[i].off);
        left_cut.push_back(lc);
        right_cut.push_back(i);
      }
      s = cuts[i].off;
      lc = i;
    }
    pieces.emplace_back(s, arc.sweep);
    left_cut.push_back(lc);
    right_cut.push_back(npos);
  }
  std::vector<bool> keep(pieces.size());
  for (std::size_t i = 0; i < pieces.size(); ++i) keep[i] = inside((pieces[i].first + pieces[i].second) / 2.0);

  // Tangent points whose neighbouring pieces are both dropped are isolated
  // points of the region's closure.
  for (std::size_t ci = 0; ci < cuts.size(); ++ci) {
    if (!cuts[ci].tangent) continue;
    bool adjacent_kept = false;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      if ((left_cut[i] == ci || right_cut[i] == ci) && keep[i]) adjacent_kept = true;
    }
    if (!adjacent_kept && part.in_closure(r, cuts[ci].p)) out.isolated.push_back(cuts[ci].p);
  }

  // Merge kept pieces that meet at a tangency (the arc touches but does not
  // leave the region there).
  std::vector<std::pair<double, double>> merged;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (!keep[i]) continue;
    if (!merged.empty() && std::abs(merged.back().second - pieces[i].first) <= ang_eps &&
        left_cut[i] != npos && cuts[left_cut[i]].tangent) {
      merged.back().second = pieces[i].second;
    } else {
      merged.push_back(pieces[i]);
    }
  }
  if (arc.is_full() && merged.size() >= 2) {
    auto& first = merged.front();
    const auto& lastp = merged.back();
    const std::size_t fc = left_cut[0];
    if (std::abs(lastp.second - kTwoPi - first.first) <= ang_eps && keep.front() && keep.back() &&
        cuts[fc].tangent) {
      first.first = lastp.first - kTwoPi;
      merged.pop_back();
    }
  }
  for (const auto& [s, e] : merged) {
    const double sw = e - s;
    if (sw >= kTwoPi - 1e-12) {
      out.arcs.push_back({arc.parent, 0.0, kTwoPi});
    } else {
      out.arcs.push_back({arc.parent, wrap_angle(arc.start + s), sw});
    }
  }
  return out;
}

// Shell 0: the boundary dR as arcs. Each boundary circle is split at its
// crossings with the others and pieces on some region's boundary are kept.
inline ArcStratum boundary_arcs(const PiecewiseMap& f) {
  ArcStratum s;
  s.level = 0;
  Cell cell;
  const auto circles = f.partition().boundary_circles();
  const Partition& part = f.partition();
  for (std::size_t i = 0; i < circles.size(); ++i) {
    const GenCircle c = circles[i].canonical();
    std::vector<double> params;
    for (std::size_t j = 0; j < circles.size(); ++j) {
      if (j == i) continue;
      for (const auto& p : circle_intersect(c, circles[j]).points) params.push_back(c.param_of(p));
    }
    std::sort(params.begin(), params.end());
    auto on_boundary = [&](const SpherePoint& m) {
      for (std::size_t r = 0; r < part.size(); ++r) {
        if (!part.in_closure(r, m)) continue;
        for (const auto& k : part.region(r).constraints) {
          if (same_locus(k.circle, c)) return true;
        }
      }
      return false;
    };
    if (params.empty()) {
      if (on_boundary(c.point_at(0.0))) cell.arcs.push_back({c, 0.0, kTwoPi});
      continue;
    }
    for (std::size_t k = 0; k < params.size(); ++k) {
      const double a = params[k];
      double b = k + 1 < params.size() ? params[k + 1] : params[0] + kTwoPi;
      if (b - a <= 1e-12) continue;
      if (on_boundary(c.point_at((a + b) / 2.0))) cell.arcs.push_back({c, wrap_angle(a), b - a});
    }
  }
  s.cells.emplace(Word{}, std::move(cell));
  return s;
}

// Shell n+1 from shell n. Arcs equal to one already emitted in the new shell
// are merged (kept in the first cell in word order).
inline ArcStratum pullback_stratum(const PiecewiseMap& f, const ArcStratum& prev,
                                   std::size_t budget = kDefaultArcBudget) {
  ArcStratum next;
  next.level = prev.level + 1;
  detail::LocusIndex seen;
  std::size_t total = 0;
  const Partition& part = f.partition();
  for (const auto& [word, cell] : prev.cells) {
    for (std::size_t m = 0; m < f.size(); ++m) {
      const Moebius inv = f.branch(m).inverse();
      Cell out;
      for (const auto& arc : cell.arcs) {
        const Clipped c = clip_to_region(map_arc(inv, arc), part, m);
        for (const auto& a : c.arcs) {
          if (seen.contains_equal(a)) continue;
          seen.add(a);
          out.arcs.push_back(a);
          if (++total > budget) {
            throw TruncationError("arc budget exceeded at level " + std::to_string(next.level), next.level);
          }
        }
        out.isolated.insert(out.isolated.end(), c.isolated.begin(), c.isolated.end());
      }
      for (const auto& p : cell.isolated) {
        const SpherePoint q = inv.apply(p);
        if (part.in_closure(m, q)) out.isolated.push_back(q);
      }
      if (out.arcs.empty() && out.isolated.empty()) continue;
      Word w = word;
      w.push_back(static_cast<std::uint8_t>(m));
      next.cells.emplace(std::move(w), std::move(out));
    }
  }
  return next;
}

struct PrediscontinuitySet {
  std::vector<ArcStratum> shells;         // shells[n] = F^{-n}(dR)
  std::optional<int> stabilized_at;       // PD_n = PD_{n+1} for this n
  int depth = 0;                          // requested N

  // Arcs of PD_n = shells 0..n (shells past stabilization add nothing).
  std::vector<Arc> arcs_up_to(int n) const {
    std::vector<Arc> out;
    for (int k = 0; k <= n && k < static_cast<int>(shells.size()); ++k) {
      const auto a = shells[static_cast<std::size_t>(k)].arcs();
      out.insert(out.end(), a.begin(), a.end());
    }
    return out;
  }
  // Shell n, empty past stabilization.
  const ArcStratum* shell(int n) const {
    if (n < 0 || n >= static_cast<int>(shells.size())) return nullptr;
    return &shells[static_cast<std::size_t>(n)];
  }
};

// Cumulative strata up to depth N. Stops early once a shell adds nothing
// new, since then every later shell is contained in the current union.
inline PrediscontinuitySet pd_up_to(const PiecewiseMap& f, int n, std::size_t budget = kDefaultArcBudget) {
  PrediscontinuitySet pd;
  pd.depth = n;
  pd.shells.push_back(boundary_arcs(f));
  detail::LocusIndex all;
  for (const auto& a : pd.shells[0].arcs()) all.add(a);
  for (int k = 1; k <= n; ++k) {
    ArcStratum s = pullback_stratum(f, pd.shells.back(), budget);
    bool fresh = false;
    for (const auto& [w, c] : s.cells) {
      for (const auto& a : c.arcs) fresh = fresh || !all.covers(a);
    }
    if (!fresh) {
      pd.stabilized_at = k - 1;
      break;
    }
    for (const auto& a : s.arcs()) all.add(a);
    pd.shells.push_back(std::move(s));
  }
  return pd;
}

// Point cloud of PD_N with chordal spacing 1/density, deduplicated at 1e-9.
inline std::vector<SpherePoint> sample_arcs(const std::vector<Arc>& arcs, double density) {
  std::vector<SpherePoint> pts;
  for (const auto& a : arcs) {
    const auto s = a.sample(1.0 / density);
    pts.insert(pts.end(), s.begin(), s.end());
  }
  return dedup_points(pts, 1e-9);
}

inline std::vector<SpherePoint> sample_pd(const PiecewiseMap& f, int n, double density,
                                          std::size_t budget = kDefaultArcBudget) {
  return sample_arcs(pd_up_to(f, n, budget).arcs_up_to(n), density);
}

// Samples of the shell F^{-N}(dR) alone, used as a proxy for the alpha-limit
// set of a generic point.
inline std::vector<SpherePoint> alpha_probe(const PiecewiseMap& f, int n, double density,
                                            std::size_t budget = kDefaultArcBudget) {
  const auto pd = pd_up_to(f, n, budget);
  const ArcStratum* s = pd.shell(n);
  if (!s) return {};
  return sample_arcs(s->arcs(), density);
}

// Line format: level word a b_re b_im d x0 y0 x1 y1 start sweep, with
// "inf inf" for an endpoint at infinity and word "-" for level 0.
inline std::string export_arcs(const PrediscontinuitySet& pd) {
  std::ostringstream os;
  char buf[512];
  auto pt = [](const SpherePoint& p) {
    if (p.is_infinity()) return std::string("inf inf");
    char b[96];
    std::snprintf(b, sizeof b, "%.17g %.17g", p.value().real(), p.value().imag());
    return std::string(b);
  };
  for (const auto& s : pd.shells) {
    for (const auto& [w, c] : s.cells) {
      for (const auto& a : c.arcs) {
        std::snprintf(buf, sizeof buf, "%d %s %.17g %.17g %.17g %.17g %s %s %.17g %.17g\n", s.level,
                      word_string(w).c_str(), a.parent.a, a.parent.b.real(), a.parent.b.imag(), a.parent.d,
                      pt(a.first()).c_str(), pt(a.last()).c_str(), a.start, a.sweep);
        os << buf;
      }
    }
  }
  return os.str();
}

}  // namespace pcm
