// Groups generated by the branches: reduced words, limit-set approximation,
// the Schottky test, and the alpha/omega limit probes.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcm/errors.hpp"
#include "pcm/prediscontinuity.hpp"
#include "pcm/spatial.hpp"

namespace pcm {

struct Letter {
  std::uint8_t gen = 0;
  std::int8_t exp = 1;  // +1 or -1
  friend bool operator==(const Letter&, const Letter&) = default;
};

struct GroupWord {
  std::vector<Letter> letters;  // applied right to left: letters[0] is outermost
  Moebius value;

  std::string str() const {
    if (letters.empty()) return "e";
    std::string s;
    for (const auto& l : letters) {
      s.push_back(static_cast<char>('a' + l.gen));
      if (l.exp < 0) s += "^-1";
    }
    return s;
  }
};

inline constexpr std::size_t kDefaultWordBudget = 5'000'000;

// All reduced words of length 1..L in the generators and their inverses, in
// length-then-lexicographic order with the alphabet g0, g0^-1, g1, g1^-1, ...
// Words are evaluated by left multiplication as they are extended.
inline std::vector<GroupWord> enumerate_words(const std::vector<Moebius>& gens, int max_len,
                                              std::size_t budget = kDefaultWordBudget) {
  std::vector<Letter> alphabet;
  std::vector<Moebius> mats;
  for (std::size_t g = 0; g < gens.size(); ++g) {
    alphabet.push_back({static_cast<std::uint8_t>(g), 1});
    mats.push_back(gens[g]);
    alphabet.push_back({static_cast<std::uint8_t>(g), -1});
    mats.push_back(gens[g].inverse());
  }
  std::vector<GroupWord> out;
  std::vector<std::size_t> layer;  // indices into out of the previous length
  for (int len = 1; len <= max_len; ++len) {
    std::vector<std::size_t> next;
    auto emit = [&](GroupWord w) {
      if (out.size() >= budget) {
        throw TruncationError("word budget exceeded at length " + std::to_string(len), len);
      }
      next.push_back(out.size());
      out.push_back(std::move(w));
    };
    if (len == 1) {
      for (std::size_t a = 0; a < alphabet.size(); ++a) emit({{alphabet[a]}, mats[a]});
    } else {
      for (std::size_t idx : layer) {
        for (std::size_t a = 0; a < alphabet.size(); ++a) {
          const Letter& last = out[idx].letters.back();
          if (last.gen == alphabet[a].gen && last.exp == -alphabet[a].exp) continue;
          GroupWord w;
          w.letters = out[idx].letters;
          w.letters.push_back(alphabet[a]);
          w.value = out[idx].value * mats[a];
          emit(std::move(w));
        }
      }
    }
    layer = std::move(next);
  }
  return out;
}

// Fixed points of loxodromic, hyperbolic and parabolic words up to length L,
// deduplicated at chordal distance eps. For loxodromic and hyperbolic words
// the attracting point is taken; every word's inverse is enumerated too, so
// repelling points appear as well.
inline std::vector<SpherePoint> limit_set_approx(const std::vector<Moebius>& gens, int max_len, double eps = 1e-9,
                                                 std::size_t budget = kDefaultWordBudget) {
  std::vector<SpherePoint> pts;
  for (const auto& w : enumerate_words(gens, max_len, budget)) {
    const MoebiusClass c = w.value.classify();
    if (c.type == MoebiusType::identity || c.type == MoebiusType::elliptic) continue;
    if (c.attracting) {
      pts.push_back(c.fixed[*c.attracting].point);
    } else {
      pts.push_back(c.fixed.front().point);
    }
  }
  return dedup_points(pts, eps);
}

struct IsometricCircle {
  cplx centre;
  double radius;
};

struct SchottkyResult {
  bool found = false;
  std::vector<IsometricCircle> circles;  // I(f), I(f^-1), I(g), I(g^-1)
  bool boundary_in_fundamental_region = false;
  std::string reason;
};

// Isometric circle |c z + d| = 1 of a normalized map with c != 0.
inline std::optional<IsometricCircle> isometric_circle(const Moebius& m) {
  if (std::abs(m.c()) < 1e-14) return std::nullopt;
  return IsometricCircle{-m.d() / m.c(), 1.0 / std::abs(m.c())};
}

// Looks for a Schottky pairing of two generators by their isometric
// circles: f maps I(f) onto I(f^-1) and the exterior of I(f) into the
// interior of I(f^-1); likewise for g. The four closed discs must be
// pairwise disjoint. Optionally checks that a boundary circle lies in the
// common exterior (the fundamental region).
inline SchottkyResult schottky_check(const Moebius& f, const Moebius& g,
                                     const std::optional<GenCircle>& boundary = std::nullopt) {
  SchottkyResult r;
  for (const Moebius* m : {&f, &g}) {
    const MoebiusType t = m->classify().type;
    if (t != MoebiusType::loxodromic && t != MoebiusType::hyperbolic) {
      r.reason = std::string("generator is ") + to_string(t);
      return r;
    }
  }
  const auto c1 = isometric_circle(f), c2 = isometric_circle(f.inverse());
  const auto c3 = isometric_circle(g), c4 = isometric_circle(g.inverse());
  if (!c1 || !c2 || !c3 || !c4) {
    r.reason = "generator fixes infinity";
    return r;
  }
  r.circles = {*c1, *c2, *c3, *c4};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      const double gap = std::abs(r.circles[i].centre - r.circles[j].centre) - r.circles[i].radius -
                         r.circles[j].radius;
      if (gap <= 1e-12) {
        r.reason = "isometric circles " + std::to_string(i) + " and " + std::to_string(j) + " meet";
        return r;
      }
    }
  }
  // Pairing checks on 64 boundary samples and one exterior point.
  const Moebius* maps[2] = {&f, &g};
  for (int k = 0; k < 2; ++k) {
    const IsometricCircle& src = r.circles[static_cast<std::size_t>(2 * k)];
    const IsometricCircle& dst = r.circles[static_cast<std::size_t>(2 * k + 1)];
    for (int s = 0; s < 64; ++s) {
      const cplx z = src.centre + src.radius * std::polar(1.0, kTwoPi * s / 64.0);
      const SpherePoint w = maps[k]->apply(z);
      if (w.is_infinity() || std::abs(std::abs(w.value() - dst.centre) - dst.radius) > 1e-9 * std::max(1.0, dst.radius)) {
        r.reason = "boundary pairing failed";
        return r;
      }
    }
    const cplx ext = src.centre + 2.0 * src.radius;
    const SpherePoint w = maps[k]->apply(ext);
    if (w.is_infinity() || std::abs(w.value() - dst.centre) >= dst.radius) {
      r.reason = "exterior not mapped inside";
      return r;
    }
  }
  r.found = true;
  if (boundary) {
    const GenCircle b = boundary->canonical();
    bool ok = true;
    for (int s = 0; s < 256 && ok; ++s) {
      const SpherePoint p = b.point_at(kTwoPi * s / 256.0);
      if (p.is_infinity()) continue;
      for (const auto& c : r.circles) ok = ok && std::abs(p.value() - c.centre) > c.radius;
    }
    if (ok && !b.is_line()) {
      for (const auto& c : r.circles) {
        const double d = std::abs(b.centre() - c.centre);
        if (std::abs(d - b.radius()) <= c.radius) ok = false;  // circles meet
      }
    }
    r.boundary_in_fundamental_region = ok;
  }
  return r;
}

struct AlphaReport {
  int depth = 0;
  double shell_to_limit = 0.0;     // directed distance shell -> limit set
  double boundary_to_limit = 0.0;  // min distance from dR to the limit set
  std::size_t shell_points = 0;
};

// Distances from the shell F^{-N}(dR) to an approximate limit set, for each
// requested depth.
inline std::vector<AlphaReport> alpha_limit_probe(const PiecewiseMap& f, const std::vector<int>& depths,
                                                  const std::vector<SpherePoint>& limit, double density = 400.0) {
  std::vector<AlphaReport> out;
  const PointIndex idx(limit);
  int maxd = 0;
  for (int d : depths) maxd = std::max(maxd, d);
  const auto pd = pd_up_to(f, maxd);
  const auto boundary = sample_arcs(pd.shells[0].arcs(), density);
  double bdist = INFINITY;
  for (const auto& p : boundary) bdist = std::min(bdist, idx.nearest(p).first);
  for (int d : depths) {
    AlphaReport r;
    r.depth = d;
    r.boundary_to_limit = bdist;
    const ArcStratum* s = pd.shell(d);
    if (s) {
      const auto pts = sample_arcs(s->arcs(), density);
      r.shell_points = pts.size();
      r.shell_to_limit = directed_hausdorff(pts, idx);
    }
    out.push_back(r);
  }
  return out;
}

struct OmegaReport {
  double max_distance = 0.0;        // over seeds, tail -> limit set
  std::vector<double> per_seed;
};

// Follows each seed for n steps and measures how far the last 20% of the
// orbit stays from the approximate limit set.
inline OmegaReport omega_limit_probe(const PiecewiseMap& f, const std::vector<SpherePoint>& seeds, std::size_t n,
                                     const std::vector<SpherePoint>& limit) {
  OmegaReport r;
  const PointIndex idx(limit);
  r.per_seed.resize(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t s) {
    SpherePoint x = seeds[s];
    double worst = 0.0;
    const std::size_t tail = n - n / 5;
    for (std::size_t i = 0; i < n; ++i) {
      x = f(x);
      if (i >= tail) worst = std::max(worst, idx.nearest(x).first);
    }
    r.per_seed[s] = worst;
  });
  for (double d : r.per_seed) r.max_distance = std::max(r.max_distance, d);
  return r;
}

}  // namespace pcm
