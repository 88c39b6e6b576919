// Partitions of the sphere by generalized circles and piecewise Moebius maps.
//
// A region is an intersection of closed sides of circles. Points on a shared
// boundary go to the region with the lowest index whose closure contains
// them, and are flagged so that downstream code can treat them as
// contaminated.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcm/errors.hpp"
#include "pcm/sphere.hpp"

namespace pcm {

struct Constraint {
  GenCircle circle;  // stored scaled (|b|^2 - ad = 1)
  Side side = Side::negative;

  // Signed margin: positive strictly inside the constraint's side.
  double margin(const SpherePoint& p) const { return side_sign(side) * circle.value(p); }
};

struct Region {
  std::vector<Constraint> constraints;
  std::optional<SpherePoint> interior;  // strictly interior sample
};

struct Location {
  int region = -1;
  bool on_boundary = false;
};

// Quasi-uniform points on the sphere (Fibonacci lattice), returned in the
// plane chart. The north pole is never hit exactly.
inline std::vector<SpherePoint> fibonacci_sphere(std::size_t n) {
  std::vector<SpherePoint> out;
  out.reserve(n);
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < n; ++i) {
    const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * static_cast<double>(i);
    out.push_back(SpherePoint::from_sphere({r * std::cos(phi), r * std::sin(phi), z}));
  }
  return out;
}

class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<Region> regions) : regions_(std::move(regions)) {
    for (auto& r : regions_) {
      for (auto& c : r.constraints) c.circle = c.circle.scaled();
    }
  }

  // Region 0 is the `side` of `c`, region 1 the opposite closed side.
  static Partition two_sided(const GenCircle& c, Side side = Side::negative) {
    const Side other = side == Side::negative ? Side::positive : Side::negative;
    return Partition({Region{{Constraint{c, side}}, std::nullopt},
                      Region{{Constraint{c, other}}, std::nullopt}});
  }

  std::size_t size() const { return regions_.size(); }
  const Region& region(std::size_t i) const { return regions_.at(i); }
  const std::vector<Region>& regions() const { return regions_; }

  double min_margin(std::size_t i, const SpherePoint& p) const {
    double m = INFINITY;
    for (const auto& c : regions_[i].constraints) m = std::min(m, c.margin(p));
    return m;
  }
  bool strictly_inside(std::size_t i, const SpherePoint& p, double tol = kBoundaryTol) const {
    return min_margin(i, p) > tol;
  }
  bool in_closure(std::size_t i, const SpherePoint& p, double tol = kBoundaryTol) const {
    return min_margin(i, p) >= -tol;
  }

  Location locate(const SpherePoint& p) const {
    for (std::size_t i = 0; i < regions_.size(); ++i) {
      bool closure = true, near = false;
      for (const auto& c : regions_[i].constraints) {
        const double m = c.margin(p);
        if (m < -kBoundaryTol) {
          closure = false;
          break;
        }
        if (m <= kBoundaryTol) near = true;
      }
      if (closure) return {static_cast<int>(i), near};
    }
    // Not covered (only possible for unvalidated partitions): pick the
    // region the point is closest to entering.
    std::size_t best = 0;
    double bm = -INFINITY;
    for (std::size_t i = 0; i < regions_.size(); ++i) {
      const double m = min_margin(i, p);
      if (m > bm) {
        bm = m;
        best = i;
      }
    }
    return {static_cast<int>(best), true};
  }

  // Distinct boundary circles in first-appearance order.
  std::vector<GenCircle> boundary_circles() const {
    std::vector<GenCircle> out;
    for (const auto& r : regions_) {
      for (const auto& c : r.constraints) {
        bool dup = false;
        for (const auto& o : out) dup = dup || same_locus(o, c.circle);
        if (!dup) out.push_back(c.circle);
      }
    }
    return out;
  }

  // Fills in interior samples and checks coverage and disjointness on a
  // Fibonacci sample of the sphere. Throws ValidationError.
  void validate(std::size_t samples = 10000) {
    if (regions_.empty()) throw ValidationError("partition has no regions");
    const auto pts = fibonacci_sphere(samples);
    for (std::size_t i = 0; i < regions_.size(); ++i) {
      auto& r = regions_[i];
      if (r.constraints.empty()) throw ValidationError("region " + std::to_string(i) + " has no constraints");
      if (r.interior) {
        if (!strictly_inside(i, *r.interior)) {
          throw ValidationError("region " + std::to_string(i) + ": interior sample is not strictly inside");
        }
        continue;
      }
      double best = 0.0;
      for (const auto& p : pts) {
        const double m = min_margin(i, p);
        if (m > best) {
          best = m;
          r.interior = p;
        }
      }
      if (!r.interior || best <= kBoundaryTol) {
        throw ValidationError("region " + std::to_string(i) + " has empty interior");
      }
    }
    for (const auto& p : pts) {
      int inside = 0;
      bool covered = false;
      for (std::size_t i = 0; i < regions_.size(); ++i) {
        if (strictly_inside(i, p, 1e-7)) ++inside;
        if (in_closure(i, p, 1e-7)) covered = true;
      }
      if (!covered) throw ValidationError("regions do not cover the sphere near " + to_string(p));
      if (inside > 1) throw ValidationError("regions overlap near " + to_string(p));
    }
  }

 private:
  std::vector<Region> regions_;
};

struct ItinerarySeq {
  std::vector<std::uint8_t> symbols;
  std::vector<bool> boundary;  // step k landed within tolerance of a boundary

  bool contaminated() const {
    for (bool b : boundary) {
      if (b) return true;
    }
    return false;
  }
};

struct Step {
  SpherePoint image;
  Location where;
};

class PiecewiseMap {
 public:
  PiecewiseMap() = default;
  PiecewiseMap(Partition partition, std::vector<Moebius> branches)
      : partition_(std::move(partition)), branches_(std::move(branches)) {
    if (branches_.size() != partition_.size()) {
      throw ValidationError("branch count " + std::to_string(branches_.size()) +
                            " does not match region count " + std::to_string(partition_.size()));
    }
  }

  // Two-region map: f on the `side` of c, g on the other side.
  static PiecewiseMap two_sided(const GenCircle& c, const Moebius& f, const Moebius& g,
                                Side side = Side::negative) {
    return {Partition::two_sided(c, side), {f, g}};
  }

  const Partition& partition() const { return partition_; }
  Partition& partition() { return partition_; }
  const std::vector<Moebius>& branches() const { return branches_; }
  const Moebius& branch(std::size_t i) const { return branches_.at(i); }
  std::size_t size() const { return branches_.size(); }

  Step step(const SpherePoint& p) const {
    const Location loc = partition_.locate(p);
    return {branches_[static_cast<std::size_t>(loc.region)].apply(p), loc};
  }
  SpherePoint operator()(const SpherePoint& p) const { return step(p).image; }

  // p, F(p), ..., F^n(p).
  std::vector<SpherePoint> orbit(const SpherePoint& p, std::size_t n) const {
    std::vector<SpherePoint> out;
    out.reserve(n + 1);
    out.push_back(p);
    for (std::size_t i = 0; i < n; ++i) out.push_back(step(out.back()).image);
    return out;
  }

  // Symbols of p, F(p), ..., F^{k-1}(p): symbol 0 is the region of p itself.
  ItinerarySeq itinerary(const SpherePoint& p, std::size_t k) const {
    ItinerarySeq s;
    s.symbols.reserve(k);
    s.boundary.reserve(k);
    SpherePoint x = p;
    for (std::size_t i = 0; i < k; ++i) {
      const Step st = step(x);
      s.symbols.push_back(static_cast<std::uint8_t>(st.where.region));
      s.boundary.push_back(st.where.on_boundary);
      x = st.image;
    }
    return s;
  }

  // Writes the k-prefix into `out` and returns whether any step touched a
  // boundary. Allocation-free variant for rasterization.
  bool itinerary_into(SpherePoint x, std::size_t k, std::uint8_t* out) const {
    bool contaminated = false;
    for (std::size_t i = 0; i < k; ++i) {
      const Step st = step(x);
      out[i] = static_cast<std::uint8_t>(st.where.region);
      contaminated = contaminated || st.where.on_boundary;
      x = st.image;
    }
    return contaminated;
  }

  // Composition applied along a symbol word: f_{s[n-1]} o ... o f_{s[0]}.
  Moebius compose_word(const std::vector<std::uint8_t>& word) const {
    Moebius m;
    for (std::uint8_t s : word) m = branches_.at(s) * m;
    return m;
  }

 private:
  Partition partition_;
  std::vector<Moebius> branches_;
};

struct Periodicity {
  std::size_t preperiod = 0;
  std::size_t period = 1;
  friend bool operator==(const Periodicity&, const Periodicity&) = default;
};

// Eventual periodicity of a finite symbol prefix. A candidate period q is
// accepted when the q-periodic tail is at least max(3q, half the prefix)
// long; the smallest such q wins, with the smallest preperiod for it.
template <class Seq>
std::optional<Periodicity> detect_periodicity(const Seq& s) {
  const std::size_t n = s.size();
  if (n == 0) return std::nullopt;
  for (std::size_t q = 1; 3 * q <= n; ++q) {
    std::size_t p = 0;
    for (std::size_t i = n - q; i-- > 0;) {
      if (s[i] != s[i + q]) {
        p = i + 1;
        break;
      }
    }
    const std::size_t tail = n - p;
    if (tail >= 3 * q && 2 * tail >= n) return Periodicity{p, q};
  }
  return std::nullopt;
}

// Fraction of descents |F^{k+1}(x)| < |F^k(x)| along a real orbit. For a map
// that acts as a circle rotation on a fundamental interval this estimates
// the rotation number.
inline double descent_rotation_number(const PiecewiseMap& f, double x0, std::size_t n) {
  SpherePoint x(x0);
  std::size_t descents = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const SpherePoint y = f(x);
    if (y.is_finite() && x.is_finite() && std::abs(y.value()) < std::abs(x.value())) ++descents;
    x = y;
  }
  return static_cast<double>(descents) / static_cast<double>(n);
}

}  // namespace pcm
