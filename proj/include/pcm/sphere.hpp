// Riemann sphere primitives: points, the chordal metric, Moebius maps,
// generalized circles and arcs.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcm {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Tolerance used for on-boundary decisions with the normalized circle form.
inline constexpr double kBoundaryTol = 1e-9;

// ---------------------------------------------------------------------------
// SpherePoint

// A point of C u {inf}. Infinity is a tag, never a large float.
class SpherePoint {
 public:
  SpherePoint() = default;
  SpherePoint(cplx z) : z_(z) {}  // NOLINT(google-explicit-constructor)
  SpherePoint(double x) : z_(x, 0.0) {}  // NOLINT(google-explicit-constructor)

  static SpherePoint infinity() {
    SpherePoint p;
    p.inf_ = true;
    return p;
  }

  bool is_infinity() const { return inf_; }
  bool is_finite() const { return !inf_; }

  cplx value() const {
    if (inf_) throw std::logic_error("SpherePoint::value on infinity");
    return z_;
  }

  // Unit-sphere embedding via inverse stereographic projection (inf -> north pole).
  std::array<double, 3> to_sphere() const {
    if (inf_) return {0.0, 0.0, 1.0};
    const double r = std::abs(z_);
    if (r <= 1.0) {
      const double r2 = r * r;
      const double s = 1.0 / (1.0 + r2);
      return {2.0 * z_.real() * s, 2.0 * z_.imag() * s, (r2 - 1.0) * s};
    }
    // Rewrite in terms of 1/r to stay finite for huge moduli.
    const double t = 1.0 / r;
    const double t2 = t * t;
    const double s = 1.0 / (1.0 + t2);
    return {2.0 * (z_.real() * t) * t * s, 2.0 * (z_.imag() * t) * t * s, (1.0 - t2) * s};
  }

  static SpherePoint from_sphere(const std::array<double, 3>& x) {
    const double den = 1.0 - x[2];
    if (den <= 1e-300) return infinity();
    return SpherePoint(cplx(x[0] / den, x[1] / den));
  }

  friend bool operator==(const SpherePoint& a, const SpherePoint& b) {
    if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
    return a.z_ == b.z_;
  }

 private:
  cplx z_{0.0, 0.0};
  bool inf_ = false;
};

inline double dist3(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

// Chordal distance 2|p-q| / sqrt((1+|p|^2)(1+|q|^2)), computed as the
// Euclidean distance of the sphere embeddings. Bounded by 2.
inline double chordal(const SpherePoint& p, const SpherePoint& q) {
  if (p.is_infinity() && q.is_infinity()) return 0.0;
  if (p.is_finite() && q.is_finite()) {
    const cplx a = p.value(), b = q.value();
    const double ra = std::abs(a), rb = std::abs(b);
    if (ra < 1e100 && rb < 1e100) {
      return 2.0 * std::abs(a - b) / std::sqrt((1.0 + ra * ra) * (1.0 + rb * rb));
    }
  }
  return dist3(p.to_sphere(), q.to_sphere());
}

// ---------------------------------------------------------------------------
// Moebius

enum class MoebiusType { identity, parabolic, elliptic, hyperbolic, loxodromic };

inline const char* to_string(MoebiusType t) {
  switch (t) {
    case MoebiusType::identity: return "identity";
    case MoebiusType::parabolic: return "parabolic";
    case MoebiusType::elliptic: return "elliptic";
    case MoebiusType::hyperbolic: return "hyperbolic";
    case MoebiusType::loxodromic: return "loxodromic";
  }
  return "?";
}

struct FixedPoint {
  SpherePoint point;
  cplx multiplier;  // derivative at the fixed point, in a chart around it
};

struct MoebiusClass {
  MoebiusType type = MoebiusType::identity;
  cplx trace_sq{4.0, 0.0};
  std::vector<FixedPoint> fixed;  // empty for the identity
  // Index into `fixed` of the attracting point for hyperbolic/loxodromic maps.
  std::optional<std::size_t> attracting;
};

// z -> (a z + b) / (c z + d), stored with det = 1 and Re(a + d) >= 0
// (ties broken by Im(a + d) >= 0).
class Moebius {
 public:
  Moebius() = default;
  Moebius(cplx a, cplx b, cplx c, cplx d) : a_(a), b_(b), c_(c), d_(d) { normalize(); }

  static Moebius identity() { return {}; }
  static Moebius scale(cplx k) { return {k, 0.0, 0.0, 1.0}; }
  static Moebius affine(cplx k, cplx t) { return {k, t, 0.0, 1.0}; }

  cplx a() const { return a_; }
  cplx b() const { return b_; }
  cplx c() const { return c_; }
  cplx d() const { return d_; }
  cplx trace() const { return a_ + d_; }

  SpherePoint apply(const SpherePoint& p) const {
    if (p.is_infinity()) {
      if (c_ == cplx(0.0)) return SpherePoint::infinity();
      return SpherePoint(a_ / c_);
    }
    const cplx z = p.value();
    const cplx den = c_ * z + d_;
    if (den == cplx(0.0)) return SpherePoint::infinity();
    const cplx w = (a_ * z + b_) / den;
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) return SpherePoint::infinity();
    return SpherePoint(w);
  }
  SpherePoint operator()(const SpherePoint& p) const { return apply(p); }

  Moebius inverse() const { return raw(d_, -b_, -c_, a_); }

  // (this o other)(z) = this(other(z)).
  Moebius operator*(const Moebius& o) const {
    return Moebius(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_, c_ * o.a_ + d_ * o.c_,
                   c_ * o.b_ + d_ * o.d_);
  }

  bool is_identity(double tol = 1e-9) const {
    return std::abs(b_) <= tol && std::abs(c_) <= tol && std::abs(a_ - d_) <= tol;
  }

  // Max coefficient difference after normalization.
  double coeff_distance(const Moebius& o) const {
    return std::max({std::abs(a_ - o.a_), std::abs(b_ - o.b_), std::abs(c_ - o.c_),
                     std::abs(d_ - o.d_)});
  }

  MoebiusClass classify(double tol = 1e-9) const;

 private:
  static Moebius raw(cplx a, cplx b, cplx c, cplx d) {
    Moebius m;
    m.a_ = a;
    m.b_ = b;
    m.c_ = c;
    m.d_ = d;
    return m;
  }

  void normalize() {
    const cplx det = a_ * d_ - b_ * c_;
    if (std::abs(det) < 1e-300 || !std::isfinite(std::abs(det))) {
      throw std::invalid_argument("degenerate Moebius map (ad - bc = 0)");
    }
    const cplx s = std::sqrt(det);
    a_ /= s;
    b_ /= s;
    c_ /= s;
    d_ /= s;
    const cplx tr = a_ + d_;
    const double scale = std::max(1.0, std::abs(tr));
    bool flip = tr.real() < 0.0;
    if (std::abs(tr.real()) <= 1e-14 * scale) flip = tr.imag() < 0.0;
    if (flip) {
      a_ = -a_;
      b_ = -b_;
      c_ = -c_;
      d_ = -d_;
    }
  }

  cplx a_{1.0}, b_{0.0}, c_{0.0}, d_{1.0};
};

inline MoebiusClass Moebius::classify(double tol) const {
  MoebiusClass out;
  const cplx tr = trace();
  out.trace_sq = tr * tr;
  if (is_identity(tol)) {
    out.type = MoebiusType::identity;
    return out;
  }
  const cplx t2 = out.trace_sq;
  const double rel = tol * std::max(1.0, std::abs(t2));
  if (std::abs(t2 - cplx(4.0)) <= rel) {
    out.type = MoebiusType::parabolic;
  } else if (std::abs(t2.imag()) <= rel && t2.real() >= -rel && t2.real() < 4.0) {
    out.type = MoebiusType::elliptic;
  } else if (std::abs(t2.imag()) <= rel && t2.real() > 4.0) {
    out.type = MoebiusType::hyperbolic;
  } else {
    out.type = MoebiusType::loxodromic;
  }

  // Fixed points of c z^2 + (d - a) z - b = 0.
  const double cscale = std::max({std::abs(a_), std::abs(b_), std::abs(d_), 1.0});
  if (std::abs(c_) <= 1e-14 * cscale) {
    out.fixed.push_back({SpherePoint::infinity(), d_ / a_});
    if (out.type != MoebiusType::parabolic) {
      out.fixed.push_back({SpherePoint(b_ / (d_ - a_)), a_ / d_});
    }
  } else if (out.type == MoebiusType::parabolic) {
    const cplx z = (a_ - d_) / (2.0 * c_);
    out.fixed.push_back({SpherePoint(z), cplx(1.0)});
  } else {
    const cplx disc = std::sqrt(t2 - cplx(4.0));
    for (const cplx sgn : {cplx(1.0), cplx(-1.0)}) {
      const cplx z = ((a_ - d_) + sgn * disc) / (2.0 * c_);
      const cplx den = c_ * z + d_;
      out.fixed.push_back({SpherePoint(z), cplx(1.0) / (den * den)});
    }
  }
  if ((out.type == MoebiusType::hyperbolic || out.type == MoebiusType::loxodromic) &&
      out.fixed.size() == 2) {
    out.attracting = std::abs(out.fixed[0].multiplier) < std::abs(out.fixed[1].multiplier) ? 0 : 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// GenCircle

enum class Side { negative, positive };

inline double side_sign(Side s) { return s == Side::negative ? -1.0 : 1.0; }

// Locus a|z|^2 + conj(b) z + b conj(z) + d = 0 with a, d real and |b|^2 > a d.
// Circle of centre c, radius r: a = 1, b = -c, d = |c|^2 - r^2 (inside negative).
// Lines have a = 0 and pass through infinity.
struct GenCircle {
  double a = 0.0;
  cplx b{1.0, 0.0};
  double d = 0.0;

  GenCircle() = default;
  GenCircle(double a_, cplx b_, double d_) : a(a_), b(b_), d(d_) {
    if (!(std::norm(b) - a * d > 0.0) || !std::isfinite(a) || !std::isfinite(d)) {
      throw std::invalid_argument("generalized circle must satisfy |b|^2 > ad");
    }
  }

  static GenCircle circle(cplx centre, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("circle radius must be positive");
    return {1.0, -centre, std::norm(centre) - radius * radius};
  }
  // Line through p and q with the left side (seen from p towards q) negative.
  static GenCircle line_through(cplx p, cplx q) {
    const cplx u = q - p;
    if (std::abs(u) == 0.0) throw std::invalid_argument("line needs two distinct points");
    // Positive side is to the right: normal n = -i u.
    const cplx n = cplx(0.0, -1.0) * u / std::abs(u);
    // form 2 Re(conj(b) z) + d with b = n/2 gives Re(conj(n) z) + d.
    return {0.0, n / 2.0, -(std::conj(n) * p).real()};
  }

  double discriminant() const { return std::norm(b) - a * d; }

  // Same locus and sides, scaled so that |b|^2 - ad = 1. The value of the
  // form is then about twice the signed distance near the locus.
  GenCircle scaled() const {
    const double s = std::sqrt(discriminant());
    GenCircle g;
    g.a = a / s;
    g.b = b / s;
    g.d = d / s;
    return g;
  }

  // Canonical representative of the locus (may flip sides): a = 1 for
  // circles; |b| = 1 with Re b > 0 (or Re b = 0, Im b > 0) for lines.
  GenCircle canonical() const {
    const GenCircle s = scaled();
    GenCircle g;
    if (std::abs(s.a) > 1e-12) {
      g.a = 1.0;
      g.b = s.b / s.a;
      g.d = s.d / s.a;
    } else {
      const double m = std::abs(s.b);
      double sg = 1.0;
      if (s.b.real() < -1e-15 * m || (std::abs(s.b.real()) <= 1e-15 * m && s.b.imag() < 0.0)) sg = -1.0;
      g.a = 0.0;
      g.b = sg * s.b / m;
      g.d = sg * s.d / m;
    }
    return g;
  }

  bool is_line() const { return std::abs(scaled().a) <= 1e-12; }

  cplx centre() const { return -b / a; }
  double radius() const { return std::sqrt(discriminant()) / std::abs(a); }

  double form(cplx z) const { return a * std::norm(z) + 2.0 * (std::conj(b) * z).real() + d; }

  // Value of the form at a sphere point; +-inf at infinity unless the locus
  // passes through it.
  double value(const SpherePoint& p) const {
    if (p.is_infinity()) {
      if (std::abs(scaled().a) <= 1e-12) return 0.0;
      return a > 0 ? INFINITY : -INFINITY;
    }
    return form(p.value());
  }

  // Parametrization theta in [0, 2pi): circles c + r e^{i theta};
  // lines z0 + u tan(theta / 2) with theta = pi at infinity. Intended for
  // canonical circles so that the parameter is determined by the locus.
  SpherePoint point_at(double theta) const;
  double param_of(const SpherePoint& p) const;

  // Line data for canonical lines: closest point to 0 and unit direction.
  cplx line_origin() const {
    const GenCircle s = canonical();
    return -s.d * s.b / (2.0 * std::abs(s.b) * std::abs(s.b));
  }
  cplx line_direction() const {
    const GenCircle s = canonical();
    return cplx(0.0, 1.0) * s.b / std::abs(s.b);
  }
};

inline double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t -= kTwoPi;
  return t;
}

inline SpherePoint GenCircle::point_at(double theta) const {
  if (!is_line()) return SpherePoint(centre() + radius() * std::polar(1.0, theta));
  const double t = wrap_angle(theta);
  if (t == kPi) return SpherePoint::infinity();
  return SpherePoint(line_origin() + line_direction() * std::tan(t / 2.0));
}

inline double GenCircle::param_of(const SpherePoint& p) const {
  if (!is_line()) {
    if (p.is_infinity()) throw std::invalid_argument("infinity is not on a circle");
    return wrap_angle(std::arg(p.value() - centre()));
  }
  if (p.is_infinity()) return kPi;
  const double s = (std::conj(line_direction()) * (p.value() - line_origin())).real();
  return wrap_angle(2.0 * std::atan(s));
}

// Coefficient distance between canonical forms. Equal loci give ~0.
inline double locus_distance(const GenCircle& x, const GenCircle& y) {
  const GenCircle p = x.canonical(), q = y.canonical();
  const double s = std::max({1.0, std::abs(p.b), std::abs(p.d)});
  return std::max({std::abs(p.a - q.a), std::abs(p.b - q.b), std::abs(p.d - q.d)}) / s;
}

inline bool same_locus(const GenCircle& x, const GenCircle& y, double tol = 1e-9) {
  return locus_distance(x, y) <= tol;
}

// Image of a circle under m: H' = N^H H N with N = m^{-1}. Sides are carried
// along: m maps the negative side of c onto the negative side of the result.
inline GenCircle map_circle(const Moebius& m, const GenCircle& c) {
  const Moebius n = m.inverse();
  const cplx n00 = n.a(), n01 = n.b(), n10 = n.c(), n11 = n.d();
  const cplx h00 = c.a, h01 = c.b, h10 = std::conj(c.b), h11 = c.d;
  // T = H N
  const cplx t00 = h00 * n00 + h01 * n10, t01 = h00 * n01 + h01 * n11;
  const cplx t10 = h10 * n00 + h11 * n10, t11 = h10 * n01 + h11 * n11;
  // N^H T
  const cplx r00 = std::conj(n00) * t00 + std::conj(n10) * t10;
  const cplx r01 = std::conj(n00) * t01 + std::conj(n10) * t11;
  const cplx r11 = std::conj(n01) * t01 + std::conj(n11) * t11;
  GenCircle out;
  out.a = r00.real();
  out.b = r01;
  out.d = r11.real();
  return out.scaled();
}

// ---------------------------------------------------------------------------
// Intersections

struct CircleIntersection {
  std::vector<SpherePoint> points;
  bool tangent = false;
};

// Intersection of two generalized circles. Identical loci are an error.
// Tangency is declared when the squared half-chord is within 1e-9 of zero
// relative to the product of the radii.
inline CircleIntersection circle_intersect(const GenCircle& x, const GenCircle& y) {
  if (same_locus(x, y)) throw std::invalid_argument("circle_intersect: identical loci");
  CircleIntersection out;
  const bool lx = x.is_line(), ly = y.is_line();
  if (!lx && !ly) {
    const cplx c1 = x.centre(), c2 = y.centre();
    const double r1 = x.radius(), r2 = y.radius();
    const double dd = std::abs(c2 - c1);
    if (dd <= 1e-15 * std::max(r1, r2)) return out;  // concentric, distinct radii
    const double along = (dd * dd + r1 * r1 - r2 * r2) / (2.0 * dd);
    const double h2 = r1 * r1 - along * along;
    const cplx u = (c2 - c1) / dd;
    const double tol = 1e-9 * r1 * r2;
    if (std::abs(h2) <= tol) {
      out.points.emplace_back(c1 + along * u);
      out.tangent = true;
    } else if (h2 > 0.0) {
      const double h = std::sqrt(h2);
      const cplx foot = c1 + along * u;
      out.points.emplace_back(foot + cplx(0.0, h) * u);
      out.points.emplace_back(foot - cplx(0.0, h) * u);
    }
    return out;
  }
  if (lx && ly) {
    const cplx u1 = x.line_direction(), u2 = y.line_direction();
    const double cross = (std::conj(u1) * u2).imag();
    if (std::abs(cross) <= 1e-12) {
      out.points.push_back(SpherePoint::infinity());
      out.tangent = true;
      return out;
    }
    const cplx p1 = x.line_origin(), p2 = y.line_origin();
    // p1 + s u1 = p2 + t u2
    const double s = (std::conj(u2) * (p2 - p1)).imag() / (std::conj(u2) * u1).imag();
    out.points.emplace_back(p1 + s * u1);
    out.points.push_back(SpherePoint::infinity());
    return out;
  }
  const GenCircle& circ = lx ? y : x;
  const GenCircle& line = lx ? x : y;
  const cplx c = circ.centre();
  const double r = circ.radius();
  const cplx p0 = line.line_origin(), u = line.line_direction();
  const double s = (std::conj(u) * (c - p0)).real();
  const cplx foot = p0 + s * u;
  const double dist = std::abs(c - foot);
  const double h2 = r * r - dist * dist;
  if (std::abs(h2) <= 1e-9 * r * r) {
    out.points.emplace_back(foot);
    out.tangent = true;
  } else if (h2 > 0.0) {
    const double h = std::sqrt(h2);
    out.points.emplace_back(foot + h * u);
    out.points.emplace_back(foot - h * u);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Arc

// A closed arc of a canonical parent circle covering parameters
// [start, start + sweep] (mod 2 pi). sweep = 2 pi is the full circle.
struct Arc {
  GenCircle parent;
  double start = 0.0;
  double sweep = kTwoPi;

  static Arc full(const GenCircle& c) { return {c.canonical(), 0.0, kTwoPi}; }

  bool is_full() const { return sweep >= kTwoPi - 1e-12; }
  double param(double t) const { return start + t * sweep; }
  SpherePoint at(double t) const { return parent.point_at(param(t)); }
  SpherePoint first() const { return at(0.0); }
  SpherePoint last() const { return at(1.0); }
  SpherePoint mid() const { return at(0.5); }

  // Whether parameter theta lies on the arc (with angular slack).
  bool contains_param(double theta, double slack = 0.0) const {
    if (is_full()) return true;
    const double off = wrap_angle(theta - start);
    return off <= sweep + slack || off >= kTwoPi - slack;
  }

  // Chordal length by polyline refinement.
  double chordal_length(int segments = 64) const {
    double len = 0.0;
    SpherePoint prev = at(0.0);
    for (int i = 1; i <= segments; ++i) {
      const SpherePoint cur = at(static_cast<double>(i) / segments);
      len += chordal(prev, cur);
      prev = cur;
    }
    return len;
  }

  // Points spaced at most `spacing` apart in the chordal metric.
  std::vector<SpherePoint> sample(double spacing) const {
    const double len = chordal_length();
    const int n = std::max(2, static_cast<int>(std::ceil(len / spacing * 1.05)) + 1);
    // Parameter speed is not uniform in the chordal metric; refine adaptively.
    std::vector<SpherePoint> out;
    out.reserve(static_cast<std::size_t>(n));
    const int steps = is_full() ? n : n - 1;
    std::vector<double> ts;
    ts.reserve(static_cast<std::size_t>(steps) + 1);
    for (int i = 0; i <= steps; ++i) ts.push_back(static_cast<double>(i) / steps);
    out.push_back(at(0.0));
    for (std::size_t i = 1; i < ts.size(); ++i) {
      SpherePoint next = at(ts[i]);
      const double gap = chordal(out.back(), next);
      if (gap > spacing) {
        const int k = static_cast<int>(std::ceil(gap / spacing));
        for (int j = 1; j < k; ++j) {
          out.push_back(at(ts[i - 1] + (ts[i] - ts[i - 1]) * j / k));
        }
      }
      if (!(is_full() && i + 1 == ts.size())) out.push_back(next);
    }
    return out;
  }
};

// Image of an arc's parent points under m, restricted to the image arc.
// The midpoint decides which of the two complementary arcs is meant.
inline Arc map_arc(const Moebius& m, const Arc& arc) {
  const GenCircle img = map_circle(m, arc.parent).canonical();
  if (arc.is_full()) return {img, 0.0, kTwoPi};
  const double t0 = img.param_of(m.apply(arc.first()));
  const double t1 = img.param_of(m.apply(arc.last()));
  const double tm = img.param_of(m.apply(arc.mid()));
  const double sw = wrap_angle(t1 - t0);
  if (wrap_angle(tm - t0) <= sw) return {img, t0, sw > 0.0 ? sw : kTwoPi};
  const double sw2 = wrap_angle(t0 - t1);
  return {img, t1, sw2 > 0.0 ? sw2 : kTwoPi};
}

// Geometry of an arc's parent circle on the unit sphere: the plane circle
// with centre `c3`, radius `rho` and unit normal `n3`.
struct SphereCircle {
  std::array<double, 3> c3{};
  std::array<double, 3> n3{};
  double rho = 0.0;
};

inline SphereCircle sphere_circle(const GenCircle& g) {
  const auto p = g.point_at(0.0).to_sphere();
  const auto q = g.point_at(2.0 * kPi / 3.0).to_sphere();
  const auto r = g.point_at(4.0 * kPi / 3.0).to_sphere();
  const std::array<double, 3> u{q[0] - p[0], q[1] - p[1], q[2] - p[2]};
  const std::array<double, 3> v{r[0] - p[0], r[1] - p[1], r[2] - p[2]};
  std::array<double, 3> n{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
                          u[0] * v[1] - u[1] * v[0]};
  const double nn = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
  for (double& x : n) x /= nn;
  // A plane through the sphere meets it in a circle centred at (n . p) n.
  const double off = n[0] * p[0] + n[1] * p[1] + n[2] * p[2];
  SphereCircle sc;
  sc.n3 = n;
  sc.c3 = {off * n[0], off * n[1], off * n[2]};
  sc.rho = std::sqrt(std::max(0.0, 1.0 - off * off));
  return sc;
}

// Chordal distance from a point to an arc. Exact up to rounding: the
// nearest point of the supporting circle is the radial projection of the
// point's projection onto the circle's plane.
inline double point_arc_distance(const SpherePoint& p, const Arc& arc, const SphereCircle& sc) {
  const auto x = p.to_sphere();
  double best = std::min(dist3(x, arc.first().to_sphere()), dist3(x, arc.last().to_sphere()));
  const double h = (x[0] - sc.c3[0]) * sc.n3[0] + (x[1] - sc.c3[1]) * sc.n3[1] +
                   (x[2] - sc.c3[2]) * sc.n3[2];
  std::array<double, 3> w{x[0] - h * sc.n3[0] - sc.c3[0], x[1] - h * sc.n3[1] - sc.c3[1],
                          x[2] - h * sc.n3[2] - sc.c3[2]};
  const double wl = std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2]);
  if (wl < 1e-15) {
    // Equidistant from the whole circle.
    return std::min(best, std::sqrt(h * h + sc.rho * sc.rho));
  }
  const std::array<double, 3> y{sc.c3[0] + sc.rho * w[0] / wl, sc.c3[1] + sc.rho * w[1] / wl,
                                sc.c3[2] + sc.rho * w[2] / wl};
  const double theta = arc.parent.param_of(SpherePoint::from_sphere(y));
  if (arc.contains_param(theta)) best = std::min(best, dist3(x, y));
  return best;
}

inline double point_arc_distance(const SpherePoint& p, const Arc& arc) {
  return point_arc_distance(p, arc, sphere_circle(arc.parent));
}

inline std::string to_string(const SpherePoint& p) {
  if (p.is_infinity()) return "inf";
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.12g%+.12gi", p.value().real(), p.value().imag());
  return buf;
}

}  // namespace pcm
