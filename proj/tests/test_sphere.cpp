#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "pcm/sphere.hpp"

using namespace pcm;

namespace {

oracle::P to_oracle(const SpherePoint& p) {
  if (p.is_infinity()) return std::nullopt;
  return p.value();
}

Moebius random_map(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  for (;;) {
    const cplx a(n(rng), n(rng)), b(n(rng), n(rng)), c(n(rng), n(rng)), d(n(rng), n(rng));
    if (std::abs(a * d - b * c) > 0.1) return {a, b, c, d};
  }
}

SpherePoint random_point(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 2.0);
  return SpherePoint(cplx(n(rng), n(rng)));
}

}  // namespace

TEST(Chordal, KnownValues) {
  EXPECT_DOUBLE_EQ(chordal(SpherePoint(cplx(0.3, -2.0)), SpherePoint(cplx(0.3, -2.0))), 0.0);
  EXPECT_NEAR(chordal(SpherePoint(0.0), SpherePoint::infinity()), 2.0, 1e-15);
  EXPECT_NEAR(chordal(SpherePoint(0.0), SpherePoint(1.0)), std::sqrt(2.0), 1e-15);
}

TEST(Chordal, MatchesFormulaAndStaysInRange) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const SpherePoint p = random_point(rng), q = i % 7 == 0 ? SpherePoint::infinity() : random_point(rng);
    const double d = chordal(p, q);
    EXPECT_NEAR(d, oracle::chordal(to_oracle(p), to_oracle(q)), 1e-12);
    EXPECT_GE(d, 0.0);
    EXPECT_LE(d, 2.0 + 1e-15);
    EXPECT_DOUBLE_EQ(d, chordal(q, p));
  }
}

TEST(Chordal, TriangleInequality) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 2000; ++i) {
    const SpherePoint p = random_point(rng), q = random_point(rng), r = random_point(rng);
    EXPECT_LE(chordal(p, r), chordal(p, q) + chordal(q, r) + 1e-12);
  }
}

TEST(Moebius, ApplyHandlesPolesAndInfinity) {
  const Moebius dbl = Moebius::scale(2.0);
  EXPECT_EQ(dbl.apply(1.0), SpherePoint(2.0));
  EXPECT_TRUE(dbl.apply(SpherePoint::infinity()).is_infinity());
  const Moebius m(1.0, 0.0, 1.0, 1.0);  // z / (z + 1)
  EXPECT_TRUE(m.apply(-1.0).is_infinity());
  EXPECT_NEAR(chordal(m.apply(SpherePoint::infinity()), 1.0), 0.0, 1e-15);
}

TEST(Moebius, NormalizationConvention) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 500; ++i) {
    const Moebius m = random_map(rng);
    EXPECT_NEAR(std::abs(m.a() * m.d() - m.b() * m.c() - 1.0), 0.0, 1e-12);
    const cplx t = m.trace();
    EXPECT_TRUE(t.real() > 0.0 || (t.real() == 0.0 && t.imag() >= 0.0));
  }
  EXPECT_THROW(Moebius(1.0, 2.0, 2.0, 4.0), std::invalid_argument);
}

TEST(Moebius, ComposeExamples) {
  const Moebius two = Moebius::scale(2.0), shift = Moebius::affine(1.0, 1.0);
  const Moebius c = two * shift;  // 2(z + 1)
  for (double x : {-3.0, 0.0, 0.5, 7.0}) EXPECT_NEAR(chordal(c.apply(x), SpherePoint(2 * x + 2)), 0.0, 1e-14);
  EXPECT_TRUE((two * two.inverse()).is_identity());
}

// The wandering-domain maps: f(z) = iz, g(z) = -iz + 1 + i. Multiplying out
// the coefficients, f(g(z)) = i(-iz + 1 + i) = z - 1 + i and g(f(z)) = z + 1 + i.
TEST(Moebius, WanderingCompositionOrder) {
  const cplx i(0.0, 1.0);
  const Moebius f = Moebius::scale(i), g = Moebius::affine(-i, 1.0 + i);
  const Moebius fg = f * g, gf = g * f;
  for (cplx z : {cplx(0.0), cplx(0.5, 0.5), cplx(-2.0, 3.0)}) {
    EXPECT_NEAR(chordal(fg.apply(z), SpherePoint(z - 1.0 + i)), 0.0, 1e-14);
    EXPECT_NEAR(chordal(gf.apply(z), SpherePoint(z + 1.0 + i)), 0.0, 1e-14);
  }
}

TEST(Moebius, GroupActionMatchesFormula) {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 500; ++i) {
    const Moebius m1 = random_map(rng), m2 = random_map(rng);
    const Moebius m12 = m1 * m2;
    for (int k = 0; k < 100; ++k) {
      const SpherePoint p = random_point(rng);
      ASSERT_LE(chordal(m12.apply(p), m1.apply(m2.apply(p))), 1e-9);
      if (k < 5) {
        const auto o = oracle::mobius(m1.a(), m1.b(), m1.c(), m1.d(), to_oracle(p));
        ASSERT_LE(oracle::chordal(to_oracle(m1.apply(p)), o), 1e-12);
      }
    }
    ASSERT_TRUE((m1 * m1.inverse()).is_identity());
  }
}

TEST(Classify, KnownExamples) {
  const Moebius attr = Moebius::scale(0.95 * std::polar(1.0, 2.0 * kPi / 3.0));
  const MoebiusClass a = attr.classify();
  ASSERT_EQ(a.type, MoebiusType::loxodromic);
  ASSERT_TRUE(a.attracting.has_value());
  EXPECT_NEAR(chordal(a.fixed[*a.attracting].point, 0.0), 0.0, 1e-12);

  const MoebiusClass r = Moebius::scale(std::polar(1.0, 2.0 * kPi / 3.0)).classify();
  ASSERT_EQ(r.type, MoebiusType::elliptic);
  ASSERT_EQ(r.fixed.size(), 2u);
  const bool has0 = chordal(r.fixed[0].point, 0.0) < 1e-12 || chordal(r.fixed[1].point, 0.0) < 1e-12;
  const bool hasinf = r.fixed[0].point.is_infinity() || r.fixed[1].point.is_infinity();
  EXPECT_TRUE(has0 && hasinf);

  const MoebiusClass p = Moebius(1.0, 0.0, 1.0, 1.0).classify();
  ASSERT_EQ(p.type, MoebiusType::parabolic);
  ASSERT_EQ(p.fixed.size(), 1u);
  EXPECT_NEAR(chordal(p.fixed[0].point, 0.0), 0.0, 1e-12);

  EXPECT_EQ(Moebius::scale(3.0).classify().type, MoebiusType::hyperbolic);
  EXPECT_EQ(Moebius::identity().classify().type, MoebiusType::identity);
}

// Dynamics decide what classification claims: loxodromic orbits converge to
// the labelled attracting point, elliptic orbits stay on their circle.
TEST(Classify, AgreesWithDynamics) {
  std::mt19937_64 rng(15);
  int lox = 0, ell = 0;
  for (int i = 0; i < 1000; ++i) {
    const Moebius m = random_map(rng);
    const MoebiusClass c = m.classify();
    SpherePoint x = random_point(rng);
    if (c.type == MoebiusType::loxodromic || c.type == MoebiusType::hyperbolic) {
      const double mult = std::abs(c.fixed[*c.attracting].multiplier);
      if (mult > 0.9) continue;  // 0.9^200 < 1e-9; weaker contractions need longer orbits
      ++lox;
      for (int k = 0; k < 200; ++k) x = m.apply(x);
      EXPECT_LE(chordal(x, c.fixed[*c.attracting].point), 1e-6);
    } else if (c.type == MoebiusType::elliptic) {
      ++ell;
      // Conjugate the fixed points to 0 and infinity; the orbit radius is constant.
      const SpherePoint p = c.fixed[0].point, q = c.fixed[1].point;
      ASSERT_TRUE(p.is_finite() && q.is_finite());
      const Moebius h(1.0, -p.value(), 1.0, -q.value());
      double lo = INFINITY, hi = 0.0;
      for (int k = 0; k < 200; ++k) {
        const double rad = std::abs(h.apply(x).value());
        lo = std::min(lo, rad);
        hi = std::max(hi, rad);
        x = m.apply(x);
      }
      EXPECT_LE((hi - lo) / std::max(1.0, hi), 1e-6);
    }
  }
  EXPECT_GT(lox, 100);
}

TEST(GenCircle, CanonicalFormIsIdempotent) {
  const GenCircle c(3.0, cplx(-3.0, 6.0), -12.0);
  const GenCircle k = c.canonical(), kk = k.canonical();
  EXPECT_DOUBLE_EQ(k.a, 1.0);
  EXPECT_DOUBLE_EQ(kk.a, k.a);
  EXPECT_EQ(kk.b, k.b);
  EXPECT_DOUBLE_EQ(kk.d, k.d);
  const GenCircle l = GenCircle(0.0, cplx(0.0, -5.0), 2.0).canonical();
  EXPECT_NEAR(std::abs(l.b), 1.0, 1e-15);
  EXPECT_THROW(GenCircle(1.0, 0.0, 1.0), std::invalid_argument);
}

TEST(MapCircle, Examples) {
  const GenCircle unit = GenCircle::circle(0.0, 1.0);
  const GenCircle big = map_circle(Moebius::scale(2.0), unit);
  EXPECT_NEAR(std::abs(big.centre()), 0.0, 1e-14);
  EXPECT_NEAR(big.radius(), 2.0, 1e-14);
  EXPECT_TRUE(same_locus(map_circle(Moebius(0.0, 1.0, 1.0, 0.0), unit), unit));
  const GenCircle moved = map_circle(Moebius::affine(1.0, cplx(1.0, -1.0)), unit);
  EXPECT_NEAR(std::abs(moved.centre() - cplx(1.0, -1.0)), 0.0, 1e-14);
  EXPECT_NEAR(moved.radius(), 1.0, 1e-14);
}

TEST(MapCircle, TransportsSamplesAndInverts) {
  std::mt19937_64 rng(16);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const Moebius m = random_map(rng);
    const GenCircle c = i % 5 == 0 ? GenCircle::line_through(cplx(n(rng), n(rng)), cplx(n(rng), n(rng)))
                                   : GenCircle::circle(cplx(n(rng), n(rng)), 0.2 + std::abs(n(rng)));
    const GenCircle img = map_circle(m, c);
    const GenCircle ks = img.scaled();
    for (int s = 0; s < 64; ++s) {
      const SpherePoint p = c.canonical().point_at(kTwoPi * (s + 0.5) / 64.0);
      const SpherePoint q = m.apply(p);
      if (q.is_infinity()) continue;
      // Residual of the scaled form is about twice the distance to the locus.
      EXPECT_LE(std::abs(ks.form(q.value())) / (1.0 + std::norm(q.value())), 1e-9);
    }
    const GenCircle back = map_circle(m.inverse(), img).canonical();
    EXPECT_LE(locus_distance(back, c.canonical()), 1e-9);
  }
}

TEST(CircleIntersect, Examples) {
  const GenCircle unit = GenCircle::circle(0.0, 1.0);
  EXPECT_TRUE(circle_intersect(unit, GenCircle::circle(3.0, 1.0)).points.empty());
  const auto t = circle_intersect(unit, GenCircle::circle(2.0, 1.0));
  ASSERT_EQ(t.points.size(), 1u);
  EXPECT_TRUE(t.tangent);
  EXPECT_NEAR(chordal(t.points[0], 1.0), 0.0, 1e-9);
  const auto two = circle_intersect(unit, GenCircle::line_through(0.0, 1.0));
  ASSERT_EQ(two.points.size(), 2u);
  const double s = two.points[0].value().real() + two.points[1].value().real();
  EXPECT_NEAR(s, 0.0, 1e-12);
  EXPECT_NEAR(std::abs(two.points[0].value().real()), 1.0, 1e-12);
  EXPECT_THROW(circle_intersect(unit, GenCircle(2.0, 0.0, -2.0)), std::invalid_argument);
}

TEST(Arc, EndpointsAndMidpointLieOnParent) {
  const GenCircle c = GenCircle::circle(cplx(1.0, 2.0), 0.7).canonical();
  const Arc a{c, 1.0, 2.5};
  for (const SpherePoint& p : {a.first(), a.last(), a.mid()}) {
    EXPECT_LE(std::abs(c.scaled().form(p.value())), 1e-9);
  }
  const Moebius m(cplx(1.0, 1.0), 2.0, cplx(0.0, 0.3), 1.0);
  const Arc img = map_arc(m, a);
  // The image arc runs through the image of the midpoint.
  EXPECT_LE(point_arc_distance(m.apply(a.mid()), img), 1e-9);
  EXPECT_LE(point_arc_distance(m.apply(a.first()), img), 1e-9);
}

TEST(Arc, PointDistanceMatchesBruteForce) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> n(0.0, 1.0);
  const Arc a{GenCircle::circle(cplx(0.2, -0.1), 1.3).canonical(), 0.4, 2.0};
  std::vector<oracle::P> dense;
  for (int k = 0; k <= 20000; ++k) dense.push_back(a.at(k / 20000.0).value());
  for (int i = 0; i < 50; ++i) {
    const SpherePoint p(cplx(n(rng), n(rng)));
    double best = INFINITY;
    for (const auto& q : dense) best = std::min(best, oracle::chordal(p.value(), q));
    EXPECT_NEAR(point_arc_distance(p, a), best, 2e-4);
    EXPECT_LE(point_arc_distance(p, a), best + 1e-12);
  }
}
