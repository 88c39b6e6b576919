#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "pcm/gallery.hpp"
#include "pcm/kleinian.hpp"

using namespace pcm;

namespace {

std::vector<Moebius> branches(const std::string& name) { return gallery(name).build().branches(); }

// Hyperbolic map with isometric circles centred at -coth t and +coth t.
Moebius hyperbolic(double t) { return {std::cosh(t), std::sinh(t), std::sinh(t), std::cosh(t)}; }

// Conjugate by the rotation z -> i z.
Moebius turned(const Moebius& m) { return Moebius::scale(cplx(0, 1)) * m * Moebius::scale(cplx(0, -1)); }

}  // namespace

TEST(Words, Counts) {
  EXPECT_EQ(enumerate_words({Moebius::scale(2.0)}, 3).size(), 6u);
  const std::vector<Moebius> two{Moebius::scale(2.0), Moebius::affine(1.0, 1.0)};
  EXPECT_EQ(enumerate_words(two, 1).size(), 4u);
  EXPECT_EQ(enumerate_words(two, 2).size(), 16u);
  EXPECT_EQ(enumerate_words(two, 6).size(), oracle::reduced_word_count(2, 6));
  const std::vector<Moebius> three{Moebius::scale(2.0), Moebius::affine(1.0, 1.0), Moebius::scale(cplx(0, 3))};
  EXPECT_EQ(enumerate_words(three, 4).size(), oracle::reduced_word_count(3, 4));
}

TEST(Words, OrderAndReduction) {
  const auto w = enumerate_words(branches("fig_spidstable"), 4);
  ASSERT_GE(w.size(), 4u);
  EXPECT_EQ(w[0].str(), "a");
  EXPECT_EQ(w[1].str(), "a^-1");
  EXPECT_EQ(w[2].str(), "b");
  EXPECT_EQ(w[3].str(), "b^-1");
  for (const auto& x : w) {
    for (std::size_t i = 1; i < x.letters.size(); ++i) {
      const Letter& p = x.letters[i - 1];
      const Letter& q = x.letters[i];
      ASSERT_FALSE(p.gen == q.gen && p.exp == -q.exp) << x.str();
    }
  }
}

// The stored value is the composition with letters[0] outermost, checked by
// plain formula evaluation.
TEST(Words, ValueIsComposition) {
  const auto gens = branches("fig_schottky");
  std::vector<std::array<oracle::C, 4>> raw;
  for (const auto& g : gens) {
    raw.push_back({g.a(), g.b(), g.c(), g.d()});
    const Moebius h = g.inverse();
    raw.push_back({h.a(), h.b(), h.c(), h.d()});
  }
  const oracle::P pts[] = {oracle::C(0.3, -0.2), oracle::C(-1.7, 0.4), oracle::C(2.0, 2.0), std::nullopt};
  for (const auto& w : enumerate_words(gens, 5)) {
    for (const auto& p0 : pts) {
      oracle::P p = p0;
      for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
        const auto& m = raw[2u * it->gen + (it->exp < 0 ? 1u : 0u)];
        p = oracle::mobius(m[0], m[1], m[2], m[3], p);
      }
      const SpherePoint lib = w.value.apply(p0 ? SpherePoint(*p0) : SpherePoint::infinity());
      const oracle::P q = lib.is_infinity() ? oracle::P{} : oracle::P{lib.value()};
      ASSERT_LE(oracle::chordal(p, q), 1e-9) << w.str();
    }
  }
}

TEST(Words, BudgetRaisesTruncation) {
  try {
    enumerate_words(branches("fig_spidstable"), 8, 100);
    FAIL() << "expected truncation";
  } catch (const TruncationError& e) {
    EXPECT_EQ(e.level, 4);  // 4 + 12 + 36 = 52 words fit, length 4 adds 108
  }
}

TEST(LimitSet, ElementaryGroup) {
  const auto pts = limit_set_approx({Moebius::scale(2.0)}, 5);
  ASSERT_EQ(pts.size(), 2u);
  const bool zero_first = pts[0].is_finite();
  EXPECT_LT(chordal(pts[zero_first ? 0 : 1], SpherePoint(0.0)), 1e-15);
  EXPECT_TRUE(pts[zero_first ? 1 : 0].is_infinity());
}

TEST(LimitSet, FuchsianPairOnUnitCircle) {
  const auto pts = limit_set_approx({spider_f(), spider_g()}, 8);
  EXPECT_GT(pts.size(), 100u);
  for (const auto& p : pts) {
    ASSERT_TRUE(p.is_finite());
    EXPECT_NEAR(std::abs(p.value()), 1.0, 1e-6);
  }
}

TEST(LimitSet, PointsAreAttractingFixedPoints) {
  const auto gens = branches("fig_attr");
  const auto pts = limit_set_approx(gens, 4);
  const auto words = enumerate_words(gens, 4);
  for (const auto& p : pts) {
    bool found = false;
    for (const auto& w : words) {
      if (chordal(w.value.apply(p), p) < 1e-9) {
        found = true;
        break;
      }
    }
    EXPECT_TRUE(found) << to_string(p);
  }
}

TEST(Schottky, AffineAndParabolicRejected) {
  const SchottkyResult a = schottky_check(Moebius::scale(2.0), Moebius::scale(2.0));
  EXPECT_FALSE(a.found);
  EXPECT_EQ(a.reason, "generator fixes infinity");
  const SchottkyResult s = schottky_check(spider_f(), spider_g());
  EXPECT_FALSE(s.found);
}

// Independent look at the Fuchsian pair: the isometric circles |c z + d| = 1
// of f and f^-1 touch, so no disjoint pairing exists at these candidates.
TEST(Schottky, FuchsianIsometricCirclesTouch) {
  const Moebius f = spider_f();
  // f = ((1+i) z + i) / (-i z + (1-i)) has det 1.
  const oracle::C c(0, -1), d(1, -1), a(1, 1);
  const oracle::C c1 = -d / c, c2 = a / c;  // centres for f and f^-1
  const double r = 1.0 / std::abs(c);
  EXPECT_NEAR(std::abs(c1 - c2), 2.0 * r, 1e-12);
  EXPECT_LT(std::abs(f.c() - c) + std::abs(f.d() - d), 1e-12);
}

TEST(Schottky, ClassicalPairFound) {
  const Moebius f = hyperbolic(2.0), g = turned(hyperbolic(2.0));
  const SchottkyResult r = schottky_check(f, g, GenCircle::circle(0.0, 0.3));
  ASSERT_TRUE(r.found) << r.reason;
  ASSERT_EQ(r.circles.size(), 4u);
  const double coth = std::cosh(2.0) / std::sinh(2.0);
  EXPECT_NEAR(std::abs(r.circles[0].centre - cplx(-coth, 0.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(r.circles[1].centre - cplx(coth, 0.0)), 0.0, 1e-12);
  EXPECT_NEAR(r.circles[0].radius, 1.0 / std::sinh(2.0), 1e-12);
  EXPECT_TRUE(r.boundary_in_fundamental_region);
  // A boundary circle through an isometric disc is not in the fundamental region.
  EXPECT_FALSE(schottky_check(f, g, GenCircle::circle(0.0, coth)).boundary_in_fundamental_region);
  // Overlapping circles: a weak translation length makes the discs meet.
  EXPECT_FALSE(schottky_check(hyperbolic(0.3), turned(hyperbolic(0.3))).found);
}

TEST(AlphaProbe, FuchsianSceneHypothesisHolds) {
  const PiecewiseMap f = gallery("fig_spidstable").build();
  const auto limit = limit_set_approx(f.branches(), 8);
  const auto rows = alpha_limit_probe(f, {10}, limit);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_GT(rows[0].boundary_to_limit, 0.1);
  EXPECT_GT(rows[0].shell_points, 0u);
  EXPECT_LE(rows[0].shell_to_limit, 0.1);
}

TEST(AlphaProbe, UnstableSceneHypothesisFails) {
  const PiecewiseMap f = gallery("fig_spidunstable").build();
  const auto limit = limit_set_approx(f.branches(), 8);
  const auto rows = alpha_limit_probe(f, {6}, limit);
  EXPECT_LT(rows[0].boundary_to_limit, 0.01);
}

TEST(AlphaProbe, StabilizedSceneHasEmptyShell) {
  const PiecewiseMap f = gallery("fig_conn_left").build();
  const auto limit = limit_set_approx(f.branches(), 6);
  const auto rows = alpha_limit_probe(f, {8}, limit);
  EXPECT_EQ(rows[0].shell_points, 0u);
}

TEST(OmegaProbe, FuchsianSceneTailsOnLimitSet) {
  const PiecewiseMap f = gallery("fig_spidstable").build();
  const auto limit = limit_set_approx(f.branches(), 8);
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<SpherePoint> seeds;
  for (int i = 0; i < 100; ++i) seeds.emplace_back(cplx(u(rng), u(rng)));
  EXPECT_LE(omega_limit_probe(f, seeds, 2000, limit).max_distance, 0.05);
}

TEST(OmegaProbe, AttractingSceneAndFixedSeed) {
  const PiecewiseMap f = gallery("fig_attr").build();
  const auto limit = limit_set_approx(f.branches(), 6);
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<SpherePoint> seeds;
  for (int i = 0; i < 20; ++i) seeds.emplace_back(cplx(u(rng), u(rng)));
  EXPECT_LE(omega_limit_probe(f, seeds, 1000, limit).max_distance, 1e-3);
  EXPECT_LE(omega_limit_probe(f, {SpherePoint(0.0)}, 500, limit).max_distance, 1e-12);
}
