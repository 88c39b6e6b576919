#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "pcm/gallery.hpp"
#include "pcm/piecewise.hpp"

using namespace pcm;

namespace {

const cplx I(0.0, 1.0);

PiecewiseMap whole_sphere() {
  return PiecewiseMap::two_sided(GenCircle::circle(0.0, 1.0), Moebius::scale(2.0), Moebius::scale(2.0 / 3.0));
}

// Im z < 0 carries f(z) = iz, everything else g(z) = -iz + 1 + i.
PiecewiseMap wandering() {
  return PiecewiseMap::two_sided(GenCircle(0.0, I, 0.0), Moebius::scale(I), Moebius::affine(-I, 1.0 + I));
}

std::string symbols(const ItinerarySeq& s) {
  std::string out;
  for (auto c : s.symbols) out.push_back(static_cast<char>('0' + c));
  return out;
}

}  // namespace

TEST(Locate, WholeSphereExamples) {
  const PiecewiseMap f = whole_sphere();
  const Location a = f.partition().locate(0.5);
  EXPECT_EQ(a.region, 0);
  EXPECT_FALSE(a.on_boundary);
  const Location b = f.partition().locate(3.0);
  EXPECT_EQ(b.region, 1);
  EXPECT_FALSE(b.on_boundary);
  const Location c = f.partition().locate(1.0);
  EXPECT_EQ(c.region, 0);  // lowest index owns the boundary
  EXPECT_TRUE(c.on_boundary);
  EXPECT_EQ(f.partition().locate(SpherePoint::infinity()).region, 1);
}

TEST(Locate, AgreesWithSignOracle) {
  const auto sphere = fibonacci_sphere(10000);
  for (const auto& name : gallery_names()) {
    const SceneConfig s = gallery(name);
    const PiecewiseMap f = s.build();
    const ConstraintSpec& c = s.regions[0].constraints[0];
    int checked = 0;
    for (const auto& p : sphere) {
      if (p.is_infinity()) continue;
      const double v = oracle::circle_form(c.a, c.b, c.d, p.value());
      const double scale = std::sqrt(std::norm(c.b) - c.a * c.d) * (1.0 + std::norm(p.value()));
      if (std::abs(v) < 1e-6 * scale) continue;  // too close to call in plain arithmetic
      const int expected = (c.side == Side::negative) == (v < 0) ? 0 : 1;
      ASSERT_EQ(f.partition().locate(p).region, expected) << name << " at " << to_string(p);
      ++checked;
    }
    EXPECT_GT(checked, 9900) << name;
  }
}

TEST(Partition, ValidationCatchesGapsAndOverlaps) {
  const GenCircle unit = GenCircle::circle(0.0, 1.0);
  // Two discs that miss the region |z| > 2.
  Partition gap({Region{{{unit, Side::negative}}, std::nullopt},
                 Region{{{GenCircle::circle(0.0, 2.0), Side::negative}, {unit, Side::positive}}, std::nullopt}});
  try {
    gap.validate();
    FAIL() << "expected a coverage error";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("cover"), std::string::npos);
  }
  Partition overlap({Region{{{unit, Side::negative}}, std::nullopt}, Region{{{GenCircle::circle(0.5, 1.0), Side::negative}}, std::nullopt},
                     Region{{{unit, Side::positive}}, std::nullopt}});
  try {
    overlap.validate();
    FAIL() << "expected an overlap error";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("overlap"), std::string::npos);
  }
  Partition ok = Partition::two_sided(unit);
  EXPECT_NO_THROW(ok.validate());
}

TEST(Eval, Examples) {
  const PiecewiseMap w = whole_sphere();
  EXPECT_NEAR(chordal(w(0.75), 1.5), 0.0, 1e-15);
  EXPECT_NEAR(chordal(w(1.5), 1.0), 0.0, 1e-15);
  EXPECT_NEAR(chordal(wandering()(cplx(0.5, 0.5)), cplx(1.5, 0.5)), 0.0, 1e-15);
}

TEST(Orbit, Examples) {
  const auto o = whole_sphere().orbit(0.75, 2);
  ASSERT_EQ(o.size(), 3u);
  EXPECT_NEAR(chordal(o[1], 1.5), 0.0, 1e-15);
  EXPECT_NEAR(chordal(o[2], 1.0), 0.0, 1e-15);
  const auto w = wandering().orbit(cplx(0.5, 0.5), 3);
  const cplx expect[] = {{0.5, 0.5}, {1.5, 0.5}, {1.5, -0.5}, {0.5, 1.5}};
  ASSERT_EQ(w.size(), 4u);
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(chordal(w[k], expect[k]), 0.0, 1e-14);
  EXPECT_EQ(whole_sphere().orbit(0.3, 0).size(), 1u);
}

TEST(Itinerary, WanderingCells) {
  const PiecewiseMap f = wandering();
  EXPECT_EQ(symbols(f.itinerary(cplx(0.5, 0.5), 9)), "110110101");
  EXPECT_EQ(symbols(f.itinerary(cplx(0.5, 1.5), 8)), "11010110");
  EXPECT_FALSE(detect_periodicity(f.itinerary(cplx(0.5, 0.5), 60).symbols).has_value());
}

TEST(Itinerary, MatchesPlainIteration) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (const auto& name : gallery_names()) {
    const SceneConfig s = gallery(name);
    const PiecewiseMap f = s.build();
    const ConstraintSpec& c = s.regions[0].constraints[0];
    if (c.side != Side::negative) continue;
    auto m = [](const MapSpec& x) { return std::array<cplx, 4>{x.a, x.b, x.c, x.d}; };
    const auto m0 = m(s.regions[0].map), m1 = m(s.regions[1].map);
    const oracle::TwoRegion o{c.a, c.b, c.d, {m0[0], m0[1], m0[2], m0[3]}, {m1[0], m1[1], m1[2], m1[3]}};
    int agreed = 0;
    for (int i = 0; i < 200; ++i) {
      const SpherePoint p(cplx(u(rng), u(rng)));
      const ItinerarySeq it = f.itinerary(p, 12);
      if (it.contaminated()) continue;
      const auto ref = o.itinerary(p.value(), 12);
      // Plain iteration drifts from the normalized one only near a boundary.
      ASSERT_EQ(std::vector<int>(it.symbols.begin(), it.symbols.end()), ref) << name;
      ++agreed;
    }
    EXPECT_GT(agreed, 100) << name;
  }
}

// I(F(x)) equals the shift of I(x) whenever no step touched a boundary.
TEST(Itinerary, Semiconjugacy) {
  std::mt19937_64 rng(22);
  for (const auto& name : gallery_names()) {
    const SceneConfig s = gallery(name);
    const PiecewiseMap f = s.build();
    std::uniform_int_distribution<int> px(0, 1023);
    int used = 0;
    for (int i = 0; i < 1000; ++i) {
      const SpherePoint p = s.viewport.pixel_center(px(rng), px(rng), 1024, 1024);
      const ItinerarySeq a = f.itinerary(p, 25);
      if (a.contaminated()) continue;
      const ItinerarySeq b = f.itinerary(f(p), 24);
      ASSERT_TRUE(std::equal(b.symbols.begin(), b.symbols.end(), a.symbols.begin() + 1)) << name;
      ++used;
    }
    EXPECT_GT(used, 900) << name;
  }
}

TEST(Periodicity, Examples) {
  using V = std::vector<int>;
  auto p1 = detect_periodicity(V(12, 1));
  ASSERT_TRUE(p1);
  EXPECT_EQ(p1->preperiod, 0u);
  EXPECT_EQ(p1->period, 1u);
  V three;
  for (int k = 0; k < 4; ++k) three.insert(three.end(), {0, 1, 1});
  auto p3 = detect_periodicity(three);
  ASSERT_TRUE(p3);
  EXPECT_EQ(p3->preperiod, 0u);
  EXPECT_EQ(p3->period, 3u);
  V pre{1, 0, 0};
  for (int k = 0; k < 8; ++k) pre.insert(pre.end(), {0, 1});
  auto pp = detect_periodicity(pre);
  ASSERT_TRUE(pp);
  EXPECT_EQ(pp->period, 2u);
  EXPECT_EQ(pp->preperiod, 3u);
  EXPECT_FALSE(detect_periodicity(V{0, 1, 1, 0, 1, 0, 0, 1, 0, 0, 0, 1}));
}

TEST(Periodicity, ReportedPeriodHolds) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> bit(0, 1), len(1, 5);
  for (int t = 0; t < 2000; ++t) {
    std::vector<int> unit(static_cast<std::size_t>(len(rng)));
    for (auto& x : unit) x = bit(rng);
    std::vector<int> s(static_cast<std::size_t>(len(rng)));
    for (auto& x : s) x = bit(rng);
    while (s.size() < 40) s.insert(s.end(), unit.begin(), unit.end());
    const auto p = detect_periodicity(s);
    ASSERT_TRUE(p);
    for (std::size_t k = p->preperiod; k + p->period < s.size(); ++k) ASSERT_EQ(s[k], s[k + p->period]);
    // No shorter period fits the tail.
    for (std::size_t q = 1; q < p->period; ++q) {
      bool fits = true;
      for (std::size_t k = p->preperiod; k + q < s.size() && fits; ++k) fits = s[k] == s[k + q];
      EXPECT_FALSE(fits);
    }
    EXPECT_LE(p->period, unit.size());
  }
}

// With a bounded boundary, the branch owning infinity a rotation and the
// other branches euclidean isometries, orbits from a disc about the origin
// containing the boundary stay inside a slightly larger disc.
TEST(Orbit, EuclideanIsometryConfinement) {
  const cplx l = std::polar(1.0, 2.0 * kPi / 5.0);
  const PiecewiseMap f = PiecewiseMap::two_sided(GenCircle::circle(1.5, 0.5), Moebius::affine(-1.0, cplx(3.0, 0.0)),
                                                 Moebius::scale(l));
  // Both branches preserve |z| <= 2 on their regions: z -> 3 - z maps the
  // disc |z - 3/2| < 1/2 onto itself, and the rotation preserves |z|.
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> u(-1.4, 1.4);
  for (int t = 0; t < 500; ++t) {
    cplx z(u(rng), u(rng));
    if (std::abs(z) > 2.0) continue;
    SpherePoint x(z);
    for (int k = 0; k < 200; ++k) {
      x = f(x);
      ASSERT_LE(std::abs(x.value()), 2.0 + 1e-9);
    }
  }
}

TEST(RotationNumber, WholeSphere) {
  const double rho = descent_rotation_number(whole_sphere(), 0.9, 100000);
  EXPECT_NEAR(rho, std::log(2.0) / std::log(3.0), 1e-3);
}

TEST(ComposeWord, AppliesFirstSymbolFirst) {
  const PiecewiseMap f = whole_sphere();
  const Moebius m = f.compose_word({0, 1, 1});  // x2, then x2/3 twice
  EXPECT_NEAR(chordal(m.apply(1.0), 8.0 / 9.0), 0.0, 1e-14);
}
