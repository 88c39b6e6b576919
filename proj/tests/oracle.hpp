// Independent reference computations for the tests. Nothing here calls into
// the library's geometry: each oracle is written from the defining formula
// with plain std::complex arithmetic, so agreement is meaningful.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <vector>

namespace oracle {

using C = std::complex<double>;

// A point of the extended plane: nullopt is infinity.
using P = std::optional<C>;

inline double chordal(const P& p, const P& q) {
  if (!p && !q) return 0.0;
  if (!p) return 2.0 / std::sqrt(1.0 + std::norm(*q));
  if (!q) return 2.0 / std::sqrt(1.0 + std::norm(*p));
  return 2.0 * std::abs(*p - *q) / std::sqrt((1.0 + std::norm(*p)) * (1.0 + std::norm(*q)));
}

// (a z + b) / (c z + d) evaluated straight from the formula.
inline P mobius(C a, C b, C c, C d, const P& z) {
  if (!z) {
    if (c == C(0.0)) return std::nullopt;
    return a / c;
  }
  const C den = c * *z + d;
  if (den == C(0.0)) return std::nullopt;
  return (a * *z + b) / den;
}

// Sign of a |z|^2 + 2 Re(conj(b) z) + d.
inline double circle_form(double a, C b, double d, C z) {
  return a * std::norm(z) + 2.0 * (std::conj(b) * z).real() + d;
}

// Two-region scene: region 0 is {form < 0}, region 1 the rest.
struct TwoRegion {
  double a;
  C b;
  double d;
  C m0[4], m1[4];

  int locate(const P& z) const {
    if (!z) return a > 0 ? 1 : 0;  // a line passes through infinity: boundary, lowest index
    return circle_form(a, b, d, *z) <= 0 ? 0 : 1;
  }
  P step(const P& z) const {
    const C* m = locate(z) == 0 ? m0 : m1;
    return mobius(m[0], m[1], m[2], m[3], z);
  }
  std::vector<int> itinerary(P z, int k) const {
    std::vector<int> out;
    for (int i = 0; i < k; ++i) {
      out.push_back(locate(z));
      z = step(z);
    }
    return out;
  }
};

// Naive O(|A||B|) Hausdorff distance in the chordal metric.
inline double hausdorff(const std::vector<P>& a, const std::vector<P>& b) {
  auto directed = [](const std::vector<P>& x, const std::vector<P>& y) {
    double worst = 0.0;
    for (const auto& p : x) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : y) best = std::min(best, chordal(p, q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

// Exact iteration of the whole-sphere map on A_n = {3^m / 2^n}. A value
// 3^i / 2^j is kept as the exponent pair; comparing with 1 is an exact
// integer comparison 3^i < 2^j on 64-bit integers (valid while 3^i and 2^j
// fit, which covers every case the tests use).
struct PowerRatio {
  int three = 0, two = 0;  // value 3^three / 2^two, both exponents may be negative

  int compare_one() const {
    // 3^i / 2^j vs 1, with exponents moved to the larger side.
    std::uint64_t lhs = 1, rhs = 1;
    for (int k = 0; k < std::abs(three); ++k) (three > 0 ? lhs : rhs) *= 3;
    for (int k = 0; k < std::abs(two); ++k) (two > 0 ? rhs : lhs) *= 2;
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
  }
  double value() const { return std::pow(3.0, three) / std::pow(2.0, two); }
};

// Steps until 3^m/2^n reaches exactly 1 under F(x) = 2x (x < 1), 2x/3
// (x >= 1), or -1 if it does not within max_steps.
inline int steps_to_one(int m, int n, int max_steps) {
  PowerRatio q{m, n};
  for (int s = 0; s <= max_steps; ++s) {
    const int c = q.compare_one();
    if (c == 0) return s;
    if (c < 0) {
      q.two -= 1;
    } else {
      q.two -= 1;
      q.three -= 1;
    }
  }
  return -1;
}

// Radii r of the level-<=n preimage circles of the unit circle under the
// whole-sphere map, by direct backward enumeration on the positive axis.
// F(r) = 2r for r < 1 and 2r/3 for r >= 1, so the preimages of a radius s
// are s/2 (kept when s/2 < 1) and 3s/2 (kept when 3s/2 >= 1).
inline std::vector<double> whole_sphere_radii(int n) {
  std::set<std::pair<int, int>> seen{{0, 0}};  // (power of 3, power of 2) in the denominator sense
  std::vector<std::pair<int, int>> layer{{0, 0}};
  for (int level = 1; level <= n; ++level) {
    std::vector<std::pair<int, int>> next;
    for (auto [i, j] : layer) {
      // value 3^i / 2^j
      const PowerRatio half{i, j + 1};
      if (half.compare_one() < 0 && seen.insert({i, j + 1}).second) next.push_back({i, j + 1});
      const PowerRatio up{i + 1, j + 1};
      if (up.compare_one() >= 0 && seen.insert({i + 1, j + 1}).second) next.push_back({i + 1, j + 1});
    }
    layer = std::move(next);
  }
  std::vector<double> out;
  for (auto [i, j] : seen) out.push_back(PowerRatio{i, j}.value());
  std::sort(out.begin(), out.end());
  return out;
}

// Plain 4-connected labelling of equal values, for cross-checking.
inline int count_components(const std::vector<std::uint32_t>& key, int w, int h, std::size_t min_area = 1) {
  std::vector<int> lab(key.size(), -1);
  int count = 0;
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < key.size(); ++s) {
    if (lab[s] >= 0) continue;
    std::size_t area = 0;
    stack.push_back(s);
    lab[s] = count;
    while (!stack.empty()) {
      const std::size_t p = stack.back();
      stack.pop_back();
      ++area;
      const int i = static_cast<int>(p % w), j = static_cast<int>(p / w);
      const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
      for (int k = 0; k < 4; ++k) {
        const int a = i + di[k], b = j + dj[k];
        if (a < 0 || b < 0 || a >= w || b >= h) continue;
        const std::size_t q = static_cast<std::size_t>(b) * w + a;
        if (lab[q] < 0 && key[q] == key[s]) {
          lab[q] = count;
          stack.push_back(q);
        }
      }
    }
    if (area >= min_area) ++count;
  }
  return count;
}

// Number of freely reduced words of length 1..L over r generators.
inline std::size_t reduced_word_count(int r, int L) {
  std::size_t total = 0, layer = 2 * static_cast<std::size_t>(r);
  for (int len = 1; len <= L; ++len) {
    total += layer;
    layer *= 2 * static_cast<std::size_t>(r) - 1;
  }
  return total;
}

}  // namespace oracle
