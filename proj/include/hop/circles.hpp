#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hop/geom.hpp"

namespace hop {

// u + v*sqrt(d) with rational u, v and rational d >= 0; exact comparisons by
// nested squaring with sign analysis
struct Quad {
  Rational u, v, d;

  Quad() = default;
  Quad(Rational uu) : u(std::move(uu)), v(0), d(0) {}  // NOLINT
  Quad(Rational uu, Rational vv, Rational dd)
      : u(std::move(uu)), v(std::move(vv)), d(std::move(dd)) {}

  bool rational() const { return v.is_zero() || d.is_zero(); }
  int cmp(const Quad& o) const;
  bool operator<(const Quad& o) const { return cmp(o) < 0; }
  bool operator==(const Quad& o) const { return cmp(o) == 0; }
  double to_double() const;
};

// sign of a + b*sqrt(d1) + c*sqrt(d2), all rational, d1, d2 >= 0
int quad_sign(const Rational& a, const Rational& b, const Rational& d1,
              const Rational& c, const Rational& d2);

// a rational strictly between two quads (requires lo < hi)
Rational rational_between(const Quad& lo, const Quad& hi);

// pairs (red, blue) with squared distance <= s, plus per-red counts
struct UnitDistResult {
  int64_t total = 0;
  std::vector<int64_t> per_red;
};

UnitDistResult unit_dist_count_sq(const std::vector<Point>& red,
                                  const std::vector<Point>& blue,
                                  const Rational& s, uint64_t seed);
UnitDistResult unit_dist_count(const std::vector<Point>& red,
                               const std::vector<Point>& blue,
                               const Rational& radius, uint64_t seed);
UnitDistResult unit_dist_brute_sq(const std::vector<Point>& red,
                                  const std::vector<Point>& blue,
                                  const Rational& s);

}  // namespace hop
