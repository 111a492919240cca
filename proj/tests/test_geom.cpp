#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hop/geom.hpp"
#include "hop/rng.hpp"

using namespace hop;

namespace {

Point rand_point(Rng& rng, long long bound) {
  return Point(rng.range(-bound, bound), rng.range(-bound, bound));
}

Line rand_line(Rng& rng, long long bound) {
  return Line(Rational(rng.range(-bound, bound)),
              Rational(rng.range(-bound, bound)));
}

}  // namespace

TEST_CASE("side: stated examples") {
  CHECK(side(Point(0, 1), Line(0, 0)) == SideSign::Above);
  CHECK(side(Point(0, 0), Line(0, 0)) == SideSign::On);
  // (1,2) vs y = 3x - 2: 2 > 1
  CHECK(side(Point(1, 2), Line(3, -2)) == SideSign::Above);
}

TEST_CASE("duality formulas and involution") {
  CHECK(dual_point(Point(1, 0)) == Line(1, 0));  // y = x
  CHECK(dual_line(dual_point(Point(3, 7))) == Point(3, 7));
  Rng rng(17);
  for (int it = 0; it < 200; ++it) {
    Point p = rand_point(rng, 1000);
    Line l = rand_line(rng, 1000);
    CHECK(dual_line(dual_point(p)) == p);
    CHECK(dual_point(dual_line(l)) == l);
  }
}

TEST_CASE("duality preserves side on 1e5 random pairs") {
  Rng rng(2024);
  for (int it = 0; it < 100000; ++it) {
    Point p = rand_point(rng, 1 << 20);
    Line l = rand_line(rng, 1 << 20);
    CHECK(side(p, l) == side(dual_line(l), dual_point(p)));
  }
}

TEST_CASE("side is invariant under positive scaling") {
  Rng rng(3);
  for (int it = 0; it < 2000; ++it) {
    Point p = rand_point(rng, 1000000);
    Line l = rand_line(rng, 1000000);
    long long k = rng.range(1, 1000000);
    // scaling (x,y) -> (kx, ky) maps y = ax+b to y = ax + kb
    Point ps(p.x * Rational(k), p.y * Rational(k));
    Line ls(l.a, l.b * Rational(k));
    CHECK(side(p, l) == side(ps, ls));
  }
}

TEST_CASE("meet_x: examples and symmetry") {
  CHECK(*meet_x(Line(0, 0), Line(1, 0)) == Rational(0));
  CHECK(!meet_x(Line(1, 0), Line(1, 1)));
  CHECK(!meet_x(Line(1, 1), Line(1, 1)));
  CHECK(*meet_x(Line(2, 1), Line(-1, 4)) == Rational(1));
  Rng rng(11);
  for (int it = 0; it < 2000; ++it) {
    Line l1 = rand_line(rng, 10000), l2 = rand_line(rng, 10000);
    auto a = meet_x(l1, l2), b = meet_x(l2, l1);
    CHECK(a.has_value() == b.has_value());
    if (a) {
      CHECK(*a == *b);
      CHECK(l1.eval(*a) == l2.eval(*a));
    }
  }
}

TEST_CASE("shear: identity at lambda 0, incidences preserved") {
  Rng rng(29);
  for (int it = 0; it < 500; ++it) {
    Point p = rand_point(rng, 100000);
    Line l = rand_line(rng, 1000);
    CHECK(shear(p, ExactScalar(0)) == p);
    CHECK(shear(l, ExactScalar(0)) == l);
    long long lam = rng.range(-20, 20);
    Rational denom = Rational(1) + Rational(lam) * l.a;
    if (denom.is_zero()) {
      CHECK_THROWS(shear(l, ExactScalar(lam)));
      continue;
    }
    Line lsh = shear(l, ExactScalar(lam));
    Point psh = shear(p, ExactScalar(lam));
    CHECK((side(p, l) == SideSign::On) == (side(psh, lsh) == SideSign::On));
  }
}

TEST_CASE("shear preserves above counts when images stay non-vertical") {
  Rng rng(31);
  for (int it = 0; it < 200; ++it) {
    std::vector<Point> pts;
    std::vector<Line> lns;
    for (int i = 0; i < 12; ++i) pts.push_back(rand_point(rng, 500));
    for (int i = 0; i < 12; ++i) lns.push_back(rand_line(rng, 20));
    // above/below preserved when 1 + lambda*a > 0 for every line
    long long lam = rng.range(0, 5);  // slopes >= 0 keep orientation
    for (auto& l : lns) l.a = l.a.sign() < 0 ? -l.a : l.a;
    auto pts2 = shear(pts, ExactScalar(lam));
    auto lns2 = shear(lns, ExactScalar(lam));
    int above1 = 0, above2 = 0, inc1 = 0, inc2 = 0;
    for (size_t i = 0; i < pts.size(); ++i)
      for (size_t j = 0; j < lns.size(); ++j) {
        SideSign s1 = side(pts[i], lns[j]), s2 = side(pts2[i], lns2[j]);
        above1 += s1 == SideSign::Above;
        above2 += s2 == SideSign::Above;
        inc1 += s1 == SideSign::On;
        inc2 += s2 == SideSign::On;
      }
    CHECK(above1 == above2);
    CHECK(inc1 == inc2);
  }
}

TEST_CASE("segment normalizes endpoint order and rejects degenerate") {
  Segment s(Point(3, 1), Point(1, 5));
  CHECK(s.p == Point(1, 5));
  CHECK(s.q == Point(3, 1));
  CHECK_THROWS(Segment(Point(1, 1), Point(1, 1)));
  Segment v(Point(2, 9), Point(2, 4));
  CHECK(v.vertical());
  CHECK(v.p == Point(2, 4));
}

TEST_CASE("perturbed side resolves ties by direction") {
  Line l(1, 0);
  Point on(5, 5);
  CHECK(side_perturbed(on, l, Perturb::Up) == SideSign::Above);
  CHECK(side_perturbed(on, l, Perturb::Down) == SideSign::Below);
  CHECK(side_perturbed(Point(0, 3), l, Perturb::Down) == SideSign::Above);
}

TEST_CASE("predicate evaluations are counted") {
  stats::Scope scope;
  Rng rng(1);
  for (int i = 0; i < 100; ++i)
    (void)side(rand_point(rng, 10), rand_line(rng, 10));
  CHECK(scope.delta() == 100);
}
