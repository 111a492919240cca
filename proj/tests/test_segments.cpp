#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hop/rng.hpp"
#include "hop/segments.hpp"

using namespace hop;

namespace {

Segment rand_seg(Rng& rng, long long bound) {
  for (;;) {
    Point p(rng.range(-bound, bound), rng.range(-bound, bound));
    Point q(rng.range(-bound, bound), rng.range(-bound, bound));
    if (!(p == q)) return Segment(p, q);
  }
}

std::vector<Segment> random_suite(Rng& rng, size_t n, long long bound) {
  std::vector<Segment> out;
  for (size_t i = 0; i < n; ++i) out.push_back(rand_seg(rng, bound));
  return out;
}

// shared endpoints, collinear overlaps, verticals, duplicates
std::vector<Segment> degenerate_suite(Rng& rng, size_t n) {
  std::vector<Segment> out;
  long long k = 6;
  while (out.size() < n) {
    uint64_t kind = rng.below(6);
    if (kind == 0 && !out.empty()) {
      // share an endpoint with an existing segment
      const Segment& s = out[rng.below(out.size())];
      Point shared = rng.below(2) ? s.p : s.q;
      Point other(rng.range(-k, k), rng.range(-k, k));
      if (other == shared) continue;
      out.push_back(Segment(shared, other));
    } else if (kind == 1 && !out.empty()) {
      out.push_back(out[rng.below(out.size())]);  // duplicate
    } else if (kind == 2 && !out.empty()) {
      // collinear overlap: scale an existing segment along its line
      const Segment& s = out[rng.below(out.size())];
      Rational t1(ExactScalar(rng.range(-2, 2)), ExactScalar(2));
      Rational t2 = t1 + Rational(ExactScalar(rng.range(1, 4)), ExactScalar(2));
      Point a(s.p.x + (s.q.x - s.p.x) * t1, s.p.y + (s.q.y - s.p.y) * t1);
      Point b(s.p.x + (s.q.x - s.p.x) * t2, s.p.y + (s.q.y - s.p.y) * t2);
      if (a == b) continue;
      out.push_back(Segment(a, b));
    } else if (kind == 3) {
      long long x = rng.range(-k, k), y1 = rng.range(-k, k),
                y2 = rng.range(-k, k);
      if (y1 == y2) continue;
      out.push_back(Segment(Point(x, y1), Point(x, y2)));  // vertical
    } else {
      out.push_back(rand_seg(rng, k));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("intersection predicate: crossing, touching, collinear") {
  Segment a(Point(0, 0), Point(4, 4));
  Segment b(Point(0, 4), Point(4, 0));
  CHECK(segments_intersect(a, b));
  Segment c(Point(0, 1), Point(4, 5));
  CHECK(!segments_intersect(a, c));  // parallel disjoint
  Segment d(Point(4, 4), Point(8, 0));
  CHECK(segments_intersect(a, d));  // shared endpoint
  Segment e(Point(2, 2), Point(6, 6));
  CHECK(segments_intersect(a, e));  // collinear overlap
  Segment f(Point(5, 5), Point(6, 6));
  CHECK(!segments_intersect(a, f));  // collinear disjoint
  Segment g(Point(2, 0), Point(2, 2));
  CHECK(segments_intersect(a, g));  // vertical touching at (2,2)
}

TEST_CASE("seg_intersections: stated examples") {
  CHECK(seg_intersections({Segment(Point(0, 0), Point(4, 4)),
                           Segment(Point(0, 4), Point(4, 0))},
                          1) == 1);
  CHECK(seg_intersections({Segment(Point(0, 0), Point(4, 4)),
                           Segment(Point(0, 1), Point(4, 5))},
                          1) == 0);
  CHECK(seg_intersections({}, 1) == 0);
}

TEST_CASE("seg_intersections matches brute force on random suites") {
  Rng rng(2001);
  for (int it = 0; it < 14; ++it) {
    size_t n = 1 + rng.below(90);
    auto segs = random_suite(rng, n, 1 + (long long)rng.below(40));
    int64_t want = seg_intersections_brute(segs);
    int64_t got = seg_intersections(segs, rng.next());
    REQUIRE(got == want);
  }
}

TEST_CASE("seg_intersections matches brute force on degenerate suites") {
  Rng rng(2002);
  for (int it = 0; it < 14; ++it) {
    size_t n = 1 + rng.below(70);
    auto segs = degenerate_suite(rng, n);
    int64_t want = seg_intersections_brute(segs);
    int64_t got = seg_intersections(segs, rng.next());
    REQUIRE(got == want);
  }
}

TEST_CASE("seg_components: stated examples") {
  // pairwise disjoint -> n components
  std::vector<Segment> disjoint;
  for (int i = 0; i < 8; ++i)
    disjoint.push_back(Segment(Point(5 * i, 0), Point(5 * i + 2, 2)));
  auto lab = seg_components(disjoint, 1);
  std::set<uint32_t> uniq(lab.begin(), lab.end());
  CHECK(uniq.size() == 8);

  // a chain is one component
  std::vector<Segment> chain;
  for (int i = 0; i < 10; ++i)
    chain.push_back(Segment(Point(2 * i, i % 2 ? 2 : 0),
                            Point(2 * i + 3, i % 2 ? 0 : 2)));
  lab = seg_components(chain, 2);
  for (auto l : lab) CHECK(l == lab[0]);
}

TEST_CASE("seg_components matches brute force, with sparse witness graphs") {
  Rng rng(2003);
  for (int it = 0; it < 16; ++it) {
    size_t n = 1 + rng.below(70);
    auto segs = it % 2 ? degenerate_suite(rng, n)
                       : random_suite(rng, n, 1 + (long long)rng.below(12));
    auto want = seg_components_brute(segs);
    ComponentGraph g;
    auto got = seg_components(segs, rng.next(), &g);
    REQUIRE(got == want);
    double cap = 16.0 * double(n) * std::max(1.0, std::log2(double(n)));
    CHECK(double(g.edges.size()) <= cap);
  }
}
