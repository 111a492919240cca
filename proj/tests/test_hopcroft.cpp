#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hop/hopcroft.hpp"
#include "hop/rng.hpp"

using namespace hop;

namespace {

struct Instance {
  std::vector<Point> pts;
  std::vector<Line> lines;
};

Instance random_instance(Rng& rng, size_t m, size_t n, long long bound) {
  Instance in;
  for (size_t i = 0; i < m; ++i)
    in.pts.push_back(Point(rng.range(-bound, bound), rng.range(-bound, bound)));
  for (size_t j = 0; j < n; ++j)
    in.lines.push_back(Line(Rational(rng.range(-bound, bound)),
                            Rational(rng.range(-bound, bound))));
  return in;
}

// degenerate generator: duplicate points, concurrent lines, grid incidences
Instance degenerate_instance(Rng& rng, size_t m, size_t n) {
  Instance in;
  long long k = 4;
  for (size_t i = 0; i < m; ++i) {
    if (rng.below(3) == 0 && !in.pts.empty()) {
      in.pts.push_back(in.pts[rng.below(in.pts.size())]);  // duplicate
    } else {
      in.pts.push_back(Point(rng.range(-k, k), rng.range(-k, k)));
    }
  }
  for (size_t j = 0; j < n; ++j) {
    if (rng.below(3) == 0 && !in.lines.empty()) {
      in.lines.push_back(in.lines[rng.below(in.lines.size())]);
    } else if (rng.below(3) == 0) {
      // through the origin: concurrency
      in.lines.push_back(Line(Rational(rng.range(-k, k)), Rational(0)));
    } else {
      in.lines.push_back(
          Line(Rational(rng.range(-k, k)), Rational(rng.range(-k, k))));
    }
  }
  return in;
}

void check_engines(const Instance& in, uint64_t seed) {
  CountResult oracle = count_brute_serial(in.pts, in.lines);
  CountResult par = count_brute(in.pts, in.lines);
  CHECK(par.above == oracle.above);
  CHECK(par.incidences == oracle.incidences);

  CountResult arr = count_arrangement(in.pts, in.lines, seed);
  CHECK(arr.above == oracle.above);
  CHECK(arr.incidences == oracle.incidences);

  CountResult rec = count_recursive(in.pts, in.lines, 2, seed + 1);
  CHECK(rec.above == oracle.above);
  CHECK(rec.incidences == oracle.incidences);

  CountResult cas = count_cascade(in.pts, in.lines, seed + 2);
  CHECK(cas.above == oracle.above);
  CHECK(cas.incidences == oracle.incidences);

  CountResult asym = count_asymmetric(in.pts, in.lines, seed + 3);
  CHECK(asym.above == oracle.above);
  CHECK(asym.incidences == oracle.incidences);
}

}  // namespace

TEST_CASE("stated micro examples") {
  CountResult r1 = count_brute({Point(0, 1)}, {Line(0, 0)});
  CHECK(r1.above == 1);
  CHECK(r1.incidences == 0);
  CountResult r2 = count_brute({Point(0, 0)}, {Line(0, 0)});
  CHECK(r2.above == 0);
  CHECK(r2.incidences == 1);
  CountResult r3 = count_brute({}, {});
  CHECK(r3.above == 0);
  CHECK(r3.incidences == 0);
  CountResult r4 = count_cascade({Point(0, 1)}, {Line(0, 0)}, 1);
  CHECK(r4.above == 1);
}

TEST_CASE("all engines agree on random instances") {
  Rng rng(1234);
  for (int it = 0; it < 15; ++it) {
    size_t m = 1 + rng.below(120), n = 1 + rng.below(120);
    Instance in = random_instance(rng, m, n, 1 + (long long)rng.below(300));
    check_engines(in, rng.next());
  }
}

TEST_CASE("all engines agree on degenerate instances") {
  Rng rng(99);
  for (int it = 0; it < 12; ++it) {
    size_t m = 1 + rng.below(80), n = 1 + rng.below(80);
    Instance in = degenerate_instance(rng, m, n);
    check_engines(in, rng.next());
  }
}

TEST_CASE("engines agree on an incidence-heavy grid") {
  // points on a k x k grid, lines y = i x + j: many exact incidences
  long long k = 4;
  Instance in;
  for (long long x = 0; x < k; ++x)
    for (long long y = 0; y < 2 * k * k; ++y) in.pts.push_back(Point(x, y));
  for (long long a = 0; a < k; ++a)
    for (long long b = 0; b < k * k; ++b)
      in.lines.push_back(Line(Rational(a), Rational(b)));
  check_engines(in, 7);
}

TEST_CASE("asymmetric shapes") {
  Rng rng(55);
  {
    Instance in = random_instance(rng, 2000, 20, 50);
    CountResult oracle = count_brute_serial(in.pts, in.lines);
    CountResult asym = count_asymmetric(in.pts, in.lines, 3);
    CHECK(asym.above == oracle.above);
    CHECK(asym.incidences == oracle.incidences);
  }
  {
    Instance in = random_instance(rng, 15, 900, 40);
    CountResult oracle = count_brute_serial(in.pts, in.lines);
    CountResult asym = count_asymmetric(in.pts, in.lines, 4);
    CHECK(asym.above == oracle.above);
    CHECK(asym.incidences == oracle.incidences);
  }
  {
    Instance in = random_instance(rng, 1, 50, 10);
    CHECK(count_asymmetric(in.pts, in.lines, 5).above ==
          count_brute_serial(in.pts, in.lines).above);
  }
}

TEST_CASE("depth limit zero equals the arrangement baseline") {
  Rng rng(42);
  Instance in = random_instance(rng, 60, 60, 30);
  CountResult rec = count_recursive(in.pts, in.lines, 0, 9);
  CountResult arr = count_arrangement(in.pts, in.lines, 9);
  CHECK(rec.above == arr.above);
  CHECK(rec.incidences == arr.incidences);
}

TEST_CASE("weighted counts match brute double loops") {
  Rng rng(77);
  for (int it = 0; it < 10; ++it) {
    size_t m = 1 + rng.below(60), n = 1 + rng.below(60);
    Instance in = it % 2 ? degenerate_instance(rng, m, n)
                         : random_instance(rng, m, n, 20);
    std::vector<int64_t> wp, wl;
    for (size_t i = 0; i < in.pts.size(); ++i) wp.push_back(rng.range(-40, 40));
    for (size_t j = 0; j < in.lines.size(); ++j) wl.push_back(rng.range(-40, 40));
    WeightedResult w = weighted_counts(in.pts, wp, in.lines, wl, rng.next());
    for (size_t i = 0; i < in.pts.size(); ++i) {
      int64_t expect = 0;
      for (size_t j = 0; j < in.lines.size(); ++j)
        if (side(in.pts[i], in.lines[j]) == SideSign::Above) expect += wl[j];
      REQUIRE(w.per_point[i] == expect);
    }
    for (size_t j = 0; j < in.lines.size(); ++j) {
      int64_t expect = 0;
      for (size_t i = 0; i < in.pts.size(); ++i)
        if (side(in.pts[i], in.lines[j]) == SideSign::Above) expect += wp[i];
      REQUIRE(w.per_line[j] == expect);
    }
  }
}

TEST_CASE("weighted unit sums aggregate to the above count") {
  Rng rng(88);
  Instance in = degenerate_instance(rng, 70, 70);
  std::vector<int64_t> unit_p(in.pts.size(), 1), unit_l(in.lines.size(), 1);
  WeightedResult w = weighted_counts(in.pts, unit_p, in.lines, unit_l, 5);
  CountResult oracle = count_brute_serial(in.pts, in.lines);
  int64_t sum_p = 0, sum_l = 0;
  for (auto v : w.per_point) sum_p += v;
  for (auto v : w.per_line) sum_l += v;
  CHECK(sum_p == oracle.above);
  CHECK(sum_l == oracle.above);

  // zero weights give zero sums
  std::vector<int64_t> zp(in.pts.size(), 0), zl(in.lines.size(), 0);
  WeightedResult z = weighted_counts(in.pts, zp, in.lines, zl, 6);
  for (auto v : z.per_point) CHECK(v == 0);
  for (auto v : z.per_line) CHECK(v == 0);
}

TEST_CASE("individual counts match brute per point and per line") {
  Rng rng(111);
  for (int it = 0; it < 6; ++it) {
    Instance in = degenerate_instance(rng, 50, 50);
    IndividualCounts ic = individual_counts(in.pts, in.lines, rng.next());
    for (size_t i = 0; i < in.pts.size(); ++i) {
      int64_t below = 0, on = 0;
      for (const auto& l : in.lines) {
        SideSign s = side(in.pts[i], l);
        below += s == SideSign::Above;
        on += s == SideSign::On;
      }
      REQUIRE(ic.below_per_point[i] == below);
      REQUIRE(ic.on_per_point[i] == on);
    }
    for (size_t j = 0; j < in.lines.size(); ++j) {
      int64_t above = 0, on = 0;
      for (const auto& p : in.pts) {
        SideSign s = side(p, in.lines[j]);
        above += s == SideSign::Above;
        on += s == SideSign::On;
      }
      REQUIRE(ic.above_per_line[j] == above);
      REQUIRE(ic.on_per_line[j] == on);
    }
  }
}
