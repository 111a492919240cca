#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hop/arrangement.hpp"
#include "hop/rng.hpp"

using namespace hop;

namespace {

std::vector<Line> rand_lines(Rng& rng, int n, long long bound) {
  std::vector<Line> ls;
  for (int i = 0; i < n; ++i)
    ls.push_back(Line(Rational(rng.range(-bound, bound)),
                      Rational(rng.range(-bound, bound))));
  return ls;
}

int64_t brute_below(const std::vector<Line>& input, const Point& q) {
  int64_t c = 0;
  for (const auto& l : input) c += side(q, l) == SideSign::Above;
  return c;
}

}  // namespace

TEST_CASE("build_arrangement: stated examples") {
  Arrangement a0 = build_arrangement({});
  CHECK(a0.num_faces() == 1);
  CHECK(a0.faces()[0].below_mult == 0);

  Arrangement a3 = build_arrangement({Line(0, 0), Line(1, 0), Line(-1, 3)});
  CHECK(a3.num_faces() == 7);
  CHECK(a3.num_true_vertices() == 3);

  Arrangement ac = build_arrangement({Line(0, 0), Line(1, 0), Line(-1, 0)});
  CHECK(ac.num_faces() == 6);
  CHECK(ac.num_true_vertices() == 1);
}

TEST_CASE("euler relation holds on random degenerate instances") {
  Rng rng(71);
  for (int it = 0; it < 40; ++it) {
    int n = int(rng.below(12));
    Arrangement arr = build_arrangement(rand_lines(rng, n, 3));
    CHECK(arr.euler_characteristic() == 2);
  }
}

TEST_CASE("annotate_below: extremes and brute-force samples") {
  Rng rng(72);
  for (int it = 0; it < 25; ++it) {
    int n = 1 + int(rng.below(10));
    auto lines = rand_lines(rng, n, 4);
    Arrangement arr = build_arrangement(lines);
    auto below = annotate_below(arr);
    int64_t mn = below[0], mx = below[0];
    for (auto b : below) {
      mn = std::min(mn, b);
      mx = std::max(mx, b);
    }
    CHECK(mn == 0);  // bottom unbounded face
    // top face counts every input line (with multiplicity) unless some pair
    // of distinct-slope lines never separates... for lines, the top face is
    // always above all of them
    CHECK(mx == int64_t(n));
    for (uint32_t f = 0; f < arr.num_faces(); ++f) {
      Point s = arr.face_sample(f);
      CHECK(below[f] == brute_below(lines, s));
      // samples are interior: never on a line
      for (const auto& l : arr.distinct_lines())
        CHECK(side(s, l) != SideSign::On);
    }
  }
}

TEST_CASE("adjacent faces differ by the multiplicity of the crossed line") {
  Rng rng(73);
  for (int it = 0; it < 20; ++it) {
    int n = 1 + int(rng.below(8));
    auto lines = rand_lines(rng, n, 3);
    lines.push_back(lines[0]);  // force a duplicate
    Arrangement arr = build_arrangement(lines);
    for (const auto& he : arr.halfedges()) {
      if (he.line == kNone32) continue;
      uint32_t f = he.face, g = arr.halfedges()[he.twin].face;
      if (f >= arr.num_faces() || g >= arr.num_faces()) continue;
      int64_t d = arr.faces()[f].below_mult - arr.faces()[g].below_mult;
      if (d < 0) d = -d;
      CHECK(d == int64_t(arr.multiplicity()[he.line]));
    }
  }
}

TEST_CASE("build_vd: stated examples") {
  VertDecomp v1 = build_vd(std::vector<Line>{Line(2, 1)});
  CHECK(v1.traps.size() == 2);
  for (const auto& t : v1.traps) {
    CHECK(!t.xl);
    CHECK(!t.xr);
    CHECK((!t.top || !t.bottom));
  }
  VertDecomp v2 = build_vd(std::vector<Line>{Line(1, 0), Line(-1, 0)});
  CHECK(v2.traps.size() == 6);
}

TEST_CASE("build_vd: trapezoids tile the plane and sit inside their faces") {
  Rng rng(74);
  for (int it = 0; it < 20; ++it) {
    int n = 1 + int(rng.below(8));
    auto lines = rand_lines(rng, n, 3);
    Arrangement arr = build_arrangement(lines);
    VertDecomp vd = build_vd(arr);
    for (int s = 0; s < 150; ++s) {
      Point q(rng.range(-6, 6), rng.range(-6, 6));
      for (Perturb dir : {Perturb::Up, Perturb::Down}) {
        int holders = 0;
        uint32_t face = kNone32;
        for (size_t t = 0; t < vd.traps.size(); ++t) {
          if (vd.traps[t].contains(q, dir)) {
            ++holders;
            face = vd.trap_face[t];
          }
        }
        REQUIRE(holders == 1);
        // the trapezoid's face must contain q too: same below count
        int64_t b = 0;
        for (const auto& l : lines)
          b += side_perturbed(q, l, dir) == SideSign::Above;
        REQUIRE(arr.faces()[face].below_mult == b);
      }
    }
    // trapezoid counts per face sum to the total
    std::vector<int> per_face(arr.num_faces(), 0);
    for (uint32_t f : vd.trap_face) ++per_face[f];
    size_t total = 0;
    for (int c : per_face) {
      CHECK(c >= 1);
      total += size_t(c);
    }
    CHECK(total == vd.traps.size());
  }
}

TEST_CASE("face_weight_sums: trivial cases") {
  auto lines = std::vector<Line>{Line(1, 2)};
  Arrangement arr = build_arrangement(lines);
  REQUIRE(arr.num_faces() == 2);
  auto zero = face_weight_sums(arr, {0}, {0, 0});
  CHECK(zero.per_face == std::vector<int64_t>{0, 0});
  CHECK(zero.per_line == std::vector<int64_t>{0});

  std::vector<int64_t> w{7};
  auto r = face_weight_sums(arr, w, {0, 0});
  // the face above the line has line-weight sum 7, the other 0
  int top = arr.faces()[0].below_mult == 1 ? 0 : 1;
  CHECK(r.per_face[top] == 7);
  CHECK(r.per_face[1 - top] == 0);
}

TEST_CASE("face_weight_sums: apex-on-line wedge regression") {
  // faces strictly above y=2x include the left wedge whose highest vertex
  // (the apex) lies exactly on the line
  std::vector<Line> lines{Line(2, 0), Line(1, 0)};
  Arrangement arr = build_arrangement(lines);
  REQUIRE(arr.num_faces() == 4);
  std::vector<int64_t> fw(4);
  for (uint32_t f = 0; f < 4; ++f) fw[f] = 1 << f;  // distinguishable
  auto r = face_weight_sums(arr, {1, 1}, fw);
  for (uint32_t h = 0; h < 2; ++h) {
    int64_t expect = 0;
    for (uint32_t f = 0; f < 4; ++f) {
      if (side(arr.face_sample(f), lines[h]) == SideSign::Above)
        expect += fw[f];
    }
    CHECK(r.per_line[h] == expect);
  }
}

TEST_CASE("face_weight_sums: random instances against brute force") {
  Rng rng(75);
  for (int it = 0; it < 25; ++it) {
    int n = 1 + int(rng.below(9));
    auto lines = rand_lines(rng, n, 3);
    if (rng.below(2)) lines.push_back(lines[rng.below(lines.size())]);
    Arrangement arr = build_arrangement(lines);
    std::vector<int64_t> lw, fw;
    for (size_t i = 0; i < lines.size(); ++i) lw.push_back(rng.range(-50, 50));
    for (size_t f = 0; f < arr.num_faces(); ++f) fw.push_back(rng.range(-50, 50));
    auto r = face_weight_sums(arr, lw, fw);
    for (uint32_t f = 0; f < arr.num_faces(); ++f) {
      Point s = arr.face_sample(f);
      int64_t expect = 0;
      for (size_t i = 0; i < lines.size(); ++i)
        if (side(s, lines[i]) == SideSign::Above) expect += lw[i];
      REQUIRE(r.per_face[f] == expect);
    }
    for (size_t i = 0; i < lines.size(); ++i) {
      int64_t expect = 0;
      for (uint32_t f = 0; f < arr.num_faces(); ++f)
        if (side(arr.face_sample(f), lines[i]) == SideSign::Above)
          expect += fw[f];
      REQUIRE(r.per_line[i] == expect);
    }
    // unit weights reproduce annotate_below
    std::vector<int64_t> unit(lines.size(), 1);
    auto u = face_weight_sums(arr, unit, std::vector<int64_t>(arr.num_faces(), 0));
    auto below = annotate_below(arr);
    for (uint32_t f = 0; f < arr.num_faces(); ++f)
      REQUIRE(u.per_face[f] == below[f]);
  }
}
