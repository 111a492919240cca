#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "hop/rng.hpp"
#include "hop/sweep.hpp"

using namespace hop;

namespace {

std::vector<Line> rand_lines(Rng& rng, int n, long long bound) {
  std::vector<Line> ls;
  for (int i = 0; i < n; ++i)
    ls.push_back(Line(Rational(rng.range(-bound, bound)),
                      Rational(rng.range(-bound, bound))));
  return ls;
}

std::vector<int8_t> sign_vector(const std::vector<Line>& lines, const Point& q,
                                Perturb dir) {
  std::vector<int8_t> sv;
  for (const auto& l : lines)
    sv.push_back(static_cast<int8_t>(side_perturbed(q, l, dir)));
  return sv;
}

size_t brute_face_count_general_position(size_t n) {
  return n * (n - 1) / 2 + n + 1;
}

// full-plane sweep of all lines with trapezoids
struct FullSweep {
  std::vector<Line> lines;
  std::vector<Point> event_pts;
  std::vector<SweepEvent> events;
  LineSweeper sw;

  explicit FullSweep(std::vector<Line> ls)
      : lines(std::move(ls)),
        event_pts(),
        events(build_events(lines)),
        sw(lines, event_pts, all_members(lines.size()), /*with_traps=*/true) {
    for (const auto& e : events) event_pts.push_back(e.pt);
    for (uint32_t k = 0; k < events.size(); ++k)
      sw.apply_event(k, events[k].pt, events[k].block, nullptr, nullptr);
    sw.finish();
  }
  static std::vector<uint32_t> all_members(size_t n) {
    std::vector<uint32_t> m(n);
    for (uint32_t i = 0; i < n; ++i) m[i] = i;
    return m;
  }
};

bool trap_contains(const FullSweep& fs, const LineSweeper::TrapRec& t,
                   const Point& q, Perturb dir) {
  bool up = dir == Perturb::Up;
  if (t.ev_open != kNone32) {
    int c = q.x.cmp(fs.event_pts[t.ev_open].x);
    if (up ? c < 0 : c <= 0) return false;
  }
  if (t.ev_close != kNone32) {
    int c = q.x.cmp(fs.event_pts[t.ev_close].x);
    if (up ? c >= 0 : c > 0) return false;
  }
  if (t.bot != kNone32 &&
      side_perturbed(q, fs.lines[t.bot], dir) != SideSign::Above)
    return false;
  if (t.top != kNone32 &&
      side_perturbed(q, fs.lines[t.top], dir) != SideSign::Below)
    return false;
  return true;
}

}  // namespace

TEST_CASE("face counts on curated configurations") {
  // 0 lines -> 1 face
  CHECK(SlabLocator({}).face_count() == 1);
  // 1 line -> 2 faces
  CHECK(SlabLocator({Line(1, 0)}).face_count() == 2);
  // 3 lines in general position -> 7 faces
  CHECK(SlabLocator({Line(0, 0), Line(1, 0), Line(-1, 3)}).face_count() == 7);
  // 3 concurrent lines -> 6 faces
  CHECK(SlabLocator({Line(0, 0), Line(1, 0), Line(-1, 0)}).face_count() == 6);
  // parallel bundle: n+1 slabs
  CHECK(SlabLocator({Line(2, 0), Line(2, 1), Line(2, 5)}).face_count() == 4);
  // duplicate lines yield zero-area combinatorial gaps (counted as faces
  // here, but locate never returns them; the DCEL layer dedups instead)
  SlabLocator dup({Line(3, 1), Line(3, 1)});
  CHECK(dup.face_count() == 3);
  CHECK(dup.locate(Point(0, 5), Perturb::Up).below == 2);
  CHECK(dup.locate(Point(0, 0), Perturb::Up).below == 0);
  CHECK(dup.locate(Point(0, 1), Perturb::Up).below == 2);    // on both: up
  CHECK(dup.locate(Point(0, 1), Perturb::Down).below == 0);  // on both: down
  CHECK(SlabLocator({Line(0, 0), Line(1, 0), Line(1, 0)}).face_count() == 6);
}

TEST_CASE("random general-position instances hit the closed-form face count") {
  Rng rng(101);
  for (int it = 0; it < 30; ++it) {
    int n = 2 + int(rng.below(10));
    std::vector<Line> ls;
    std::set<long long> slopes;
    while (int(ls.size()) < n) {
      long long a = rng.range(-50, 50);
      if (!slopes.insert(a).second) continue;  // distinct slopes
      ls.push_back(Line(Rational(a), Rational(rng.range(-1000000, 1000000))));
    }
    // distinct random intercepts on distinct slopes: concurrences unlikely;
    // verify no three concurrent before asserting the formula
    auto events = build_events(ls);
    bool simple = true;
    for (auto& e : events) simple &= e.block.size() == 2;
    if (!simple) continue;
    CHECK(SlabLocator(std::move(ls)).face_count() ==
          brute_face_count_general_position(n));
  }
}

TEST_CASE("slab locator: sign-vector/face bijection and below counts") {
  Rng rng(202);
  for (int it = 0; it < 25; ++it) {
    int n = 1 + int(rng.below(12));
    // coarse coordinates force plenty of degeneracy
    std::vector<Line> ls = rand_lines(rng, n, 4);
    SlabLocator loc(ls);
    for (Perturb dir : {Perturb::Up, Perturb::Down}) {
      std::map<std::vector<int8_t>, uint32_t> sig2face;
      std::map<uint32_t, std::vector<int8_t>> face2sig;
      for (int s = 0; s < 300; ++s) {
        Point q(rng.range(-8, 8), rng.range(-8, 8));
        auto ans = loc.locate(q, dir);
        // below count matches brute force
        int below = 0;
        for (const auto& l : ls)
          below += side_perturbed(q, l, dir) == SideSign::Above;
        REQUIRE(ans.below == below);
        // bijection between faces and perturbed sign vectors
        auto sv = sign_vector(ls, q, dir);
        auto [it1, fresh1] = sig2face.emplace(sv, ans.face);
        if (!fresh1) REQUIRE(it1->second == ans.face);
        auto [it2, fresh2] = face2sig.emplace(ans.face, sv);
        if (!fresh2) REQUIRE(it2->second == sv);
      }
    }
  }
}

TEST_CASE("locate is deterministic") {
  Rng rng(7);
  std::vector<Line> ls = rand_lines(rng, 9, 5);
  SlabLocator loc(ls);
  for (int s = 0; s < 50; ++s) {
    Point q(rng.range(-6, 6), rng.range(-6, 6));
    auto a = loc.locate(q, Perturb::Up);
    auto b = loc.locate(q, Perturb::Up);
    CHECK(a.face == b.face);
  }
}

TEST_CASE("vertical decomposition trapezoids partition the plane") {
  Rng rng(303);
  for (int it = 0; it < 20; ++it) {
    int n = 1 + int(rng.below(9));
    FullSweep fs(rand_lines(rng, n, 4));
    for (Perturb dir : {Perturb::Up, Perturb::Down}) {
      for (int s = 0; s < 200; ++s) {
        Point q(rng.range(-7, 7), rng.range(-7, 7));
        int holders = 0;
        uint32_t face = kNone32;
        for (const auto& t : fs.sw.traps()) {
          if (trap_contains(fs, t, q, dir)) {
            ++holders;
            face = t.face;
          }
        }
        REQUIRE(holders == 1);
        REQUIRE(face != kNone32);
      }
    }
  }
}

TEST_CASE("trapezoid count for two crossing lines is six") {
  FullSweep fs({Line(1, 0), Line(-1, 0)});
  int kept = 0;
  for (const auto& t : fs.sw.traps()) kept += t.face != kNone32;
  CHECK(kept == 6);
}

TEST_CASE("line_crosses_band: curated cases") {
  Line flat(0, 0);
  Line steep(1, 0);
  Rational xl(-1), xr(1);
  // y = 0 crosses the band (-inf, y=x) on x in (-1, 1): yes (below steep for x>0... above for x<0)
  CHECK(line_crosses_band(flat, nullptr, &steep, &xl, &xr));
  // y = 5 between y=0 and y=1? no
  Line low(0, 0), high(0, 1), mid(0, 5);
  CHECK(!line_crosses_band(mid, &low, &high, nullptr, nullptr));
  Line inside(0, Rational(ExactScalar(1), ExactScalar(2)));
  CHECK(line_crosses_band(inside, &low, &high, nullptr, nullptr));
  // duplicate of the boundary does not cross
  CHECK(!line_crosses_band(low, &low, &high, nullptr, nullptr));
  // steep line crosses any horizontal band somewhere, but not left of x=-1
  Rational far_r(-1);
  CHECK(line_crosses_band(steep, &low, &high, nullptr, nullptr));
  Rational zero(0), ten(10);
  CHECK(line_crosses_band(steep, &low, &high, &zero, &ten));
  Rational five(5);
  CHECK(!line_crosses_band(steep, &low, &high, &five, &ten));
}

TEST_CASE("finalize_trap conflict lists match an independent oracle") {
  Rng rng(404);
  for (int it = 0; it < 15; ++it) {
    int n = 2 + int(rng.below(8));
    FullSweep fs(rand_lines(rng, n, 4));
    auto& traps = fs.sw.traps();
    for (auto& t : traps) {
      t.cand.clear();
      for (uint32_t i = 0; i < fs.lines.size(); ++i) t.cand.push_back(i);
    }
    for (uint32_t id = 0; id < traps.size(); ++id) {
      const auto& t = traps[id];
      if (t.face == kNone32) continue;
      auto fin = fs.sw.finalize_trap(id);
      // oracle: probe band membership between consecutive critical abscissae
      std::set<uint32_t> expect;
      for (uint32_t c = 0; c < fs.lines.size(); ++c) {
        if (c == t.bot || c == t.top) continue;
        const Line& l = fs.lines[c];
        std::vector<Rational> cuts;
        if (t.ev_open != kNone32) cuts.push_back(fs.event_pts[t.ev_open].x);
        if (t.ev_close != kNone32) cuts.push_back(fs.event_pts[t.ev_close].x);
        for (uint32_t other : {t.bot, t.top}) {
          if (other == kNone32) continue;
          auto mx = meet_x(l, fs.lines[other]);
          if (mx) cuts.push_back(*mx);
        }
        std::sort(cuts.begin(), cuts.end(),
                  [](const Rational& a, const Rational& b) { return a < b; });
        std::vector<Rational> probes;
        if (cuts.empty()) {
          probes.push_back(Rational(0));
        } else {
          probes.push_back(cuts.front() - Rational(1));
          probes.push_back(cuts.back() + Rational(1));
          for (size_t k = 0; k + 1 < cuts.size(); ++k)
            probes.push_back((cuts[k] + cuts[k + 1]) *
                             Rational(ExactScalar(1), ExactScalar(2)));
        }
        for (const auto& px : probes) {
          if (t.ev_open != kNone32 && !(px > fs.event_pts[t.ev_open].x))
            continue;
          if (t.ev_close != kNone32 && !(px < fs.event_pts[t.ev_close].x))
            continue;
          Rational y = l.eval(px);
          bool above_bot =
              t.bot == kNone32 || y > fs.lines[t.bot].eval(px);
          bool below_top =
              t.top == kNone32 || y < fs.lines[t.top].eval(px);
          if (above_bot && below_top) {
            expect.insert(c);
            break;
          }
        }
      }
      std::set<uint32_t> got(fin.conflict.begin(), fin.conflict.end());
      REQUIRE(got == expect);
    }
  }
}
