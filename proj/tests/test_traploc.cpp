#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "hop/rng.hpp"
#include "hop/sweep.hpp"
#include "hop/traploc.hpp"

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

}  // namespace

TEST_CASE("trap map locate: below counts and face consistency, degenerate") {
  Rng rng(9001);
  for (int it = 0; it < 40; ++it) {
    int n = int(rng.below(13));
    // coarse coordinates: duplicates, parallels, concurrences all occur
    auto lines = rand_lines(rng, n, 3);
    PointLocator loc(lines, /*seed=*/rng.next());
    for (Perturb dir : {Perturb::Up, Perturb::Down}) {
      std::map<std::vector<int8_t>, uint32_t> sig2face;
      std::map<uint32_t, std::vector<int8_t>> face2sig;
      for (int s = 0; s < 250; ++s) {
        Point q(rng.range(-6, 6), rng.range(-6, 6));
        auto ans = loc.locate(q, dir);
        int64_t below = 0;
        for (const auto& l : lines)
          below += side_perturbed(q, l, dir) == SideSign::Above;
        REQUIRE(ans.below == below);
        auto sv = sign_vector(lines, q, dir);
        auto [it1, fresh1] = sig2face.emplace(sv, ans.face);
        if (!fresh1) REQUIRE(it1->second == ans.face);
        auto [it2, fresh2] = face2sig.emplace(ans.face, sv);
        if (!fresh2) REQUIRE(it2->second == sv);
      }
    }
  }
}

TEST_CASE("trap map locate: exact arrangement vertices under both rules") {
  Rng rng(77);
  for (int it = 0; it < 20; ++it) {
    int n = 2 + int(rng.below(8));
    auto lines = rand_lines(rng, n, 4);
    PointLocator loc(lines, rng.next());
    for (size_t i = 0; i < lines.size(); ++i)
      for (size_t j = i + 1; j < lines.size(); ++j) {
        auto m = meet(lines[i], lines[j]);
        if (!m) continue;
        for (Perturb dir : {Perturb::Up, Perturb::Down}) {
          auto ans = loc.locate(*m, dir);
          int64_t below = 0;
          for (const auto& l : lines)
            below += side_perturbed(*m, l, dir) == SideSign::Above;
          REQUIRE(ans.below == below);
        }
      }
  }
}

TEST_CASE("trap map matches the sweep decomposition on simple instances") {
  Rng rng(31337);
  int checked = 0;
  while (checked < 12) {
    int n = 1 + int(rng.below(9));
    auto lines = rand_lines(rng, n, 40);
    auto events = build_events(lines);
    bool simple = true;
    for (auto& e : events) simple &= e.block.size() == 2;
    std::vector<Line> dedup = lines;
    std::sort(dedup.begin(), dedup.end(),
              [](const Line& a, const Line& b) { return a.cmp(b) < 0; });
    dedup.erase(std::unique(dedup.begin(), dedup.end()), dedup.end());
    if (!simple || dedup.size() != lines.size()) continue;
    ++checked;
    PointLocator loc(lines, rng.next());
    // trapezoid count of the true vertical decomposition:
    // initial n+1 gaps plus 3 per crossing event (general position)
    size_t expect = size_t(n) + 1 + 3 * events.size();
    CHECK(loc.trap_count() == expect);
    // face count: n(n-1)/2 + n + 1 in general position
    CHECK(loc.face_count() == events.size() + size_t(n) + 1);
  }
}

TEST_CASE("locate is deterministic and repeatable") {
  Rng rng(5);
  auto lines = rand_lines(rng, 10, 5);
  PointLocator loc(lines, 42);
  for (int s = 0; s < 100; ++s) {
    Point q(rng.range(-5, 5), rng.range(-5, 5));
    auto a = loc.locate(q, Perturb::Up);
    auto b = loc.locate(q, Perturb::Up);
    CHECK(a.trap == b.trap);
    CHECK(a.face == b.face);
  }
}

TEST_CASE("empty and single-line maps") {
  PointLocator l0({}, 1);
  CHECK(l0.trap_count() == 1);
  CHECK(l0.face_count() == 1);
  CHECK(l0.locate(Point(3, 4), Perturb::Up).below == 0);

  PointLocator l1({Line(2, 1)}, 1);
  CHECK(l1.trap_count() == 2);
  CHECK(l1.locate(Point(0, 5), Perturb::Up).below == 1);
  CHECK(l1.locate(Point(0, 1), Perturb::Up).below == 1);   // on: up
  CHECK(l1.locate(Point(0, 1), Perturb::Down).below == 0);  // on: down

  // duplicates collapse with multiplicity
  PointLocator l2({Line(2, 1), Line(2, 1), Line(2, 1)}, 7);
  CHECK(l2.trap_count() == 2);
  CHECK(l2.locate(Point(0, 5), Perturb::Up).below == 3);
}
