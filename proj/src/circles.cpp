#include "hop/circles.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>

#include "hop/rng.hpp"
#include "hop/stats.hpp"
#include "hop/sweep.hpp"

namespace hop {

int quad_sign(const Rational& a, const Rational& b, const Rational& d1,
              const Rational& c, const Rational& d2) {
  stats::bump();
  // normalize vanished radicals into the rational part
  bool t1 = !b.is_zero() && d1.sign() > 0;
  bool t2 = !c.is_zero() && d2.sign() > 0;
  if (!t1 && !t2) return a.sign();
  if (t1 && t2) {
    // sign of t = b*sqrt(d1) + c*sqrt(d2)
    int st;
    if (b.sign() == c.sign())
      st = b.sign();
    else {
      int m = (b * b * d1).cmp(c * c * d2);
      st = m == 0 ? 0 : (m > 0 ? b.sign() : c.sign());
    }
    if (a.is_zero()) return st;
    if (st == 0) return a.sign();
    if (a.sign() == st) return a.sign();
    // compare a^2 with t^2 = b^2 d1 + c^2 d2 + 2bc sqrt(d1 d2)
    Rational p = a * a - b * b * d1 - c * c * d2;
    Rational q = b * c * Rational(2);
    Rational e = d1 * d2;
    // sign of p - (-q)*sqrt(e)... a^2 - t^2 = p - q*sqrt(e)
    int diff;
    if (q.is_zero() || e.is_zero())
      diff = p.sign();
    else if (p.sign() <= 0 && q.sign() >= 0)
      diff = (p.is_zero() && q.is_zero()) ? 0 : -1;
    else if (p.sign() >= 0 && q.sign() <= 0)
      diff = (p.is_zero() && q.is_zero()) ? 0 : 1;
    else {
      int m = (p * p).cmp(q * q * e);
      diff = m == 0 ? 0 : (m > 0 ? p.sign() : -q.sign());
    }
    // |a| > |t| iff a^2 > t^2
    if (diff == 0) return 0;
    return diff > 0 ? a.sign() : st;
  }
  // single radical: a + b*sqrt(d)
  const Rational& bb = t1 ? b : c;
  const Rational& dd = t1 ? d1 : d2;
  if (a.is_zero()) return bb.sign();
  if (a.sign() == bb.sign()) return a.sign();
  int m = (a * a).cmp(bb * bb * dd);
  if (m == 0) return 0;
  return m > 0 ? a.sign() : bb.sign();
}

int Quad::cmp(const Quad& o) const {
  return quad_sign(u - o.u, v, d, -o.v, o.d);
}

double Quad::to_double() const {
  return u.to_double() + v.to_double() * std::sqrt(std::max(0.0, d.to_double()));
}

// rational bounds: lower <= value <= upper, using sqrt(d) <= 1 + d
static Rational quad_upper_bound(const Quad& q) {
  Rational av = q.v.sign() < 0 ? -q.v : q.v;
  return q.u + av * (Rational(1) + q.d) + Rational(1);
}
static Rational quad_lower_bound(const Quad& q) {
  Rational av = q.v.sign() < 0 ? -q.v : q.v;
  return q.u - av * (Rational(1) + q.d) - Rational(1);
}

Rational rational_between(const Quad& lo, const Quad& hi) {
#ifndef NDEBUG
  if (!(lo.cmp(hi) < 0)) {
    fprintf(stderr, "rational_between: lo=(%s)+(%s)sqrt(%s) hi=(%s)+(%s)sqrt(%s)\n",
            lo.u.to_string().c_str(), lo.v.to_string().c_str(), lo.d.to_string().c_str(),
            hi.u.to_string().c_str(), hi.v.to_string().c_str(), hi.d.to_string().c_str());
  }
#endif
  assert(lo.cmp(hi) < 0);
  // exact bisection from a rational bracket
  Rational L = quad_lower_bound(lo);
  Rational R = quad_upper_bound(hi);
  for (;;) {
    Rational mid = (L + R) * Rational(ExactScalar(1), ExactScalar(2));
    Quad qm(mid);
    if (qm.cmp(lo) <= 0) {
      L = std::move(mid);
    } else if (qm.cmp(hi) >= 0) {
      R = std::move(mid);
    } else {
      return mid;
    }
  }
}

UnitDistResult unit_dist_brute_sq(const std::vector<Point>& red,
                                  const std::vector<Point>& blue,
                                  const Rational& s) {
  UnitDistResult out;
  out.per_red.assign(red.size(), 0);
  for (size_t i = 0; i < red.size(); ++i) {
    for (const auto& b : blue) {
      stats::bump();
      Rational dx = red[i].x - b.x, dy = red[i].y - b.y;
      if (!(dx * dx + dy * dy > s)) ++out.per_red[i];
    }
    out.total += out.per_red[i];
  }
  return out;
}

namespace {

// All circles share the squared radius s; a circle is its center id.
struct CircleCtx {
  const std::vector<Point>* centers;
  Rational s;
};

// squared distance of p to center c versus s: -1 inside, 0 on, +1 outside
int in_circle(const CircleCtx& cx, const Point& p, uint32_t c) {
  stats::bump();
  const Point& o = (*cx.centers)[c];
  Rational dx = p.x - o.x, dy = p.y - o.y;
  return (dx * dx + dy * dy).cmp(cx.s);
}

struct Arc {
  uint32_t circle = kNone32;
  bool upper = false;
};

// arc-bounded cell: optional arcs above/below, quad abscissa walls
struct ArcCell {
  std::optional<Arc> top, bottom;
  std::optional<Quad> xl, xr;
};

// side of the (perturbed) point against the arc's curve
SideSign side_vs_arc(const CircleCtx& cx, const Point& p, const Arc& arc,
                     Perturb dir) {
  const Point& o = (*cx.centers)[arc.circle];
  int in3 = in_circle(cx, p, arc.circle);
  int vert = p.y.cmp(o.y);
  if (arc.upper) {
    if (in3 < 0) return SideSign::Below;
    if (in3 > 0) return vert >= 0 ? SideSign::Above : SideSign::Below;
    if (vert < 0) return SideSign::Below;  // on the lower semicircle
    return dir == Perturb::Up ? SideSign::Above : SideSign::Below;
  }
  if (in3 < 0) return SideSign::Above;
  if (in3 > 0) return vert <= 0 ? SideSign::Below : SideSign::Above;
  if (vert > 0) return SideSign::Above;
  return dir == Perturb::Up ? SideSign::Above : SideSign::Below;
}

bool cell_contains(const CircleCtx& cx, const ArcCell& cell, const Point& p,
                   Perturb dir) {
  bool up = dir == Perturb::Up;
  if (cell.xl) {
    int c = Quad(p.x).cmp(*cell.xl);
    if (up ? c < 0 : c <= 0) return false;
  }
  if (cell.xr) {
    int c = Quad(p.x).cmp(*cell.xr);
    if (up ? c >= 0 : c > 0) return false;
  }
  if (cell.bottom && side_vs_arc(cx, p, *cell.bottom, dir) != SideSign::Above)
    return false;
  if (cell.top && side_vs_arc(cx, p, *cell.top, dir) != SideSign::Below)
    return false;
  return true;
}

// abscissae where two equal-radius circles meet (0, 1, or 2 values)
std::vector<Quad> circle_meet_xs(const CircleCtx& cx, uint32_t a, uint32_t b) {
  const Point& p = (*cx.centers)[a];
  const Point& q = (*cx.centers)[b];
  if (p == q) return {};
  Rational dx = q.x - p.x, dy = q.y - p.y;
  if (dy.is_zero()) {
    // vertical radical axis
    Rational x = (p.x + q.x) * Rational(ExactScalar(1), ExactScalar(2));
    // intersects iff the circles reach it: (x-px)^2 <= s
    Rational h = x - p.x;
    if ((h * h).cmp(cx.s) > 0) return {};
    return {Quad(x)};
  }
  // radical axis: y = alpha x + beta
  Rational alpha = -dx / dy;
  Rational beta = (q.x * q.x - p.x * p.x + q.y * q.y - p.y * p.y) /
                  (Rational(2) * dy);
  // substitute into (x-px)^2 + (y-py)^2 = s
  Rational g = beta - p.y;
  Rational A = Rational(1) + alpha * alpha;
  Rational B = alpha * g - p.x;              // x^2 + 2Bx + C = 0 (after /A)
  Rational C = p.x * p.x + g * g - cx.s;
  Rational u = -B / A;
  Rational disc = (B * B - A * C) / (A * A);
  int ds = disc.sign();
  if (ds < 0) return {};
  if (ds == 0) return {Quad(u)};
  return {Quad(u, Rational(-1), disc), Quad(u, Rational(1), disc)};
}

// value of the circle's upper/lower arc at a rational x inside its range
Quad arc_value(const CircleCtx& cx, const Arc& arc, const Rational& x) {
  const Point& o = (*cx.centers)[arc.circle];
  Rational h = x - o.x;
  Rational rad = cx.s - h * h;  // >= 0 inside the range
  return Quad(o.y, arc.upper ? Rational(1) : Rational(-1), rad);
}

// does the circle's boundary have a point strictly inside the cell?
bool circle_crosses_cell(const CircleCtx& cx, const ArcCell& cell,
                         uint32_t c) {
  const Point& o = (*cx.centers)[c];
  // critical abscissae: the circle's extremes, crossings with the bounding
  // arcs' circles, and the cell walls
  std::vector<Quad> crit;
  Rational one(1);
  crit.push_back(Quad(o.x, Rational(-1), cx.s));
  crit.push_back(Quad(o.x, one, cx.s));
  for (const auto& b : {cell.bottom, cell.top}) {
    if (!b) continue;
    for (auto& x : circle_meet_xs(cx, c, b->circle)) crit.push_back(x);
  }
  if (cell.xl) crit.push_back(*cell.xl);
  if (cell.xr) crit.push_back(*cell.xr);
  std::sort(crit.begin(), crit.end(),
            [](const Quad& a, const Quad& b) { return a.cmp(b) < 0; });
  crit.erase(std::unique(crit.begin(), crit.end(),
                         [](const Quad& a, const Quad& b) {
                           return a.cmp(b) == 0;
                         }),
             crit.end());
  // restrict to the circle's x-range intersected with the cell span
  Quad lo = Quad(o.x, Rational(-1), cx.s);
  Quad hi = Quad(o.x, one, cx.s);
  if (cell.xl && cell.xl->cmp(lo) > 0) lo = *cell.xl;
  if (cell.xr && cell.xr->cmp(hi) < 0) hi = *cell.xr;
  if (!(lo.cmp(hi) < 0)) return false;
  // probe one rational abscissa inside each critical-free interval
  std::vector<Quad> cuts{lo};
  for (auto& x : crit)
    if (lo.cmp(x) < 0 && x.cmp(hi) < 0) cuts.push_back(x);
  cuts.push_back(hi);
  for (size_t k = 0; k + 1 < cuts.size(); ++k) {
    Rational xm = rational_between(cuts[k], cuts[k + 1]);
    for (bool upper : {false, true}) {
      Quad y = arc_value(cx, Arc{c, upper}, xm);
      bool inside = true;
      if (cell.bottom) {
        Quad by = arc_value(cx, *cell.bottom, xm);
        if (!(by.cmp(y) < 0)) inside = false;
      }
      if (inside && cell.top) {
        Quad ty = arc_value(cx, *cell.top, xm);
        if (!(y.cmp(ty) < 0)) inside = false;
      }
      if (inside) return true;
    }
  }
  return false;
}

enum class CircClass { Crossing, Contains, Outside };

// classify against the open cell; Contains means the closed disk covers the
// cell's closure (every assigned point is within distance <= radius)
CircClass classify_circle(const CircleCtx& cx, const ArcCell& cell,
                          uint32_t c) {
  if (circle_crosses_cell(cx, cell, c)) return CircClass::Crossing;
  // sample an interior point: the span is clipped by the bounding arcs'
  // x-ranges when walls are absent
  std::optional<Quad> lo = cell.xl, hi = cell.xr;
  for (const auto& b : {cell.bottom, cell.top}) {
    if (!b) continue;
    const Point& o = (*cx.centers)[b->circle];
    Quad al(o.x, Rational(-1), cx.s), ar(o.x, Rational(1), cx.s);
    if (!lo || lo->cmp(al) < 0) lo = al;
    if (!hi || ar.cmp(*hi) < 0) hi = ar;
  }
  Rational xm;
  if (lo && hi)
    xm = rational_between(*lo, *hi);
  else if (lo)
    xm = quad_upper_bound(*lo);
  else if (hi)
    xm = quad_lower_bound(*hi);
  else
    xm = Rational(0);
  std::optional<Quad> ylo, yhi;
  if (cell.bottom) ylo = arc_value(cx, *cell.bottom, xm);
  if (cell.top) yhi = arc_value(cx, *cell.top, xm);
  Rational ym;
  if (ylo && yhi)
    ym = rational_between(*ylo, *yhi);
  else if (ylo)
    ym = quad_upper_bound(*ylo);
  else if (yhi)
    ym = quad_lower_bound(*yhi);
  else
    ym = Rational(0);
  return in_circle(cx, Point(xm, ym), c) < 0 ? CircClass::Contains
                                             : CircClass::Outside;
}

// cells that tile `cell` after cutting along the sample circles
std::vector<ArcCell> arc_clip(const CircleCtx& cx,
                              const std::vector<uint32_t>& sample,
                              const ArcCell& cell) {
  // event abscissae strictly inside the span
  std::vector<Quad> xs;
  auto add = [&](Quad x) {
    if (cell.xl && !(cell.xl->cmp(x) < 0)) return;
    if (cell.xr && !(x.cmp(*cell.xr) < 0)) return;
    xs.push_back(std::move(x));
  };
  for (size_t i = 0; i < sample.size(); ++i) {
    const Point& o = (*cx.centers)[sample[i]];
    add(Quad(o.x, Rational(-1), cx.s));
    add(Quad(o.x, Rational(1), cx.s));
    for (size_t j = i + 1; j < sample.size(); ++j)
      for (auto& x : circle_meet_xs(cx, sample[i], sample[j])) add(x);
    for (const auto& b : {cell.bottom, cell.top}) {
      if (!b) continue;
      for (auto& x : circle_meet_xs(cx, sample[i], b->circle)) add(x);
    }
  }
  std::sort(xs.begin(), xs.end(),
            [](const Quad& a, const Quad& b) { return a.cmp(b) < 0; });
  xs.erase(std::unique(xs.begin(), xs.end(),
                       [](const Quad& a, const Quad& b) {
                         return a.cmp(b) == 0;
                       }),
           xs.end());

  std::vector<std::optional<Quad>> seq;
  seq.push_back(cell.xl);
  for (auto& x : xs) seq.push_back(std::move(x));
  seq.push_back(cell.xr);

  struct Run {
    Arc bot, top;  // circle == kNone32 marks the cell boundary
    std::optional<Quad> xl;
  };
  auto same = [](const Arc& a, const Arc& b) {
    return a.circle == b.circle && a.upper == b.upper;
  };
  std::vector<Run> open_runs;
  std::vector<ArcCell> out;
  auto close_run = [&](const Run& r, const std::optional<Quad>& xr) {
    ArcCell c2;
    c2.top = r.top.circle == kNone32 ? cell.top : std::optional<Arc>(r.top);
    c2.bottom =
        r.bot.circle == kNone32 ? cell.bottom : std::optional<Arc>(r.bot);
    c2.xl = r.xl;
    c2.xr = xr;
    out.push_back(std::move(c2));
  };

  for (size_t si = 0; si + 1 < seq.size(); ++si) {
    const auto& lo = seq[si];
    const auto& hi = seq[si + 1];
    Rational xm;
    if (lo && hi)
      xm = rational_between(*lo, *hi);
    else if (lo)
      xm = quad_upper_bound(*lo);
    else if (hi)
      xm = quad_lower_bound(*hi);
    else
      xm = Rational(0);
    // arc pieces alive in this slab, strictly inside the cell window
    struct Piece {
      Arc arc;
      Quad y;
    };
    std::vector<Piece> inside;
    std::optional<Quad> wlo, whi;
    if (cell.bottom) wlo = arc_value(cx, *cell.bottom, xm);
    if (cell.top) whi = arc_value(cx, *cell.top, xm);
    for (uint32_t c : sample) {
      const Point& o = (*cx.centers)[c];
      Rational h = xm - o.x;
      if (!((h * h).cmp(cx.s) < 0)) continue;  // outside the circle's range
      for (bool upper : {false, true}) {
        Arc a{c, upper};
        Quad y = arc_value(cx, a, xm);
        if (wlo && !(wlo->cmp(y) < 0)) continue;
        if (whi && !(y.cmp(*whi) < 0)) continue;
        inside.push_back({a, std::move(y)});
      }
    }
    std::sort(inside.begin(), inside.end(), [](const Piece& a, const Piece& b) {
      int c = a.y.cmp(b.y);
      if (c) return c < 0;
      if (a.arc.circle != b.arc.circle) return a.arc.circle < b.arc.circle;
      return a.arc.upper < b.arc.upper;
    });
    std::vector<std::pair<Arc, Arc>> gaps;
    Arc prev{kNone32, false};
    for (const Piece& p : inside) {
      gaps.push_back({prev, p.arc});
      prev = p.arc;
    }
    gaps.push_back({prev, Arc{kNone32, false}});

    std::vector<Run> next;
    std::vector<bool> continued(open_runs.size(), false);
    for (auto& g : gaps) {
      size_t hit = open_runs.size();
      for (size_t k = 0; k < open_runs.size(); ++k) {
        if (!continued[k] && same(open_runs[k].bot, g.first) &&
            same(open_runs[k].top, g.second)) {
          hit = k;
          break;
        }
      }
      if (hit < open_runs.size()) {
        continued[hit] = true;
        next.push_back(std::move(open_runs[hit]));
      } else {
        next.push_back(Run{g.first, g.second, lo});
      }
    }
    for (size_t k = 0; k < open_runs.size(); ++k)
      if (!continued[k]) close_run(open_runs[k], lo);
    open_runs = std::move(next);
  }
  for (const Run& r : open_runs) close_run(r, cell.xr);
  return out;
}

struct CNode {
  ArcCell cell;
  std::vector<uint32_t> conflict;
  int64_t contains = 0;  // circles covering the whole cell, cumulative
  std::vector<uint32_t> children;
  std::vector<uint32_t> points;
};

struct CircleCutting {
  CircleCtx cx;
  std::vector<CNode> nodes;

  void refine(uint32_t id, int64_t bound, Rng& rng) {
    const std::vector<uint32_t> conflict = nodes[id].conflict;
    const ArcCell cell = nodes[id].cell;
    size_t s = std::min<size_t>(conflict.size(), 4);
    for (int attempt = 0;; ++attempt) {
      if (attempt > 0 && attempt % 32 == 0)
        s = std::min(conflict.size(), s + 2);
      auto pick = rng.sample_without_replacement(uint32_t(conflict.size()),
                                                 uint32_t(s));
      std::vector<uint32_t> sample;
      for (uint32_t k : pick) sample.push_back(conflict[k]);
      std::sort(sample.begin(), sample.end());
      sample.erase(std::unique(sample.begin(), sample.end()), sample.end());
      std::vector<ArcCell> cells = arc_clip(cx, sample, cell);
      std::vector<std::vector<uint32_t>> cc(cells.size());
      std::vector<int64_t> inc(cells.size(), 0);
      bool ok = true;
      for (size_t c = 0; c < cells.size() && ok; ++c) {
        for (uint32_t cid : conflict) {
          switch (classify_circle(cx, cells[c], cid)) {
            case CircClass::Crossing:
              cc[c].push_back(cid);
              break;
            case CircClass::Contains:
              ++inc[c];
              break;
            case CircClass::Outside:
              break;
          }
        }
        if (int64_t(cc[c].size()) > bound) ok = false;
      }
      if (!ok) continue;
      for (size_t c = 0; c < cells.size(); ++c) {
        CNode ch;
        ch.cell = std::move(cells[c]);
        ch.conflict = std::move(cc[c]);
        ch.contains = nodes[id].contains + inc[c];
        nodes.push_back(std::move(ch));
        nodes[id].children.push_back(uint32_t(nodes.size() - 1));
      }
      return;
    }
  }
};

}  // namespace

UnitDistResult unit_dist_count_sq(const std::vector<Point>& red,
                                  const std::vector<Point>& blue,
                                  const Rational& s, uint64_t seed) {
  UnitDistResult out;
  out.per_red.assign(red.size(), 0);
  size_t m = red.size(), n = blue.size();
  if (m == 0 || n == 0) return out;
  if (s.sign() < 0) return out;
  if (m * n <= (size_t(1) << 14)) return unit_dist_brute_sq(red, blue, s);

  Rng rng(seed);
  CircleCutting cut;
  cut.cx = CircleCtx{&blue, s};
  CNode root;
  root.conflict.resize(n);
  for (uint32_t i = 0; i < n; ++i) root.conflict[i] = i;
  cut.nodes.push_back(std::move(root));

  uint64_t r = std::max<uint64_t>(
      2, uint64_t(std::ceil(std::cbrt(double(std::min(m, n))))));
  int levels = 0;
  uint64_t pw = 1;
  while (pw < r) {
    pw *= 2;
    ++levels;
  }
  std::vector<uint32_t> frontier{0};
  for (int lvl = 1; lvl <= levels; ++lvl) {
    int64_t bound = int64_t((2 * n) >> lvl) + 1;
    std::vector<uint32_t> next;
    for (uint32_t id : frontier) {
      if (int64_t(cut.nodes[id].conflict.size()) <= bound) {
        next.push_back(id);
        continue;
      }
      cut.refine(id, bound, rng);
      for (uint32_t c : cut.nodes[id].children) next.push_back(c);
    }
    frontier = std::move(next);
  }

  // assign red points to leaves
  std::vector<uint32_t> where(m);
  for (uint32_t p = 0; p < m; ++p) {
    uint32_t cur = 0;
    while (!cut.nodes[cur].children.empty()) {
      uint32_t nxt = kNone32;
      for (uint32_t c : cut.nodes[cur].children) {
        if (cell_contains(cut.cx, cut.nodes[c].cell, red[p], Perturb::Up)) {
          nxt = c;
          break;
        }
      }
      assert(nxt != kNone32 && "arc cells must tile the parent");
      cur = nxt;
    }
    where[p] = cur;
  }
  for (uint32_t p = 0; p < m; ++p) {
    int64_t cnt = cut.nodes[where[p]].contains;
    for (uint32_t c : cut.nodes[where[p]].conflict) {
      if (in_circle(cut.cx, red[p], c) <= 0) ++cnt;
    }
    out.per_red[p] = cnt;
    out.total += cnt;
  }
  return out;
}

UnitDistResult unit_dist_count(const std::vector<Point>& red,
                               const std::vector<Point>& blue,
                               const Rational& radius, uint64_t seed) {
  return unit_dist_count_sq(red, blue, radius * radius, seed);
}

}  // namespace hop
