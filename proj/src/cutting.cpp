#include "hop/cutting.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hop {

std::vector<Trapezoid> vd_clip(const std::vector<Line>& dividers,
                               const Trapezoid& cell) {
  // deduplicate divider geometry
  std::vector<Line> div = dividers;
  std::sort(div.begin(), div.end(),
            [](const Line& a, const Line& b) { return a.cmp(b) < 0; });
  div.erase(std::unique(div.begin(), div.end()), div.end());

  std::vector<const Line*> walls;
  if (cell.bottom) walls.push_back(&*cell.bottom);
  if (cell.top) walls.push_back(&*cell.top);

  std::optional<RawFrac> cxl, cxr;
  if (cell.xl) cxl = RawFrac(*cell.xl);
  if (cell.xr) cxr = RawFrac(*cell.xr);

  // event abscissae strictly inside the span, as unreduced fractions
  std::vector<RawFrac> xs;
  auto add_x = [&](RawFrac x) {
    if (cxl && !(x.cmp(*cxl) > 0)) return;
    if (cxr && !(x.cmp(*cxr) < 0)) return;
    xs.push_back(std::move(x));
  };
  auto raw_meet = [](const Line& l1, const Line& l2) {
    ExactScalar n = (l2.b.num() * l1.b.den() - l1.b.num() * l2.b.den()) *
                    (l1.a.den() * l2.a.den());
    ExactScalar d = (l1.a.num() * l2.a.den() - l2.a.num() * l1.a.den()) *
                    (l1.b.den() * l2.b.den());
    return RawFrac(std::move(n), std::move(d));
  };
  for (size_t i = 0; i < div.size(); ++i) {
    for (size_t j = i + 1; j < div.size(); ++j)
      if (div[i].a != div[j].a) add_x(raw_meet(div[i], div[j]));
    for (const Line* w : walls)
      if (div[i].a != w->a) add_x(raw_meet(div[i], *w));
  }
  std::sort(xs.begin(), xs.end(),
            [](const RawFrac& a, const RawFrac& b) { return a.cmp(b) < 0; });
  xs.erase(std::unique(xs.begin(), xs.end(),
                       [](const RawFrac& a, const RawFrac& b) {
                         return a.cmp(b) == 0;
                       }),
           xs.end());

  // slab boundary sequence: [xl?] xs... [xr?]; nullopt = unbounded end
  std::vector<std::optional<RawFrac>> seq;
  seq.push_back(cxl);
  for (auto& x : xs) seq.push_back(std::move(x));
  seq.push_back(cxr);

  struct Run {
    uint32_t bot, top;  // divider index or kNone32 (cell boundary)
    std::optional<RawFrac> xl;
  };
  std::vector<Run> open_runs;
  std::vector<Trapezoid> out;

  auto close_run = [&](const Run& r, const std::optional<RawFrac>& xr) {
    Trapezoid t;
    t.top = r.top == kNone32 ? cell.top : std::optional<Line>(div[r.top]);
    t.bottom =
        r.bot == kNone32 ? cell.bottom : std::optional<Line>(div[r.bot]);
    if (r.xl) t.xl = Rational(r.xl->n, r.xl->d);
    if (xr) t.xr = Rational(xr->n, xr->d);
    out.push_back(std::move(t));
  };

  for (size_t s = 0; s + 1 < seq.size(); ++s) {
    const auto& lo = seq[s];
    const auto& hi = seq[s + 1];
    RawFrac xhat;
    if (lo && hi)
      xhat = RawFrac(lo->n * hi->d + hi->n * lo->d,
                     lo->d * hi->d * ExactScalar(2));
    else if (lo)
      xhat = RawFrac(lo->n + lo->d, lo->d);
    else if (hi)
      xhat = RawFrac(hi->n - hi->d, hi->d);
    // dividers strictly inside the window at xhat, bottom to top
    std::vector<uint32_t> inside;
    for (uint32_t d = 0; d < div.size(); ++d) {
      if (cell.bottom && sign_line_diff_at(div[d], *cell.bottom, xhat) <= 0)
        continue;
      if (cell.top && sign_line_diff_at(div[d], *cell.top, xhat) >= 0)
        continue;
      inside.push_back(d);
    }
    std::sort(inside.begin(), inside.end(), [&](uint32_t a, uint32_t b) {
      return sign_line_diff_at(div[a], div[b], xhat) < 0;
    });
    // gaps of this slab: (bottom, d0), (d0, d1), ..., (dk, top)
    std::vector<std::pair<uint32_t, uint32_t>> gaps;
    uint32_t prev = kNone32;
    for (uint32_t d : inside) {
      gaps.push_back({prev, d});
      prev = d;
    }
    gaps.push_back({prev, kNone32});
    // continue runs with the same (bot, top) pair, close the rest
    std::vector<Run> next;
    next.reserve(gaps.size());
    std::map<std::pair<uint32_t, uint32_t>, size_t> alive;
    for (size_t k = 0; k < open_runs.size(); ++k)
      alive[{open_runs[k].bot, open_runs[k].top}] = k;
    std::vector<bool> continued(open_runs.size(), false);
    for (auto& g : gaps) {
      auto it = alive.find(g);
      if (it != alive.end()) {
        continued[it->second] = true;
        next.push_back(std::move(open_runs[it->second]));
      } else {
        next.push_back(Run{g.first, g.second, lo});
      }
    }
    for (size_t k = 0; k < open_runs.size(); ++k)
      if (!continued[k]) close_run(open_runs[k], lo);
    open_runs = std::move(next);
  }
  for (const Run& r : open_runs) close_run(r, cxr);
  return out;
}

CuttingTree::CuttingTree(std::vector<Line> lines, uint64_t r,
                         CuttingParams params, Rng rng)
    : lines_(std::move(lines)), params_(params) {
  CutNode root;
  root.cell = Trapezoid{};  // whole plane
  root.conflict.resize(lines_.size());
  for (uint32_t i = 0; i < lines_.size(); ++i) root.conflict[i] = i;
  root.below = 0;
  nodes_.push_back(std::move(root));

  levels_ = 0;
  uint64_t pw = 1;
  while (pw < r) {
    pw *= uint64_t(params_.rho);
    ++levels_;
  }

  std::vector<uint32_t> frontier{0};
  for (int lvl = 1; lvl <= levels_; ++lvl) {
    int64_t bound = conflict_bound(lvl);
    std::vector<uint32_t> next;
    for (uint32_t id : frontier) {
      if (int64_t(nodes_[id].conflict.size()) <= bound) {
        next.push_back(id);  // pass-through: the cell survives this level
        continue;
      }
      refine(id, bound, rng);
      for (uint32_t c : nodes_[id].children) next.push_back(c);
    }
    frontier = std::move(next);
  }
  for (uint32_t id = 0; id < nodes_.size(); ++id)
    if (nodes_[id].children.empty()) leaves_.push_back(id);
}

int64_t CuttingTree::conflict_bound(int level) const {
  int64_t denom = 1;
  for (int i = 0; i < level; ++i) denom *= params_.rho;
  int64_t n = int64_t(lines_.size());
  return (int64_t(params_.kappa) * n + denom - 1) / denom;
}

void CuttingTree::refine(uint32_t id, int64_t child_bound, Rng& rng) {
  const std::vector<uint32_t> conflict = nodes_[id].conflict;
  const Trapezoid cell = nodes_[id].cell;
  const int64_t below0 = nodes_[id].below;
  const int lvl = nodes_[id].level;

  size_t s = std::min<size_t>(conflict.size(), size_t(params_.sample_base));

  for (int attempt = 0;; ++attempt) {
    if (attempt > 0) {
      ++resamples_;
      if (attempt % params_.max_resample == 0)
        s = std::min(conflict.size(), s + std::max<size_t>(2, s / 2));
    }
    auto pick = rng.sample_without_replacement(uint32_t(conflict.size()),
                                               uint32_t(s));
    std::vector<Line> sample;
    for (uint32_t k : pick) sample.push_back(lines_[conflict[k]]);

    std::vector<Trapezoid> cells = vd_clip(sample, cell);
    std::vector<std::vector<uint32_t>> child_conflict(cells.size());
    std::vector<int64_t> child_below(cells.size(), 0);
    bool ok = true;
    for (size_t c = 0; c < cells.size() && ok; ++c) {
      for (uint32_t lid : conflict) {
        switch (cells[c].classify(lines_[lid])) {
          case Trapezoid::LineClass::Crossing:
            child_conflict[c].push_back(lid);
            break;
          case Trapezoid::LineClass::Below:
            ++child_below[c];
            break;
          case Trapezoid::LineClass::Above:
            break;
        }
      }
      if (int64_t(child_conflict[c].size()) > child_bound) ok = false;
    }
    if (!ok) continue;

    for (size_t c = 0; c < cells.size(); ++c) {
      CutNode ch;
      ch.cell = std::move(cells[c]);
      ch.conflict = std::move(child_conflict[c]);
      ch.below = below0 + child_below[c];
      ch.parent = id;
      ch.level = lvl + 1;
      nodes_.push_back(std::move(ch));
      nodes_[id].children.push_back(uint32_t(nodes_.size() - 1));
    }
    max_branching_ = std::max(max_branching_, nodes_[id].children.size());
    return;
  }
}

void CuttingTree::split_by_points(const std::vector<Point>& pts, size_t cap) {
  if (cap == 0)
    throw std::invalid_argument("split_by_points: cap must be >= 1");
  std::vector<uint32_t> where = locate_batch(pts, Perturb::Up);
  for (auto& nd : nodes_) nd.points.clear();
  for (uint32_t p = 0; p < pts.size(); ++p)
    nodes_[where[p]].points.push_back(p);
  std::vector<uint32_t> work = leaves_;
  for (uint32_t id : work) split_leaf(id, pts, cap);
  leaves_.clear();
  for (uint32_t id = 0; id < nodes_.size(); ++id)
    if (nodes_[id].children.empty()) leaves_.push_back(id);
}

void CuttingTree::split_leaf(uint32_t id, const std::vector<Point>& pts,
                             size_t cap) {
  if (nodes_[id].points.size() <= cap) return;
  std::vector<uint32_t> order = nodes_[id].points;
  std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
    int c = pts[a].cmp(pts[b]);
    return c ? c < 0 : a < b;
  });
  const Point& pmin = pts[order.front()];
  const Point& pmax = pts[order.back()];
  const Point& pmed = pts[order[order.size() / 2]];

  std::vector<Trapezoid> cells;
  if (pmin.x < pmax.x) {
    // vertical cut at the median abscissa, nudged right if the median ties
    // with the minimum; x == wall goes right under the upward rule
    Rational cut = pmed.x;
    if (!(pmin.x < cut)) {
      for (uint32_t p : order)
        if (pts[p].x > pmin.x) {
          cut = pts[p].x;
          break;
        }
    }
    Trapezoid lo_cell = nodes_[id].cell, hi_cell = nodes_[id].cell;
    lo_cell.xr = cut;
    hi_cell.xl = cut;
    cells.push_back(std::move(lo_cell));
    cells.push_back(std::move(hi_cell));
  } else if (pmin.y < pmax.y) {
    // all abscissae equal: horizontal wall through the y-median; the wall
    // may leave the cell inside its span, so subdivide as a vertical
    // decomposition (two band cells plus up to two side remnants)
    Rational cut = pmed.y;
    if (!(pmin.y < cut)) {
      for (uint32_t p : order)
        if (pts[p].y > pmin.y) {
          cut = pts[p].y;
          break;
        }
    }
    cells = vd_clip({Line(Rational(0), cut)}, nodes_[id].cell);
  } else {
    return;  // all points identical: geometrically unsplittable
  }

  std::vector<std::vector<uint32_t>> cell_pts(cells.size());
  for (uint32_t p : nodes_[id].points) {
    bool placed = false;
    for (size_t c = 0; c < cells.size(); ++c) {
      if (cells[c].contains(pts[p], Perturb::Up)) {
        cell_pts[c].push_back(p);
        placed = true;
        break;
      }
    }
    assert(placed && "split cells must cover the parent's points");
    (void)placed;
  }

  std::vector<uint32_t> new_children;
  for (size_t c = 0; c < cells.size(); ++c) {
    CutNode ch;
    ch.cell = std::move(cells[c]);
    ch.parent = id;
    ch.level = nodes_[id].level;
    ch.from_point_split = true;
    ch.points = std::move(cell_pts[c]);
    ch.below = nodes_[id].below;
    for (uint32_t lid : nodes_[id].conflict) {
      switch (ch.cell.classify(lines_[lid])) {
        case Trapezoid::LineClass::Crossing:
          ch.conflict.push_back(lid);
          break;
        case Trapezoid::LineClass::Below:
          ++ch.below;
          break;
        case Trapezoid::LineClass::Above:
          break;
      }
    }
    nodes_.push_back(std::move(ch));
    nodes_[id].children.push_back(uint32_t(nodes_.size() - 1));
    new_children.push_back(uint32_t(nodes_.size() - 1));
  }
  max_branching_ = std::max(max_branching_, nodes_[id].children.size());
  nodes_[id].points.clear();
  for (uint32_t c : new_children) split_leaf(c, pts, cap);
}

uint32_t CuttingTree::locate_one(const Point& p, Perturb dir) const {
  uint32_t cur = 0;
  while (!nodes_[cur].children.empty()) {
    uint32_t nxt = kNone32;
    for (uint32_t c : nodes_[cur].children) {
      if (nodes_[c].cell.contains(p, dir)) {
        nxt = c;
        break;
      }
    }
    assert(nxt != kNone32 && "children must tile the parent cell");
    cur = nxt;
  }
  return cur;
}

std::vector<uint32_t> CuttingTree::locate_batch_serial(
    const std::vector<Point>& pts, Perturb dir) const {
  std::vector<uint32_t> out(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) out[i] = locate_one(pts[i], dir);
  return out;
}

std::vector<uint32_t> CuttingTree::locate_batch(const std::vector<Point>& pts,
                                                Perturb dir) const {
  std::vector<uint32_t> out(pts.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 256)
#endif
  for (long long i = 0; i < (long long)pts.size(); ++i)
    out[i] = locate_one(pts[i], dir);
  return out;
}

std::vector<uint32_t> CuttingTree::crossed_nodes(const Line& l) const {
  std::vector<uint32_t> out;
  if (nodes_[0].cell.classify(l) != Trapezoid::LineClass::Crossing)
    return out;
  std::vector<uint32_t> stack{0};
  while (!stack.empty()) {
    uint32_t id = stack.back();
    stack.pop_back();
    out.push_back(id);
    for (uint32_t c : nodes_[id].children)
      if (nodes_[c].cell.classify(l) == Trapezoid::LineClass::Crossing)
        stack.push_back(c);
  }
  return out;
}

}  // namespace hop
