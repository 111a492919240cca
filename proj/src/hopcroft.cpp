#include "hop/hopcroft.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>

#include "hop/arrangement.hpp"
#include "hop/cascade.hpp"
#include "hop/cutting.hpp"
#include "hop/rng.hpp"
#include "hop/stats.hpp"
#include "hop/traploc.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hop {

namespace {

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double secs() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         t0)
        .count();
  }
};

// int64 fast-path extraction for the brute kernel
struct FastInput {
  bool ok = false;
  std::vector<long long> px, py, la, lb;
};

FastInput extract_fast(const std::vector<Point>& pts,
                       const std::vector<Line>& lines) {
  FastInput f;
  auto small = [](const Rational& r) {
    return r.den() == ExactScalar(1) && r.num().is_small() &&
           r.num().bit_length() <= 62;
  };
  for (const auto& p : pts)
    if (!small(p.x) || !small(p.y)) return f;
  for (const auto& l : lines)
    if (!small(l.a) || !small(l.b)) return f;
  // products a*x must stay within int128
  size_t maxbits = 0;
  for (const auto& p : pts) maxbits = std::max(maxbits, p.x.num().bit_length());
  for (const auto& l : lines) maxbits = std::max(maxbits, l.a.num().bit_length());
  if (2 * maxbits + 2 > 126) return f;
  f.ok = true;
  for (const auto& p : pts) {
    f.px.push_back(p.x.num().to_int64());
    f.py.push_back(p.y.num().to_int64());
  }
  for (const auto& l : lines) {
    f.la.push_back(l.a.num().to_int64());
    f.lb.push_back(l.b.num().to_int64());
  }
  return f;
}

// dual transform of a whole instance: points <-> lines, sides preserved
void dualize(const std::vector<Point>& pts, const std::vector<Line>& lines,
             std::vector<Point>& out_pts, std::vector<Line>& out_lines) {
  out_lines.clear();
  out_lines.reserve(pts.size());
  for (const auto& p : pts) out_lines.push_back(dual_point(p));
  out_pts.clear();
  out_pts.reserve(lines.size());
  for (const auto& l : lines) out_pts.push_back(dual_line(l));
}

// pairs with line <=_dir point, via a trapezoidal-map locator on the
// smaller line side
int64_t locator_count_dir(const std::vector<Point>& pts,
                          const std::vector<Line>& lines, Perturb dir,
                          uint64_t seed) {
  if (pts.empty() || lines.empty()) return 0;
  if (lines.size() > pts.size() * 2 && pts.size() >= 4) {
    std::vector<Point> dp;
    std::vector<Line> dl;
    dualize(pts, lines, dp, dl);
    return locator_count_dir(dp, dl, dir, seed);
  }
  PointLocator loc(lines, seed);
  int64_t total = 0;
  for (const auto& p : pts) total += loc.locate(p, dir).below;
  return total;
}

int64_t brute_count_dir(const std::vector<Point>& pts,
                        const std::vector<Line>& lines, Perturb dir) {
  int64_t total = 0;
  for (const auto& p : pts)
    for (const auto& l : lines)
      total += side_perturbed(p, l, dir) == SideSign::Above;
  return total;
}

// ---- cascade engine ------------------------------------------------------

// cutting tree binarized to degree 2 for the cascade input
struct BinarizedTree {
  CascadeInput input;                   // node 0 = root
  std::vector<uint32_t> cut2cas;        // cutting node -> cascade node
  std::vector<int32_t> cas_parent;      // for subtree expansion
};

BinarizedTree binarize(const CuttingTree& cut,
                       const std::vector<std::vector<Line>>& leaf_sets) {
  BinarizedTree out;
  CascadeInput& in = out.input;
  const auto& nodes = cut.nodes();
  out.cut2cas.assign(nodes.size(), kNone32);

  // allocate cascade ids in BFS order so parents precede children
  in.parent.push_back(kNone32);
  in.children.emplace_back();
  in.node_lines.emplace_back();
  out.cut2cas[0] = 0;
  std::vector<uint32_t> bfs{0};
  for (size_t h = 0; h < bfs.size(); ++h) {
    uint32_t cu = bfs[h];
    uint32_t cas = out.cut2cas[cu];
    if (nodes[cu].children.empty()) {
      in.node_lines[cas] = leaf_sets[cu];
      continue;
    }
    // binary comb over the children list
    std::vector<uint32_t> layer;
    for (uint32_t cc : nodes[cu].children) {
      uint32_t id = uint32_t(in.parent.size());
      in.parent.push_back(kNone32);  // fixed below
      in.children.emplace_back();
      in.node_lines.emplace_back();
      out.cut2cas[cc] = id;
      layer.push_back(id);
      bfs.push_back(cc);
    }
    // reduce the layer pairwise with intermediate nodes until <= 2 remain
    while (layer.size() > 2) {
      std::vector<uint32_t> next;
      for (size_t i = 0; i + 1 < layer.size(); i += 2) {
        uint32_t mid = uint32_t(in.parent.size());
        in.parent.push_back(kNone32);
        in.children.emplace_back();
        in.node_lines.emplace_back();
        in.children[mid] = {layer[i], layer[i + 1]};
        in.parent[layer[i]] = mid;
        in.parent[layer[i + 1]] = mid;
        next.push_back(mid);
      }
      if (layer.size() % 2) next.push_back(layer.back());
      layer = std::move(next);
    }
    for (uint32_t id : layer) {
      in.parent[id] = cas;
      in.children[cas].push_back(id);
    }
  }
  // intermediate ids were appended after their children; renumber so that
  // parents precede children (BFS over the final tree)
  size_t n = in.parent.size();
  std::vector<uint32_t> order{0}, newid(n, kNone32);
  newid[0] = 0;
  for (size_t h = 0; h < order.size(); ++h) {
    for (uint32_t c : in.children[order[h]]) {
      newid[c] = uint32_t(order.size());
      order.push_back(c);
    }
  }
  CascadeInput re;
  re.parent.resize(n);
  re.children.resize(n);
  re.node_lines.resize(n);
  for (size_t i = 0; i < n; ++i) {
    uint32_t ni = newid[order[i]];
    (void)ni;
  }
  for (uint32_t old = 0; old < n; ++old) {
    uint32_t nu = newid[old];
    re.parent[nu] = in.parent[old] == kNone32 ? kNone32 : newid[in.parent[old]];
    for (uint32_t c : in.children[old]) re.children[nu].push_back(newid[c]);
    re.node_lines[nu] = std::move(in.node_lines[old]);
  }
  out.input = std::move(re);
  for (auto& m : out.cut2cas) m = newid[m];
  out.cas_parent.resize(n);
  for (size_t i = 0; i < n; ++i)
    out.cas_parent[i] = out.input.parent[i] == kNone32
                            ? -1
                            : int32_t(out.input.parent[i]);
  return out;
}

// expands a crossed cutting-node set into the parent-closed cascade
// subtree; stamp is caller-owned scratch (epoch marking)
void expand_subtree(const BinarizedTree& bt,
                    const std::vector<uint32_t>& crossed,
                    std::vector<uint32_t>& stamp, uint32_t epoch,
                    std::vector<uint32_t>& sub) {
  sub.clear();
  for (uint32_t cu : crossed) {
    int32_t v = int32_t(bt.cut2cas[cu]);
    while (v >= 0 && stamp[v] != epoch) {
      stamp[v] = epoch;
      sub.push_back(uint32_t(v));
      v = bt.cas_parent[v];
    }
  }
  std::sort(sub.begin(), sub.end());  // ids ascending: parents first
}

struct CascadeCounts {
  int64_t down = 0, up = 0;
  uint64_t subtree_total = 0;
};

// pairs with line <=_dir point for both directions via the full pipeline
CascadeCounts cascade_counts(const std::vector<Point>& pts,
                             const std::vector<Line>& lines, uint64_t seed) {
  CascadeCounts out;
  size_t m = pts.size(), n = lines.size();
  if (m == 0 || n == 0) return out;

  Rng rng(seed);
  uint64_t r = std::max<uint64_t>(1, uint64_t(std::ceil(std::cbrt(double(n)))));
  CuttingTree cut(lines, r, CuttingParams{}, rng.fork());
  size_t cap = std::max<size_t>(1, (n + r * r - 1) / (r * r));
  cut.split_by_points(pts, cap);

  std::vector<uint32_t> where_up = cut.locate_batch(pts, Perturb::Up);
  std::vector<uint32_t> where_dn = cut.locate_batch(pts, Perturb::Down);
  bool same = where_up == where_dn;

  auto leaf_sets = [&](const std::vector<uint32_t>& where) {
    std::vector<std::vector<Line>> sets(cut.nodes().size());
    for (uint32_t p = 0; p < pts.size(); ++p)
      sets[where[p]].push_back(dual_point(pts[p]));
    return sets;
  };
  auto bulk = [&](const std::vector<uint32_t>& where) {
    int64_t total = 0;
    for (uint32_t p = 0; p < pts.size(); ++p)
      total += cut.node(where[p]).below;
    return total;
  };
  out.down = bulk(where_dn);
  out.up = bulk(where_up);

  BinarizedTree bt_dn = binarize(cut, leaf_sets(where_dn));
  CascadeTree cas_dn(bt_dn.input, 8, rng.fork());
  BinarizedTree* bt_up = &bt_dn;
  CascadeTree* cas_up = &cas_dn;
  std::unique_ptr<BinarizedTree> bt_up_store;
  std::unique_ptr<CascadeTree> cas_up_store;
  if (!same) {
    bt_up_store = std::make_unique<BinarizedTree>(
        binarize(cut, leaf_sets(where_up)));
    cas_up_store = std::make_unique<CascadeTree>(bt_up_store->input, 8,
                                                 rng.fork());
    bt_up = bt_up_store.get();
    cas_up = cas_up_store.get();
  }

  // query stream: dual points of the lines, x-monotone, Down before Up
  struct Q {
    Point q;
    Perturb dir;
    uint32_t line;
  };
  std::vector<Q> qs;
  qs.reserve(2 * n);
  for (uint32_t l = 0; l < n; ++l) {
    Point d = dual_line(lines[l]);
    qs.push_back({d, Perturb::Down, l});
    qs.push_back({std::move(d), Perturb::Up, l});
  }
  std::sort(qs.begin(), qs.end(), [](const Q& a, const Q& b) {
    int c = a.q.x.cmp(b.q.x);
    if (c) return c < 0;
    if (a.dir != b.dir) return a.dir == Perturb::Down;
    c = a.q.y.cmp(b.q.y);
    if (c) return c < 0;
    return a.line < b.line;
  });

  // crossed cutting nodes per line, computed once and reused by both passes
  std::vector<std::vector<uint32_t>> crossed_of(n);
  for (uint32_t l = 0; l < n; ++l) crossed_of[l] = cut.crossed_nodes(lines[l]);

  std::vector<CascadeTree::NodeAnswer> ans;
  std::vector<uint32_t> stamp_dn(bt_dn.input.parent.size(), 0), stamp_up;
  if (!same) stamp_up.assign(bt_up->input.parent.size(), 0);
  std::vector<uint32_t> sub;
  uint32_t epoch = 0;
  for (const Q& qq : qs) {
    bool down = qq.dir == Perturb::Down;
    BinarizedTree& bt = down ? bt_dn : *bt_up;
    CascadeTree& cas = down ? cas_dn : *cas_up;
    auto& stamp = (down || same) ? stamp_dn : stamp_up;
    expand_subtree(bt, crossed_of[qq.line], stamp, ++epoch, sub);
    if (sub.empty()) continue;  // line crosses no cell (empty input)
    cas.query(qq.q, qq.dir, sub, ans);
    out.subtree_total += sub.size();
    int64_t got = 0;
    for (const auto& a : ans) got += a.below;
    (down ? out.down : out.up) += got;
  }
  return out;
}

// recurrence baseline: one cutting application per half-stage, dualizing
// between halves; budget counts half-stages
int64_t recursive_count_dir(const std::vector<Point>& pts,
                            const std::vector<Line>& lines, int halves,
                            Perturb dir, Rng& rng) {
  size_t m = pts.size(), n = lines.size();
  if (m == 0 || n == 0) return 0;
  if (halves <= 0 || n < 32 || m < 4)
    return locator_count_dir(pts, lines, dir, rng.next());
  double lg = std::log2(double(n));
  double rr = std::cbrt(double(n) / std::max(1.0, lg * lg * lg));
  uint64_t r = uint64_t(std::max(2.0, std::floor(rr)));
  if (r < 2) return locator_count_dir(pts, lines, dir, rng.next());

  CuttingTree cut(lines, r, CuttingParams{}, rng.fork());
  size_t cap = std::max<size_t>(1, (m + r * r - 1) / (r * r));
  cut.split_by_points(pts, cap);
  std::vector<uint32_t> where = cut.locate_batch(pts, dir);

  int64_t total = 0;
  std::vector<std::vector<uint32_t>> leaf_pts(cut.nodes().size());
  for (uint32_t p = 0; p < pts.size(); ++p) {
    total += cut.node(where[p]).below;
    leaf_pts[where[p]].push_back(p);
  }
  for (uint32_t leaf : cut.leaves()) {
    const auto& lp = leaf_pts[leaf];
    const auto& conf = cut.node(leaf).conflict;
    if (lp.empty() || conf.empty()) continue;
    // dual subproblem: conflict lines become points, cell points lines
    std::vector<Point> dp;
    dp.reserve(conf.size());
    for (uint32_t l : conf) dp.push_back(dual_line(lines[l]));
    std::vector<Line> dl;
    dl.reserve(lp.size());
    for (uint32_t p : lp) dl.push_back(dual_point(pts[p]));
    total += recursive_count_dir(dp, dl, halves - 1, dir, rng);
  }
  return total;
}

int64_t asymmetric_count_dir(const std::vector<Point>& pts,
                             const std::vector<Line>& lines, Perturb dir,
                             Rng& rng) {
  size_t m = pts.size(), n = lines.size();
  if (m == 0 || n == 0) return 0;
  if (m < n) {  // dualize to the point-heavy side
    std::vector<Point> dp;
    std::vector<Line> dl;
    dualize(pts, lines, dp, dl);
    return asymmetric_count_dir(dp, dl, dir, rng);
  }
  if (m > n * n || n < 8)
    return locator_count_dir(pts, lines, dir, rng.next());
  uint64_t r = m / n;
  if (r < 2) {
    CascadeCounts cc = cascade_counts(pts, lines, rng.next());
    return dir == Perturb::Down ? cc.down : cc.up;
  }
  CuttingTree cut(lines, r, CuttingParams{}, rng.fork());
  size_t cap = std::max<size_t>(1, (m + r * r - 1) / (r * r));
  cut.split_by_points(pts, cap);
  std::vector<uint32_t> where = cut.locate_batch(pts, dir);
  int64_t total = 0;
  std::vector<std::vector<uint32_t>> leaf_pts(cut.nodes().size());
  for (uint32_t p = 0; p < pts.size(); ++p) {
    total += cut.node(where[p]).below;
    leaf_pts[where[p]].push_back(p);
  }
  for (uint32_t leaf : cut.leaves()) {
    const auto& lp = leaf_pts[leaf];
    const auto& conf = cut.node(leaf).conflict;
    if (lp.empty() || conf.empty()) continue;
    std::vector<Point> sp;
    sp.reserve(lp.size());
    for (uint32_t p : lp) sp.push_back(pts[p]);
    std::vector<Line> sl;
    sl.reserve(conf.size());
    for (uint32_t l : conf) sl.push_back(lines[l]);
    CascadeCounts cc = cascade_counts(sp, sl, rng.next());
    total += dir == Perturb::Down ? cc.down : cc.up;
  }
  return total;
}

}  // namespace

CountResult count_brute_serial(const std::vector<Point>& pts,
                               const std::vector<Line>& lines) {
  Timer t;
  stats::Scope sc;
  CountResult r;
  FastInput f = extract_fast(pts, lines);
  if (f.ok) {
    for (size_t i = 0; i < pts.size(); ++i)
      for (size_t j = 0; j < lines.size(); ++j) {
        int s = side_sign_i64(f.px[i], f.py[i], f.la[j], f.lb[j]);
        r.above += s > 0;
        r.incidences += s == 0;
      }
  } else {
    for (const auto& p : pts)
      for (const auto& l : lines) {
        SideSign s = side(p, l);
        r.above += s == SideSign::Above;
        r.incidences += s == SideSign::On;
      }
  }
  r.predicate_evals = sc.delta();
  r.wall_seconds = t.secs();
  return r;
}

CountResult count_brute(const std::vector<Point>& pts,
                        const std::vector<Line>& lines) {
  Timer t;
  CountResult r;
  FastInput f = extract_fast(pts, lines);
  stats::ThreadDelta evals;
  if (f.ok) {
    int64_t above = 0, incid = 0;
#ifdef _OPENMP
#pragma omp parallel
#endif
    {
      stats::Scope sc;
      int64_t a = 0, c = 0;
#ifdef _OPENMP
#pragma omp for nowait schedule(static)
#endif
      for (long long i = 0; i < (long long)pts.size(); ++i)
        for (size_t j = 0; j < lines.size(); ++j) {
          int s = side_sign_i64(f.px[i], f.py[i], f.la[j], f.lb[j]);
          a += s > 0;
          c += s == 0;
        }
#ifdef _OPENMP
#pragma omp critical
#endif
      {
        above += a;
        incid += c;
      }
      evals.fold(sc.delta());
    }
    r.above = above;
    r.incidences = incid;
    r.predicate_evals = evals.total.load();
  } else {
    r = count_brute_serial(pts, lines);
    r.wall_seconds = t.secs();
    return r;
  }
  r.wall_seconds = t.secs();
  return r;
}

CountResult count_arrangement(const std::vector<Point>& pts,
                              const std::vector<Line>& lines, uint64_t seed) {
  Timer t;
  stats::Scope sc;
  CountResult r;
  r.seed = seed;
  if (!pts.empty() && !lines.empty()) {
    PointLocator loc(lines, seed);
    for (const auto& p : pts) {
      int64_t dn = loc.locate(p, Perturb::Down).below;
      int64_t up = loc.locate(p, Perturb::Up).below;
      r.above += dn;
      r.incidences += up - dn;
    }
  }
  r.predicate_evals = sc.delta();
  r.wall_seconds = t.secs();
  return r;
}

CountResult count_recursive(const std::vector<Point>& pts,
                            const std::vector<Line>& lines, int depth_limit,
                            uint64_t seed) {
  Timer t;
  stats::Scope sc;
  CountResult r;
  r.seed = seed;
  Rng rng_dn(seed), rng_up(seed);
  int halves = 2 * depth_limit;
  int64_t dn = recursive_count_dir(pts, lines, halves, Perturb::Down, rng_dn);
  int64_t up = recursive_count_dir(pts, lines, halves, Perturb::Up, rng_up);
  r.above = dn;
  r.incidences = up - dn;
  r.predicate_evals = sc.delta();
  r.wall_seconds = t.secs();
  return r;
}

CountResult count_cascade(const std::vector<Point>& pts,
                          const std::vector<Line>& lines, uint64_t seed) {
  Timer t;
  stats::Scope sc;
  CascadeCounts cc = cascade_counts(pts, lines, seed);
  CountResult r;
  r.seed = seed;
  r.above = cc.down;
  r.incidences = cc.up - cc.down;
  r.subtree_total = cc.subtree_total;
  r.predicate_evals = sc.delta();
  r.wall_seconds = t.secs();
  return r;
}

CountResult count_asymmetric(const std::vector<Point>& pts,
                             const std::vector<Line>& lines, uint64_t seed) {
  Timer t;
  stats::Scope sc;
  CountResult r;
  r.seed = seed;
  Rng rng_dn(seed), rng_up(seed);
  r.above = asymmetric_count_dir(pts, lines, Perturb::Down, rng_dn);
  int64_t up = asymmetric_count_dir(pts, lines, Perturb::Up, rng_up);
  r.incidences = up - r.above;
  r.predicate_evals = sc.delta();
  r.wall_seconds = t.secs();
  return r;
}

namespace {

// weighted pipeline for one perturbation direction
void weighted_dir(const std::vector<Point>& pts,
                  const std::vector<int64_t>& wpts,
                  const std::vector<Line>& lines,
                  const std::vector<int64_t>& wlines, Perturb dir, Rng rng,
                  std::vector<int64_t>& per_point,
                  std::vector<int64_t>& per_line) {
  size_t m = pts.size(), n = lines.size();
  per_point.assign(m, 0);
  per_line.assign(n, 0);
  if (m == 0 || n == 0) return;
  if (m * n <= (size_t(1) << 17)) {
    // below the machinery's overhead: exact double loop
    for (size_t i = 0; i < m; ++i)
      for (size_t j = 0; j < n; ++j)
        if (side_perturbed(pts[i], lines[j], dir) == SideSign::Above) {
          per_point[i] += wlines[j];
          per_line[j] += wpts[i];
        }
    return;
  }

  uint64_t r = std::max<uint64_t>(1, uint64_t(std::ceil(std::cbrt(double(n)))));
  CuttingTree cut(lines, r, CuttingParams{}, rng.fork());
  size_t cap = std::max<size_t>(1, (m + r * r - 1) / (r * r));
  cut.split_by_points(pts, cap);
  std::vector<uint32_t> where = cut.locate_batch(pts, dir);

  const auto& nodes = cut.nodes();
  std::vector<std::vector<uint32_t>> leaf_pts(nodes.size());
  std::vector<int64_t> subtree_wpts(nodes.size(), 0);
  for (uint32_t p = 0; p < pts.size(); ++p) {
    leaf_pts[where[p]].push_back(p);
    // accumulate point weight up the tree
    uint32_t v = where[p];
    while (v != kNone32) {
      subtree_wpts[v] += wpts[p];
      v = nodes[v].parent;
    }
  }

  // per tree edge: lines crossing the parent but entirely below the child
  std::vector<int64_t> pending(nodes.size(), 0);
  for (uint32_t v = 1; v < nodes.size(); ++v) {
    const CutNode& nd = nodes[v];
    for (uint32_t lid : nodes[nd.parent].conflict) {
      if (nd.cell.classify(cut.lines()[lid]) == Trapezoid::LineClass::Below) {
        pending[v] += wlines[lid];
        per_line[lid] += subtree_wpts[v];
      }
    }
  }
  // push pending weights down to the points
  for (uint32_t v = 1; v < nodes.size(); ++v) pending[v] += pending[nodes[v].parent];
  for (uint32_t leaf : cut.leaves())
    for (uint32_t p : leaf_pts[leaf]) per_point[p] += pending[leaf];

  // base cases: arrangement of the leaf's conflict lines (face_weight_sums)
  for (uint32_t leaf : cut.leaves()) {
    const auto& lp = leaf_pts[leaf];
    const auto& conf = nodes[leaf].conflict;
    if (lp.empty() || conf.empty()) continue;
    if (lp.size() * conf.size() <= (size_t(1) << 14)) {
      for (uint32_t p : lp)
        for (uint32_t l : conf)
          if (side_perturbed(pts[p], lines[l], dir) == SideSign::Above) {
            per_point[p] += wlines[l];
            per_line[l] += wpts[p];
          }
      continue;
    }
    std::vector<Line> cl;
    std::vector<int64_t> cw;
    for (uint32_t l : conf) {
      cl.push_back(lines[l]);
      cw.push_back(wlines[l]);
    }
    Arrangement arr = build_arrangement(cl);
    VertDecomp vd = build_vd(arr);
    // locate each point into its face
    std::vector<uint32_t> face_of(lp.size(), kNone32);
    std::vector<int64_t> face_w(arr.num_faces(), 0);
    for (size_t i = 0; i < lp.size(); ++i) {
      const Point& p = pts[lp[i]];
      for (size_t tix = 0; tix < vd.traps.size(); ++tix) {
        if (vd.traps[tix].contains(p, dir)) {
          face_of[i] = vd.trap_face[tix];
          break;
        }
      }
      assert(face_of[i] != kNone32);
      face_w[face_of[i]] += wpts[lp[i]];
    }
    FaceWeightSums fw = face_weight_sums(arr, cw, face_w);
    for (size_t i = 0; i < lp.size(); ++i)
      per_point[lp[i]] += fw.per_face[face_of[i]];
    for (size_t k = 0; k < conf.size(); ++k)
      per_line[conf[k]] += fw.per_line[k];
  }
}

}  // namespace

WeightedResult weighted_counts(const std::vector<Point>& pts,
                               const std::vector<int64_t>& point_weights,
                               const std::vector<Line>& lines,
                               const std::vector<int64_t>& line_weights,
                               uint64_t seed) {
  WeightedResult r;
  weighted_dir(pts, point_weights, lines, line_weights, Perturb::Down,
               Rng(seed), r.per_point, r.per_line);
  return r;
}

IndividualCounts individual_counts(const std::vector<Point>& pts,
                                   const std::vector<Line>& lines,
                                   uint64_t seed) {
  IndividualCounts out;
  std::vector<int64_t> unit_p(pts.size(), 1), unit_l(lines.size(), 1);
  std::vector<int64_t> pp_dn, pl_dn, pp_up, pl_up;
  weighted_dir(pts, unit_p, lines, unit_l, Perturb::Down, Rng(seed), pp_dn,
               pl_dn);
  weighted_dir(pts, unit_p, lines, unit_l, Perturb::Up, Rng(seed ^ 0x5bd1),
               pp_up, pl_up);
  out.below_per_point = pp_dn;
  out.above_per_line = pl_dn;
  out.on_per_point.resize(pts.size());
  for (size_t i = 0; i < pts.size(); ++i)
    out.on_per_point[i] = pp_up[i] - pp_dn[i];
  out.on_per_line.resize(lines.size());
  for (size_t j = 0; j < lines.size(); ++j)
    out.on_per_line[j] = pl_up[j] - pl_dn[j];
  return out;
}

}  // namespace hop
