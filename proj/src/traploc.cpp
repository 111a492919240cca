#include "hop/traploc.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace hop {

namespace {

// union-find for face grouping
struct Dsu {
  std::vector<uint32_t> p;
  explicit Dsu(size_t n) : p(n) { std::iota(p.begin(), p.end(), 0u); }
  uint32_t find(uint32_t x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(uint32_t a, uint32_t b) { p[find(a)] = find(b); }
};

inline int sign_i128(__int128 v) { return v < 0 ? -1 : (v > 0 ? 1 : 0); }

inline int bits_i128(__int128 v) {
  unsigned __int128 u = v < 0 ? -(unsigned __int128)v : (unsigned __int128)v;
  uint64_t hi = (uint64_t)(u >> 64);
  if (hi) return 64 + (64 - __builtin_clzll(hi));
  uint64_t lo = (uint64_t)u;
  return lo ? 64 - __builtin_clzll(lo) : 0;
}

// gcd-free predicates on raw numerators/denominators; all dens positive
bool all_int(const Line& l1, const Line& l2) {
  return l1.a.den() == ExactScalar(1) && l1.b.den() == ExactScalar(1) &&
         l2.a.den() == ExactScalar(1) && l2.b.den() == ExactScalar(1);
}

// sign of (l1 - l2)(xn / xd), xd > 0
int sign_diff_at_raw(const Line& l1, const Line& l2, const ExactScalar& xn,
                     const ExactScalar& xd) {
  stats::bump();
  if (all_int(l1, l2)) {
    ExactScalar v = (l1.a.num() - l2.a.num()) * xn +
                    (l1.b.num() - l2.b.num()) * xd;
    return v.sign();
  }
  ExactScalar da = l1.a.num() * l2.a.den() - l2.a.num() * l1.a.den();
  ExactScalar db = l1.b.num() * l2.b.den() - l2.b.num() * l1.b.den();
  ExactScalar v = da * xn * (l1.b.den() * l2.b.den()) +
                  db * xd * (l1.a.den() * l2.a.den());
  return v.sign();
}

// crossing abscissa of two non-parallel lines as an unreduced fraction
struct RawX {
  ExactScalar n, d;   // d > 0
  __int128 fn = 0, fd = 1;
  bool fast = false;  // int128 fields valid
};

int cmp_rawx(const RawX& a, const RawX& b) {
  stats::bump();
  if (a.fast && b.fast) return sign_i128(a.fn * b.fd - b.fn * a.fd);
  return (a.n * b.d).cmp(b.n * a.d);
}

}  // namespace

int PointLocator::eta_sign(std::vector<std::pair<uint32_t, Rational>> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  size_t i = 0;
  while (i < terms.size()) {
    size_t j = i;
    Rational sum(0);
    while (j < terms.size() && terms[j].first == terms[i].first)
      sum += terms[j++].second;
    if (sum.sign() != 0) return sum.sign();  // smallest exponent dominates
    i = j;
  }
  return 0;
}

int PointLocator::cmp_vertex_x(const Vert& a, const Vert& b) const {
  stats::bump();
  int c = a.fast && b.fast ? sign_i128(a.fxn * b.fxd - b.fxn * a.fxd)
                           : a.x0.cmp(b.x0);
  if (c) return c;
  // eta parts: t(v) = (eta^lj - eta^li) / (a_li - a_lj)
  std::vector<std::pair<uint32_t, Rational>> terms;
  Rational da = lines_[a.li].a - lines_[a.lj].a;
  Rational inva = Rational(1) / da;
  terms.emplace_back(a.lj, inva);
  terms.emplace_back(a.li, -inva);
  Rational db = lines_[b.li].a - lines_[b.lj].a;
  Rational invb = Rational(1) / db;
  terms.emplace_back(b.lj, -invb);
  terms.emplace_back(b.li, invb);
  return eta_sign(std::move(terms));
}

int PointLocator::cmp_lines_at_vertex(uint32_t g1, uint32_t g2,
                                      const Vert& v) const {
  if (g1 == g2) return 0;
  const Line &l1 = lines_[g1], &l2 = lines_[g2];
  int c;
  if (fast_[g1].ok && fast_[g2].ok && v.fast) {
    stats::bump();
    c = sign_i128((__int128)(fast_[g1].a - fast_[g2].a) * v.fxn +
                  (__int128)(fast_[g1].b - fast_[g2].b) * v.fxd);
  } else {
    c = sign_diff_at_raw(l1, l2, v.x0.num(), v.x0.den());
  }
  if (c) return c;
  Rational da = l1.a - l2.a;
  std::vector<std::pair<uint32_t, Rational>> terms;
  if (!da.is_zero()) {
    Rational dv = lines_[v.li].a - lines_[v.lj].a;
    Rational coef = da / dv;
    terms.emplace_back(v.lj, coef);
    terms.emplace_back(v.li, -coef);
  }
  terms.emplace_back(g1, Rational(1));
  terms.emplace_back(g2, Rational(-1));
  return eta_sign(std::move(terms));
}

int PointLocator::cmp_lines_at_minus_inf(uint32_t g1, uint32_t g2) const {
  stats::bump();
  if (g1 == g2) return 0;
  const Line &l1 = lines_[g1], &l2 = lines_[g2];
  int c = l2.a.cmp(l1.a);  // larger slope lies lower
  if (c) return c;
  c = l1.b.cmp(l2.b);
  if (c) return c;
  // identical true lines never reach here (deduplicated), but keep it total
  return g1 < g2 ? 1 : -1;  // smaller id -> larger eta -> higher
}

uint32_t PointLocator::locate_walk(uint32_t ell, uint32_t v) const {
  uint32_t n = root_;
  for (;;) {
    const Node& nd = nodes_[n];
    if (nd.kind == kLeaf) return nd.a;
    if (nd.kind == kXNode) {
      if (v == kNone32) {
        n = nd.lo;  // -infinity is left of every wall
        continue;
      }
      int c = cmp_vertex_x(verts_[v], verts_[nd.a]);
      // at the same wall the walk point sits just right of it
      n = c < 0 ? nd.lo : nd.hi;
      continue;
    }
    // ynode: perturbed ell vs perturbed line nd.a just right of v
    int c;
    if (v == kNone32) {
      c = cmp_lines_at_minus_inf(ell, nd.a);
    } else {
      c = cmp_lines_at_vertex(ell, nd.a, verts_[v]);
      if (c == 0) {
        // both lines pass through v: order just right is by slope
        c = lines_[ell].a.cmp(lines_[nd.a].a);
        assert(c != 0);
      }
    }
    n = c > 0 ? nd.hi : nd.lo;
  }
}

uint32_t PointLocator::new_leaf(uint32_t trap) {
  nodes_.push_back(Node{kLeaf, trap, kNone32, kNone32});
  traps_[trap].leaf = uint32_t(nodes_.size() - 1);
  return uint32_t(nodes_.size() - 1);
}

uint32_t PointLocator::new_trap(uint32_t top, uint32_t bot, uint32_t lv,
                                int64_t below) {
  Trap t;
  t.top = top;
  t.bot = bot;
  t.lv = lv;
  t.below = below;
  traps_.push_back(std::move(t));
  uint32_t id = uint32_t(traps_.size() - 1);
  new_leaf(id);
  return id;
}

void PointLocator::vert_fast_fields(Vert& v) const {
  const ExactScalar& n = v.x0.num();
  const ExactScalar& d = v.x0.den();
  if (n.is_small() && d.is_small() && n.bit_length() <= 62 &&
      d.bit_length() <= 62) {
    v.fxn = n.small_value();
    v.fxd = d.small_value();
    v.fast = true;
  }
}

PointLocator::PointLocator(const std::vector<Line>& input, uint64_t seed) {
  // deduplicate with multiplicity
  std::vector<uint32_t> idx(input.size());
  std::iota(idx.begin(), idx.end(), 0u);
  std::sort(idx.begin(), idx.end(), [&](uint32_t a, uint32_t b) {
    return input[a].cmp(input[b]) < 0;
  });
  for (uint32_t k = 0; k < idx.size(); ++k) {
    if (k == 0 || input[idx[k]].cmp(input[idx[k - 1]]) != 0) {
      lines_.push_back(input[idx[k]]);
      mult_.push_back(0);
    }
    ++mult_.back();
  }
  fast_.resize(lines_.size());
  for (size_t i = 0; i < lines_.size(); ++i) {
    const Line& l = lines_[i];
    if (l.a.den() == ExactScalar(1) && l.b.den() == ExactScalar(1) &&
        l.a.num().is_small() && l.b.num().is_small() &&
        l.a.num().bit_length() <= 30 && l.b.num().bit_length() <= 30) {
      fast_[i].a = (long long)l.a.num().small_value();
      fast_[i].b = (long long)l.b.num().small_value();
      fast_[i].ok = true;
    }
  }
  // whole plane
  uint32_t t0 = new_trap(kNone32, kNone32, kNone32, 0);
  root_ = traps_[t0].leaf;
  // random insertion order
  std::vector<uint32_t> order(lines_.size());
  std::iota(order.begin(), order.end(), 0u);
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  rng.shuffle(order);
  for (uint32_t ell : order) insert_line(ell);
  build_faces();
}

void PointLocator::insert_line(uint32_t ell) {
  const Line& L = lines_[ell];
  const int64_t m = mult_[ell];

  // ---- phase 1: walk the old map, recording crossed traps and exits ----
  enum ExitKind : uint8_t { kWall, kTopCross, kBotCross, kEnd };
  struct Step {
    uint32_t trap;
    ExitKind exit;
    uint32_t vx;  // wall vertex or (registered) crossing vertex
  };
  std::vector<Step> steps;
  uint32_t cur = locate_walk(ell, kNone32);
  uint32_t entry = kNone32;
  for (;;) {
    const Trap& t = traps_[cur];
    // candidate crossings with top / bottom as unreduced abscissae; ties
    // with registered vertices cannot occur (eta-generic), so the rational
    // comparison is refined by the eta order only through cmp_vertex_x
    bool have_best = false;
    RawX best_x;
    uint32_t best_g = kNone32;
    ExitKind kind = kEnd;
    auto make_rawx = [&](uint32_t g) {
      RawX x;
      if (fast_[ell].ok && fast_[g].ok) {
        x.fn = fast_[g].b - fast_[ell].b;
        x.fd = fast_[ell].a - fast_[g].a;
        if (x.fd < 0) {
          x.fn = -x.fn;
          x.fd = -x.fd;
        }
        x.fast = true;
        return x;
      }
      const Line &l1 = L, &l2 = lines_[g];
      if (all_int(l1, l2)) {
        x.n = l2.b.num() - l1.b.num();
        x.d = l1.a.num() - l2.a.num();
      } else {
        x.n = (l2.b.num() * l1.b.den() - l1.b.num() * l2.b.den()) *
              (l1.a.den() * l2.a.den());
        x.d = (l1.a.num() * l2.a.den() - l2.a.num() * l1.a.den()) *
              (l1.b.den() * l2.b.den());
      }
      if (x.d.sign() < 0) {
        x.n = -x.n;
        x.d = -x.d;
      }
      return x;
    };
    auto ahead_of = [&](const RawX& x, uint32_t vtx, uint32_t other) {
      // is the crossing (ell, other) strictly right of registered vertex vtx?
      const Vert& v = verts_[vtx];
      int c;
      stats::bump();
      if (x.fast && v.fast)
        c = sign_i128(x.fn * v.fxd - v.fxn * x.fd);
      else if (x.fast)
        c = (ExactScalar::from_int128(x.fn) * v.x0.den())
                .cmp(v.x0.num() * ExactScalar::from_int128(x.fd));
      else
        c = (x.n * v.x0.den()).cmp(v.x0.num() * x.d);
      if (c) return c > 0;
      // rational tie: compare eta parts exactly via a temporary vertex
      Vert tmp;
      tmp.x0 = x.fast ? Rational(ExactScalar::from_int128(x.fn),
                                 ExactScalar::from_int128(x.fd))
                      : Rational(x.n, x.d);
      tmp.li = std::min(ell, other);
      tmp.lj = std::max(ell, other);
      return cmp_vertex_x(tmp, verts_[vtx]) > 0;
    };
    auto consider = [&](uint32_t g, ExitKind k) {
      if (g == kNone32 || lines_[g].a == L.a) return;
      RawX x = make_rawx(g);
      if (entry != kNone32 && !ahead_of(x, entry, g)) return;
      if (t.rv != kNone32 && ahead_of(x, t.rv, g)) return;
      if (have_best) {
        int c = cmp_rawx(x, best_x);
        if (c > 0) return;
        if (c == 0) {
          // both crossings involve ell; eta order decides
          auto mk = [&](const RawX& rx, uint32_t other) {
            Vert w;
            w.x0 = rx.fast ? Rational(ExactScalar::from_int128(rx.fn),
                                      ExactScalar::from_int128(rx.fd))
                           : Rational(rx.n, rx.d);
            w.li = std::min(ell, other);
            w.lj = std::max(ell, other);
            return w;
          };
          if (cmp_vertex_x(mk(x, g), mk(best_x, best_g)) >= 0) return;
        }
      }
      best_x = std::move(x);
      best_g = g;
      kind = k;
      have_best = true;
    };
    consider(t.top, kTopCross);
    consider(t.bot, kBotCross);
    if (have_best) {
      uint32_t w = uint32_t(verts_.size());
      Vert nv;
      nv.x0 = best_x.fast ? Rational(ExactScalar::from_int128(best_x.fn),
                                     ExactScalar::from_int128(best_x.fd))
                          : Rational(std::move(best_x.n), std::move(best_x.d));
      nv.li = std::min(ell, best_g);
      nv.lj = std::max(ell, best_g);
      vert_fast_fields(nv);
      verts_.push_back(std::move(nv));
      steps.push_back({cur, kind, w});
      entry = w;
      cur = locate_walk(ell, w);
    } else if (t.rv != kNone32) {
      steps.push_back({cur, kWall, t.rv});
      entry = t.rv;
      cur = locate_walk(ell, t.rv);
    } else {
      steps.push_back({cur, kEnd, kNone32});
      break;
    }
  }

  // ---- phase 2: rebuild -------------------------------------------------
  // below counts are recomputed globally after all insertions
  (void)m;
  uint32_t up = new_trap(traps_[steps[0].trap].top, ell, kNone32, 0);
  uint32_t dn = new_trap(ell, traps_[steps[0].trap].bot, kNone32, 0);
  uint32_t enter_wrap = kNone32;  // left remnant to hang at the entry wall
  uint32_t enter_vx = kNone32;

  for (size_t si = 0; si < steps.size(); ++si) {
    const Step& st = steps[si];
    // copy: traps_ may reallocate while new pieces are created
    const Trap old = traps_[st.trap];
    traps_[st.trap].alive = false;

    // remnant pending from a cross entry into this trap
    uint32_t wrap_in = enter_wrap, wrap_in_vx = enter_vx;
    enter_wrap = kNone32;

    // the node replacing the region of `old`
    nodes_.push_back(Node{kYNode, ell, traps_[dn].leaf, traps_[up].leaf});
    uint32_t repl = uint32_t(nodes_.size() - 1);

    switch (st.exit) {
      case kWall: {
        const uint32_t nxt_id = steps[si + 1].trap;
        // the wall's vertex lies below ell iff it sits on the bottom
        // boundaries; the boundary that continues then merges its piece
        bool v_below =
            cmp_lines_at_vertex(verts_[st.vx].li, ell, verts_[st.vx]) < 0;
        if (v_below) {
          assert(traps_[nxt_id].top == old.top);
          traps_[dn].rv = st.vx;
          dn = new_trap(ell, traps_[nxt_id].bot, st.vx, 0);
        } else {
          assert(traps_[nxt_id].bot == old.bot);
          traps_[up].rv = st.vx;
          up = new_trap(traps_[nxt_id].top, ell, st.vx, 0);
        }
        break;
      }
      case kTopCross: {
        // ell exits upward through old.top at st.vx
        const uint32_t nxt_id = steps[si + 1].trap;
        traps_[up].rv = st.vx;
        traps_[dn].rv = st.vx;
        // right remnant of `old`, entirely below ell
        uint32_t rem = new_trap(old.top, old.bot, st.vx, 0);
        traps_[rem].rv = old.rv;
        nodes_.push_back(Node{kXNode, st.vx, repl, traps_[rem].leaf});
        repl = uint32_t(nodes_.size() - 1);
        // left remnant of the next trap, entirely above ell
        uint32_t lrem = new_trap(traps_[nxt_id].top, traps_[nxt_id].bot,
                                 traps_[nxt_id].lv, 0);
        traps_[lrem].rv = st.vx;
        enter_wrap = lrem;
        enter_vx = st.vx;
        up = new_trap(traps_[nxt_id].top, ell, st.vx, 0);
        dn = new_trap(ell, old.top, st.vx, 0);
        break;
      }
      case kBotCross: {
        const uint32_t nxt_id = steps[si + 1].trap;
        traps_[up].rv = st.vx;
        traps_[dn].rv = st.vx;
        // right remnant of `old`, entirely above ell
        uint32_t rem = new_trap(old.top, old.bot, st.vx, 0);
        traps_[rem].rv = old.rv;
        nodes_.push_back(Node{kXNode, st.vx, repl, traps_[rem].leaf});
        repl = uint32_t(nodes_.size() - 1);
        // left remnant of the next trap, entirely below ell
        uint32_t lrem = new_trap(traps_[nxt_id].top, traps_[nxt_id].bot,
                                 traps_[nxt_id].lv, 0);
        traps_[lrem].rv = st.vx;
        enter_wrap = lrem;
        enter_vx = st.vx;
        up = new_trap(old.bot, ell, st.vx, 0);
        dn = new_trap(ell, traps_[nxt_id].bot, st.vx, 0);
        break;
      }
      case kEnd:
        traps_[up].rv = old.rv;
        traps_[dn].rv = old.rv;
        break;
    }

    // wrap with the entry remnant when `old` was entered through a crossing
    if (wrap_in != kNone32) {
      nodes_.push_back(Node{kXNode, wrap_in_vx, traps_[wrap_in].leaf, repl});
      repl = uint32_t(nodes_.size() - 1);
    }

    // install the replacement over the old leaf in place
    nodes_[old.leaf] = nodes_[repl];
  }
}

void PointLocator::build_faces() {
  // One pass over the finished map derives faces and below counts.
  //  - wall edges: traps sharing a piece of a wall belong to one face
  //    (delta 0 in below count)
  //  - stack edges: vertically consecutive traps at a wall differ by the
  //    multiplicity of the boundary line between them
  // Anchors: traps unbounded below have below = 0.
  size_t nt = traps_.size();
  Dsu dsu(nt);
  struct Edge {
    uint32_t a, b;
    int64_t delta;  // below(b) - below(a)
  };
  std::vector<Edge> edges;
  std::vector<std::vector<uint32_t>> left(verts_.size()), right(verts_.size());
  for (uint32_t t = 0; t < nt; ++t) {
    if (!traps_[t].alive) continue;
    if (traps_[t].rv != kNone32) left[traps_[t].rv].push_back(t);
    if (traps_[t].lv != kNone32) right[traps_[t].lv].push_back(t);
  }
  for (uint32_t v = 0; v < verts_.size(); ++v) {
    // order a stack by its bottom lines just beside the wall; two bottoms tie
    // at the vertex exactly when they cross there, then the slope decides
    // (descending on the left of the wall, ascending on the right)
    auto order_stack = [&](std::vector<uint32_t>& ts, bool left_side) {
      std::sort(ts.begin(), ts.end(), [&](uint32_t a, uint32_t b) {
        uint32_t ba = traps_[a].bot, bb = traps_[b].bot;
        if (ba == bb) return false;
        if (ba == kNone32) return true;
        if (bb == kNone32) return false;
        int c = cmp_lines_at_vertex(ba, bb, verts_[v]);
        if (c) return c < 0;
        int cs = lines_[ba].a.cmp(lines_[bb].a);
        return left_side ? cs > 0 : cs < 0;
      });
    };
    order_stack(left[v], true);
    order_stack(right[v], false);
    for (const auto* stack : {&left[v], &right[v]}) {
      for (size_t k = 0; k + 1 < stack->size(); ++k) {
        uint32_t lo = (*stack)[k], hi = (*stack)[k + 1];
        assert(traps_[lo].top == traps_[hi].bot);
        edges.push_back({lo, hi, mult_[traps_[lo].top]});
      }
    }
    // two-pointer sweep: unite pairs whose open intervals overlap
    size_t i = 0, j = 0;
    auto top_of = [&](uint32_t t) { return traps_[t].top; };
    auto bot_of = [&](uint32_t t) { return traps_[t].bot; };
    auto cmp_tops = [&](uint32_t ga, uint32_t gb) {
      if (ga == kNone32) return gb == kNone32 ? 0 : 1;
      if (gb == kNone32) return -1;
      return cmp_lines_at_vertex(ga, gb, verts_[v]);
    };
    auto overlap = [&](uint32_t a, uint32_t b) {
      // max(bots) < min(tops), strictly
      uint32_t ba = bot_of(a), bb = bot_of(b);
      uint32_t lob =
          ba == kNone32 ? bb
                        : (bb == kNone32
                               ? ba
                               : (cmp_lines_at_vertex(ba, bb, verts_[v]) >= 0
                                      ? ba
                                      : bb));
      uint32_t ta = top_of(a), tb = top_of(b);
      uint32_t hit;
      if (ta == kNone32)
        hit = tb;
      else if (tb == kNone32)
        hit = ta;
      else
        hit = cmp_lines_at_vertex(ta, tb, verts_[v]) <= 0 ? ta : tb;
      if (lob == kNone32 || hit == kNone32) return true;
      return cmp_lines_at_vertex(lob, hit, verts_[v]) < 0;
    };
    while (i < left[v].size() && j < right[v].size()) {
      if (overlap(left[v][i], right[v][j])) {
        dsu.unite(left[v][i], right[v][j]);
        edges.push_back({left[v][i], right[v][j], 0});
      }
      // advance the one whose top ends lower
      int c = cmp_tops(top_of(left[v][i]), top_of(right[v][j]));
      if (c <= 0)
        ++i;
      else
        ++j;
    }
  }

  // propagate below counts
  std::vector<std::vector<std::pair<uint32_t, int64_t>>> adj(nt);
  for (const Edge& e : edges) {
    adj[e.a].push_back({e.b, e.delta});
    adj[e.b].push_back({e.a, -e.delta});
  }
  std::vector<int8_t> seen(nt, 0);
  if (verts_.empty()) {
    // no walls: distinct parallel lines (or none); traps form one stack
    std::vector<uint32_t> alive;
    for (uint32_t t = 0; t < nt; ++t)
      if (traps_[t].alive) alive.push_back(t);
    std::sort(alive.begin(), alive.end(), [&](uint32_t a, uint32_t b) {
      uint32_t ba = traps_[a].bot, bb = traps_[b].bot;
      if (ba == kNone32) return bb != kNone32;
      if (bb == kNone32) return false;
      return lines_[ba].b < lines_[bb].b;
    });
    int64_t acc = 0;
    for (uint32_t t : alive) {
      if (traps_[t].bot != kNone32) acc += mult_[traps_[t].bot];
      traps_[t].below = acc;
      seen[t] = 1;
    }
  } else {
    std::vector<uint32_t> queue;
    for (uint32_t t = 0; t < nt; ++t) {
      if (traps_[t].alive && traps_[t].bot == kNone32 && !seen[t]) {
        traps_[t].below = 0;
        seen[t] = 1;
        queue.push_back(t);
      }
    }
    while (!queue.empty()) {
      uint32_t t = queue.back();
      queue.pop_back();
      for (auto [u, d] : adj[t]) {
        if (seen[u]) {
          assert(traps_[u].below == traps_[t].below + d);
          continue;
        }
        traps_[u].below = traps_[t].below + d;
        seen[u] = 1;
        queue.push_back(u);
      }
    }
    for (uint32_t t = 0; t < nt; ++t)
      assert(!traps_[t].alive || seen[t]);
  }

  // face ids for alive traps
  n_alive_ = 0;
  n_faces_ = 0;
  std::vector<uint32_t> face_of(nt, kNone32);
  for (uint32_t t = 0; t < nt; ++t) {
    if (!traps_[t].alive) continue;
    ++n_alive_;
    uint32_t r = dsu.find(t);
    if (face_of[r] == kNone32) face_of[r] = uint32_t(n_faces_++);
    traps_[t].face = face_of[r];
  }
}

PointLocator::Ans PointLocator::locate(const Point& q, Perturb dir) const {
  uint32_t n = root_;
  bool up = dir == Perturb::Up;
  for (;;) {
    const Node& nd = nodes_[n];
    if (nd.kind == kLeaf) {
      const Trap& t = traps_[nd.a];
      return Ans{nd.a, t.face, t.below};
    }
    if (nd.kind == kXNode) {
      int c = q.x.cmp(verts_[nd.a].x0);
      // rational tie: epsilon^2 dominates eta
      bool go_right = c > 0 || (c == 0 && up);
      n = go_right ? nd.hi : nd.lo;
    } else {
      SideSign s = side_perturbed(q, lines_[nd.a], dir);
      n = s == SideSign::Above ? nd.hi : nd.lo;
    }
  }
}

}  // namespace hop
