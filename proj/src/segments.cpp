#include "hop/segments.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <numeric>
#include <optional>

#include "hop/hopcroft.hpp"
#include "hop/sweep.hpp"
#include "hop/rng.hpp"

namespace hop {

namespace {

int orient(const Point& a, const Point& b, const Point& c) {
  stats::bump();
  Rational cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  return cross.sign();
}

bool on_segment(const Segment& s, const Point& p) {
  // assumes p collinear with the segment's supporting line
  if (p.x < s.p.x || s.q.x < p.x) return false;
  const Rational& ylo = s.p.y < s.q.y ? s.p.y : s.q.y;
  const Rational& yhi = s.p.y < s.q.y ? s.q.y : s.p.y;
  return !(p.y < ylo) && !(yhi < p.y);
}

}  // namespace

bool segments_intersect(const Segment& a, const Segment& b) {
  int d1 = orient(b.p, b.q, a.p);
  int d2 = orient(b.p, b.q, a.q);
  int d3 = orient(a.p, a.q, b.p);
  int d4 = orient(a.p, a.q, b.q);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  if (d1 == 0 && on_segment(b, a.p)) return true;
  if (d2 == 0 && on_segment(b, a.q)) return true;
  if (d3 == 0 && on_segment(a, b.p)) return true;
  if (d4 == 0 && on_segment(a, b.q)) return true;
  return false;
}

int64_t seg_intersections_brute(const std::vector<Segment>& segs) {
  int64_t total = 0;
  for (size_t i = 0; i < segs.size(); ++i)
    for (size_t j = i + 1; j < segs.size(); ++j)
      total += segments_intersect(segs[i], segs[j]);
  return total;
}

namespace {

// ---- supporting lines ------------------------------------------------------

struct SuppLine {
  bool vertical = false;
  Line line;    // valid when non-vertical
  Rational x0;  // valid when vertical
};

SuppLine supporting(const Segment& s) {
  SuppLine out;
  if (s.vertical()) {
    out.vertical = true;
    out.x0 = s.p.x;
    return out;
  }
  Rational a = (s.q.y - s.p.y) / (s.q.x - s.p.x);
  out.line = Line(a, s.p.y - a * s.p.x);
  return out;
}

int cmp_supp(const SuppLine& a, const SuppLine& b) {
  if (a.vertical != b.vertical) return a.vertical ? 1 : -1;
  if (a.vertical) return a.x0.cmp(b.x0);
  return a.line.cmp(b.line);
}

// overlapping collinear pairs, counted once globally, plus witness edges
int64_t collinear_groups(const std::vector<Segment>& segs,
                         const std::vector<SuppLine>& supp,
                         std::vector<std::pair<uint32_t, uint32_t>>* edges) {
  std::vector<uint32_t> idx(segs.size());
  std::iota(idx.begin(), idx.end(), 0u);
  std::sort(idx.begin(), idx.end(), [&](uint32_t a, uint32_t b) {
    int c = cmp_supp(supp[a], supp[b]);
    return c ? c < 0 : a < b;
  });
  int64_t pairs = 0;
  for (size_t g = 0; g < idx.size();) {
    size_t e = g;
    while (e < idx.size() && cmp_supp(supp[idx[g]], supp[idx[e]]) == 0) ++e;
    if (e - g >= 2) {
      struct Iv {
        Rational lo, hi;
        uint32_t id;
      };
      std::vector<Iv> iv;
      for (size_t k = g; k < e; ++k) {
        const Segment& s = segs[idx[k]];
        if (supp[idx[k]].vertical)
          iv.push_back({s.p.y, s.q.y, idx[k]});
        else
          iv.push_back({s.p.x, s.q.x, idx[k]});
      }
      std::sort(iv.begin(), iv.end(), [](const Iv& a, const Iv& b) {
        int c = a.lo.cmp(b.lo);
        return c ? c < 0 : a.hi < b.hi;
      });
      std::vector<Rational> his;
      size_t best = 0;
      for (size_t k = 0; k < iv.size(); ++k) {
        if (k) {
          size_t below =
              std::lower_bound(his.begin(), his.end(), iv[k].lo) - his.begin();
          pairs += int64_t(his.size() - below);
          if (edges && !(iv[best].hi < iv[k].lo))
            edges->push_back({iv[best].id, iv[k].id});
          if (iv[best].hi < iv[k].hi) best = k;
        }
        his.insert(std::upper_bound(his.begin(), his.end(), iv[k].hi),
                   iv[k].hi);
      }
    }
    g = e;
  }
  return pairs;
}

// ---- batched crossing counts against the slab's long lines ----------------

// Answers "how many long supporting lines cross the line tau at an abscissa
// in a given range" exactly, by splitting on the slope order and counting
// dual points against dual query lines per dyadic slope block with the
// individual-counts engine (prefix-style batching).
class LongCrossCounter {
 public:
  LongCrossCounter(std::vector<Line> lines, uint64_t seed)
      : lines_(std::move(lines)), seed_(seed) {
    order_.resize(lines_.size());
    std::iota(order_.begin(), order_.end(), 0u);
    std::sort(order_.begin(), order_.end(), [&](uint32_t a, uint32_t b) {
      int c = lines_[a].a.cmp(lines_[b].a);
      return c ? c < 0 : a < b;
    });
    blocks_ = 1;
    while (blocks_ < std::max<size_t>(order_.size(), 1)) blocks_ *= 2;
    queries_.resize(2 * blocks_);
  }

  size_t size() const { return order_.size(); }
  const Line& line(uint32_t i) const { return lines_[i]; }

  size_t lower_rank(const Rational& slope) const {
    size_t lo = 0, hi = order_.size();
    while (lo < hi) {
      size_t mid = (lo + hi) / 2;
      if (lines_[order_[mid]].a < slope)
        lo = mid + 1;
      else
        hi = mid;
    }
    return lo;
  }
  size_t upper_rank(const Rational& slope) const {
    size_t lo = 0, hi = order_.size();
    while (lo < hi) {
      size_t mid = (lo + hi) / 2;
      if (slope < lines_[order_[mid]].a)
        hi = mid;
      else
        lo = mid + 1;
    }
    return lo;
  }

  uint32_t new_ticket() {
    tickets_.push_back(0);
    return uint32_t(tickets_.size() - 1);
  }

  // adds to `ticket` (with sign) the number of longs in slope-rank range
  // [rlo, rhi) whose crossing with tau is left of / at abscissa c:
  //   mode 0: cross < c     mode 1: cross == c
  void add_cross_count(uint32_t ticket, int sign, const Line& tau,
                       const Rational& c, int mode) {
    size_t lo = lower_rank(tau.a), hi = upper_rank(tau.a);
    Line g = dual_point(Point(c, tau.eval(c)));
    if (mode == 0) {
      // cross < c  <=>  (slope > tau: dual below g) or (slope < tau: above)
      add_block(ticket, sign, hi, order_.size(), g, Want::Below);
      add_block(ticket, sign, 0, lo, g, Want::Above);
    } else {
      add_block(ticket, sign, hi, order_.size(), g, Want::On);
      add_block(ticket, sign, 0, lo, g, Want::On);
    }
  }

  // adds the total number of longs crossing tau anywhere
  void add_cross_total(uint32_t ticket, int sign, const Line& tau) {
    size_t lo = lower_rank(tau.a), hi = upper_rank(tau.a);
    tickets_[ticket] += sign * int64_t(order_.size() - (hi - lo));
  }

  void run() {
    for (size_t node = 1; node < 2 * blocks_; ++node) {
      auto& qs = queries_[node];
      if (qs.empty()) continue;
      auto [blo, bhi] = range_of(node);
      blo = std::min(blo, order_.size());
      bhi = std::min(bhi, order_.size());
      if ((bhi - blo) * qs.size() <= (size_t(1) << 15)) {
        // small block: direct exact scan
        for (auto& q : qs) {
          int64_t v = 0;
          for (size_t k = blo; k < bhi; ++k) {
            SideSign s = side(dual_line(lines_[order_[k]]), q.g);
            v += q.want == Want::Above
                     ? s == SideSign::Above
                     : (q.want == Want::On ? s == SideSign::On
                                           : s == SideSign::Below);
          }
          tickets_[q.ticket] += q.sign * v;
        }
        qs.clear();
        continue;
      }
      auto [lo, hi] = range_of(node);
      lo = std::min(lo, order_.size());
      hi = std::min(hi, order_.size());
      if (lo >= hi) {
        qs.clear();
        continue;
      }
      std::vector<Point> duals;
      duals.reserve(hi - lo);
      for (size_t k = lo; k < hi; ++k)
        duals.push_back(dual_line(lines_[order_[k]]));
      std::vector<Line> qlines;
      qlines.reserve(qs.size());
      for (auto& q : qs) qlines.push_back(q.g);
      IndividualCounts ic = individual_counts(duals, qlines, seed_ ^ node);
      int64_t total = int64_t(duals.size());
      for (size_t k = 0; k < qs.size(); ++k) {
        int64_t above = ic.above_per_line[k], on = ic.on_per_line[k];
        int64_t v = qs[k].want == Want::Above
                        ? above
                        : (qs[k].want == Want::On ? on : total - above - on);
        tickets_[qs[k].ticket] += qs[k].sign * v;
      }
      qs.clear();
    }
  }

  int64_t result(uint32_t ticket) const { return tickets_[ticket]; }

 private:
  enum class Want { Above, Below, On };
  struct Q {
    Line g;
    uint32_t ticket;
    int sign;
    Want want;
  };
  std::vector<Line> lines_;
  std::vector<uint32_t> order_;
  size_t blocks_;
  std::vector<std::vector<Q>> queries_;
  std::vector<int64_t> tickets_;
  uint64_t seed_;

  std::pair<size_t, size_t> range_of(size_t node) const {
    size_t width = 1;
    while (node < blocks_) {
      node *= 2;
      width *= 2;
    }
    return {node - blocks_, node - blocks_ + width};
  }

  void add_block(uint32_t ticket, int sign, size_t lo, size_t hi,
                 const Line& g, Want want) {
    if (lo >= hi) return;
    for (size_t l = lo + blocks_, r = hi + blocks_; l < r; l /= 2, r /= 2) {
      if (l & 1) queries_[l++].push_back({g, ticket, sign, want});
      if (r & 1) queries_[--r].push_back({g, ticket, sign, want});
    }
  }
};

// ---- shared slab recursion --------------------------------------------------

struct SlabCtx {
  const std::vector<Segment>* segs;
  const std::vector<SuppLine>* supp;
  Rng rng;
  // counting
  int64_t pairs = 0;
  // components
  std::vector<std::pair<uint32_t, uint32_t>>* edges = nullptr;
  bool components = false;
};

bool spans(const Segment& s, const std::optional<Rational>& xl,
           const std::optional<Rational>& xr) {
  if (!xl || !xr) return false;
  return !(s.p.x > *xl) && !(s.q.x < *xr);
}

// long components within one slab: stack sweep over left-wall order; edges
// are genuine intersections; returns per-long local component ids
std::vector<uint32_t> long_components(
    SlabCtx& ctx, const std::vector<uint32_t>& longs, const Rational& xl,
    const Rational& xr, std::vector<std::pair<uint32_t, uint32_t>>& out_edges) {
  const auto& segs = *ctx.segs;
  const auto& supp = *ctx.supp;
  size_t k = longs.size();
  std::vector<Rational> la(k), ra(k);
  for (size_t i = 0; i < k; ++i) {
    la[i] = supp[longs[i]].line.eval(xl);
    ra[i] = supp[longs[i]].line.eval(xr);
  }
  std::vector<uint32_t> ord(k);
  std::iota(ord.begin(), ord.end(), 0u);
  std::sort(ord.begin(), ord.end(), [&](uint32_t a, uint32_t b) {
    int c = la[a].cmp(la[b]);
    if (c) return c > 0;  // descending left-wall value
    return a < b;
  });
  std::vector<uint32_t> parent(k);
  std::iota(parent.begin(), parent.end(), 0u);
  std::function<uint32_t(uint32_t)> find = [&](uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  struct Comp {
    uint32_t root;     // local dsu root
    uint32_t arg_min;  // local long with the minimum right-wall value
  };
  std::vector<Comp> stack;
  for (size_t i = 0; i < k;) {
    size_t j = i;
    while (j < k && la[ord[j]] == la[ord[i]]) ++j;
    // equal left-wall values share the wall point: chain them
    uint32_t run_max = ord[i];
    for (size_t t = i; t < j; ++t) {
      if (t > i) {
        out_edges.push_back({longs[ord[t - 1]], longs[ord[t]]});
        parent[find(ord[t - 1])] = find(ord[t]);
      }
      if (ra[ord[t]] > ra[run_max]) run_max = ord[t];
    }
    uint32_t run_min = ord[i];
    for (size_t t = i; t < j; ++t)
      if (ra[ord[t]] < ra[run_min]) run_min = ord[t];
    // pop components whose lowest right end does not clear the run
    uint32_t merged_min = run_min;
    while (!stack.empty() && !(ra[stack.back().arg_min] > ra[run_max])) {
      out_edges.push_back({longs[stack.back().arg_min], longs[run_max]});
      parent[find(stack.back().arg_min)] = find(run_max);
      if (ra[stack.back().arg_min] < ra[merged_min])
        merged_min = stack.back().arg_min;
      stack.pop_back();
    }
    stack.push_back(Comp{find(run_max), merged_min});
    i = j;
  }
  std::vector<uint32_t> comp(k);
  for (size_t i = 0; i < k; ++i) comp[i] = find(uint32_t(i));
  return comp;
}

// lower/upper envelope of a set of lines: lines in envelope order with
// breakpoint abscissae; eval returns (value, line index)
struct Envelope {
  std::vector<uint32_t> lines;  // indices into an external line array
  std::vector<Rational> breaks;

  template <typename GetLine>
  static Envelope build(const std::vector<uint32_t>& ids, GetLine get,
                        bool lower) {
    Envelope env;
    std::vector<uint32_t> srt = ids;
    // lower envelope: sort by slope desc (steepest first on the left);
    // upper: slope asc; ties keep the better intercept only
    std::sort(srt.begin(), srt.end(), [&](uint32_t a, uint32_t b) {
      int c = get(a).a.cmp(get(b).a);
      if (c) return lower ? c > 0 : c < 0;
      int d = get(a).b.cmp(get(b).b);
      if (d) return d < 0;
      return a < b;
    });
    // same-slope group: keep only the best intercept
    std::vector<uint32_t> cand2;
    for (size_t i = 0; i < srt.size();) {
      size_t j = i;
      while (j < srt.size() && get(srt[j]).a == get(srt[i]).a) ++j;
      uint32_t best = srt[i];
      for (size_t t = i; t < j; ++t)
        if (lower ? get(srt[t]).b < get(best).b : get(srt[t]).b > get(best).b)
          best = srt[t];
      cand2.push_back(best);
      i = j;
    }
    // incremental hull
    for (uint32_t id : cand2) {
      while (true) {
        if (env.lines.empty()) break;
        if (env.lines.size() == 1) {
          Rational x = *meet_x(get(env.lines.back()), get(id));
          env.breaks.push_back(x);
          break;
        }
        Rational x = *meet_x(get(env.lines.back()), get(id));
        if (x > env.breaks.back()) {
          env.breaks.push_back(x);
          break;
        }
        env.lines.pop_back();
        env.breaks.pop_back();
      }
      env.lines.push_back(id);
    }
    return env;
  }

  template <typename GetLine>
  std::pair<Rational, uint32_t> eval(const Rational& x, GetLine get) const {
    size_t k =
        std::upper_bound(breaks.begin(), breaks.end(), x) - breaks.begin();
    return {get(lines[k]).eval(x), lines[k]};
  }
};

void slab_rec(SlabCtx& ctx, std::vector<uint32_t> ids,
              std::optional<Rational> xl, std::optional<Rational> xr);

// counting legs for one slab with the given longs and shorts
void count_slab(SlabCtx& ctx, const std::vector<uint32_t>& longs,
                const std::vector<uint32_t>& shorts,
                const std::optional<Rational>& xl,
                const std::optional<Rational>& xr) {
  if (longs.empty() || ctx.components) return;
  const auto& segs = *ctx.segs;
  const auto& supp = *ctx.supp;
  assert(xl && xr);
  std::vector<Line> llines;
  llines.reserve(longs.size());
  for (uint32_t i : longs) llines.push_back(supp[i].line);
  LongCrossCounter cc(llines, ctx.rng.next());

  // long-long: crossings with abscissa in [xl, xr); every pair counted twice
  uint32_t t_ll = cc.new_ticket();
  for (uint32_t i : longs) {
    const Line& tau = supp[i].line;
    cc.add_cross_count(t_ll, +1, tau, *xr, 0);
    cc.add_cross_count(t_ll, -1, tau, *xl, 0);
  }

  // long-short, non-vertical shorts: crossing abscissa in
  // [max(xl, t.left), ...] clipped; right end closed at the segment's
  // endpoint, open at the slab wall
  std::vector<uint32_t> vshorts;
  uint32_t t_ls = cc.new_ticket();
  for (uint32_t i : shorts) {
    if (supp[i].vertical) {
      vshorts.push_back(i);
      continue;
    }
    const Segment& s = segs[i];
    const Line& tau = supp[i].line;
    const Rational& lo = s.p.x > *xl ? s.p.x : *xl;  // closed
    if (s.q.x < *xr) {
      cc.add_cross_count(t_ls, +1, tau, s.q.x, 0);
      cc.add_cross_count(t_ls, +1, tau, s.q.x, 1);  // inclusive right end
    } else {
      cc.add_cross_count(t_ls, +1, tau, *xr, 0);
    }
    cc.add_cross_count(t_ls, -1, tau, lo, 0);
  }
  cc.run();
  assert(cc.result(t_ll) % 2 == 0);
  ctx.pairs += cc.result(t_ll) / 2;
  ctx.pairs += cc.result(t_ls);

  // vertical shorts: longs passing through the wall segment
  if (!vshorts.empty()) {
    std::vector<Point> qpts;
    for (uint32_t i : vshorts) {
      const Segment& s = segs[i];
      qpts.push_back(Point(s.p.x, s.q.y));  // upper end
      qpts.push_back(Point(s.p.x, s.p.y));  // lower end
    }
    IndividualCounts ic = individual_counts(qpts, llines, ctx.rng.next());
    for (size_t k = 0; k < vshorts.size(); ++k) {
      int64_t le_hi = ic.below_per_point[2 * k] + ic.on_per_point[2 * k];
      int64_t lt_lo = ic.below_per_point[2 * k + 1];
      ctx.pairs += le_hi - lt_lo;
    }
  }
}

// component legs for one slab
void components_slab(SlabCtx& ctx, const std::vector<uint32_t>& longs,
                     const std::vector<uint32_t>& shorts,
                     const std::optional<Rational>& xl,
                     const std::optional<Rational>& xr) {
  if (longs.empty() || !ctx.components) return;
  const auto& segs = *ctx.segs;
  const auto& supp = *ctx.supp;
  assert(xl && xr);
  auto& edges = *ctx.edges;

  std::vector<uint32_t> comp = long_components(ctx, longs, *xl, *xr, edges);
  // group locals per component
  std::vector<uint32_t> roots;
  for (uint32_t c : comp) roots.push_back(c);
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  auto comp_index = [&](uint32_t local) {
    return uint32_t(std::lower_bound(roots.begin(), roots.end(), comp[local]) -
                    roots.begin());
  };
  size_t nc = roots.size();
  std::vector<std::vector<uint32_t>> members(nc);  // local long indices
  for (uint32_t l = 0; l < longs.size(); ++l)
    members[comp_index(l)].push_back(l);

  auto getline = [&](uint32_t local) -> const Line& {
    return supp[longs[local]].line;
  };
  std::vector<Envelope> lower(nc), upper(nc);
  for (size_t c = 0; c < nc; ++c) {
    lower[c] = Envelope::build(members[c], getline, true);
    upper[c] = Envelope::build(members[c], getline, false);
  }
  // vertical order of the disjoint bands at the slab midpoint
  Rational mid = (*xl + *xr) * Rational(ExactScalar(1), ExactScalar(2));
  std::vector<uint32_t> band(nc);
  std::iota(band.begin(), band.end(), 0u);
  std::sort(band.begin(), band.end(), [&](uint32_t a, uint32_t b) {
    return lower[a].eval(mid, getline).first <
           lower[b].eval(mid, getline).first;
  });

  // position of a point among the bands: (2k = gap below band k,
  // 2k+1 = inside band k); on_line = witness long when on an envelope
  auto position = [&](const Point& p, uint32_t& on_long) -> size_t {
    on_long = kNone32;
    size_t lo = 0, hi = nc;  // band rank search
    while (lo < hi) {
      size_t midk = (lo + hi) / 2;
      uint32_t c = band[midk];
      auto lv = lower[c].eval(p.x, getline);
      if (p.y < lv.first) {
        hi = midk;
        continue;
      }
      auto uv = upper[c].eval(p.x, getline);
      if (uv.first < p.y) {
        lo = midk + 1;
        continue;
      }
      if (p.y == lv.first) on_long = longs[lv.second];
      else if (p.y == uv.first) on_long = longs[uv.second];
      return 2 * midk + 1;
    }
    return 2 * lo;
  };

  // clip a short to the closed slab
  auto clip_point = [&](uint32_t i, bool left) {
    const Segment& s = segs[i];
    if (supp[i].vertical) return left ? s.p : s.q;
    const Rational& x = left ? (s.p.x > *xl ? s.p.x : *xl)
                             : (s.q.x < *xr ? s.q.x : *xr);
    return Point(x, supp[i].line.eval(x));
  };

  std::vector<uint8_t> linked(nc, 0);  // band k linked to band k+1
  for (uint32_t i : shorts) {
    const Segment& s = segs[i];
    Point e1 = clip_point(i, true), e2 = clip_point(i, false);
    uint32_t on1, on2;
    size_t p1 = position(e1, on1), p2 = position(e2, on2);
    if (on1 != kNone32) edges.push_back({i, on1});
    if (on2 != kNone32) edges.push_back({i, on2});
    if (p1 > p2) std::swap(p1, p2);
    if (p1 == p2) {
      if (p1 % 2 == 1 && on1 == kNone32 && on2 == kNone32) {
        // both endpoints strictly inside one band: find-one by halving
        uint32_t c = band[p1 / 2];
        const auto& mem = members[c];
        std::function<int64_t(size_t, size_t)> cnt = [&](size_t lo,
                                                         size_t hi) {
          int64_t t = 0;
          for (size_t k = lo; k < hi; ++k)
            t += segments_intersect(s, segs[longs[mem[k]]]);
          return t;
        };
        if (cnt(0, mem.size()) > 0) {
          size_t lo = 0, hi = mem.size();
          while (hi - lo > 1) {
            size_t m2 = (lo + hi) / 2;
            if (cnt(lo, m2) > 0)
              hi = m2;
            else
              lo = m2;
          }
          edges.push_back({i, longs[mem[lo]]});
        }
      }
      continue;
    }
    // p1 != p2: bands k with p1 <= 2k+1 <= p2 are crossed for sure
    // (endpoint bands included when the endpoint lies inside)
    size_t k1 = p1 / 2;
    if (p2 == 0) continue;
    size_t k2 = (p2 - 1) / 2;
    if (2 * k2 + 1 > p2) {
      if (k2 == 0) continue;
      --k2;
    }
    if (k1 > k2) continue;
    edges.push_back({i, longs[members[band[k1]][0]]});
    for (size_t k = k1; k < k2; ++k) {
      if (!linked[k]) {
        linked[k] = 1;
        edges.push_back(
            {longs[members[band[k]][0]], longs[members[band[k + 1]][0]]});
      }
    }
  }
}

void leaf_wall_pairs(SlabCtx& ctx, const std::vector<uint32_t>& shorts,
                     const std::optional<Rational>& xl) {
  // present non-long objects at a leaf touch only the left wall
  if (!xl || shorts.empty()) return;
  const auto& segs = *ctx.segs;
  const auto& supp = *ctx.supp;
  struct WallPt {
    Rational y;
    uint32_t id;
  };
  std::vector<WallPt> pt;
  std::vector<uint32_t> vert;
  for (uint32_t i : shorts) {
    if (supp[i].vertical)
      vert.push_back(i);
    else
      pt.push_back({segs[i].q.y, i});
  }
  std::sort(pt.begin(), pt.end(), [](const WallPt& a, const WallPt& b) {
    int c = a.y.cmp(b.y);
    return c ? c < 0 : a.id < b.id;
  });
  // equal wall points intersect (same point), minus collinear pairs which
  // were pre-counted globally
  for (size_t g = 0; g < pt.size();) {
    size_t e = g;
    while (e < pt.size() && pt[e].y == pt[g].y) ++e;
    if (e - g >= 2) {
      int64_t run = int64_t(e - g);
      if (!ctx.components) {
        int64_t same = 0;
        std::vector<uint32_t> grp;
        for (size_t k = g; k < e; ++k) grp.push_back(pt[k].id);
        std::sort(grp.begin(), grp.end(), [&](uint32_t a, uint32_t b) {
          int c = cmp_supp(supp[a], supp[b]);
          return c ? c < 0 : a < b;
        });
        for (size_t a = 0; a < grp.size();) {
          size_t b = a;
          while (b < grp.size() && cmp_supp(supp[grp[a]], supp[grp[b]]) == 0)
            ++b;
          same += int64_t(b - a) * int64_t(b - a - 1) / 2;
          a = b;
        }
        ctx.pairs += run * (run - 1) / 2 - same;
      } else {
        for (size_t k = g + 1; k < e; ++k)
          ctx.edges->push_back({pt[g].id, pt[k].id});
      }
    }
    g = e;
  }
  // vertical wall segments versus wall points
  for (uint32_t v : vert) {
    const Segment& sv = segs[v];
    auto lo = std::lower_bound(pt.begin(), pt.end(), sv.p.y,
                               [](const WallPt& w, const Rational& y) {
                                 return w.y < y;
                               });
    auto hi = std::upper_bound(pt.begin(), pt.end(), sv.q.y,
                               [](const Rational& y, const WallPt& w) {
                                 return y < w.y;
                               });
    if (!ctx.components) {
      ctx.pairs += hi - lo;
    } else {
      for (auto it = lo; it != hi; ++it) ctx.edges->push_back({v, it->id});
    }
  }
}

void slab_rec(SlabCtx& ctx, std::vector<uint32_t> ids,
              std::optional<Rational> xl, std::optional<Rational> xr) {
  const auto& segs = *ctx.segs;
  std::vector<uint32_t> longs, shorts;
  for (uint32_t i : ids) (spans(segs[i], xl, xr) ? longs : shorts).push_back(i);
  ids.clear();
  ids.shrink_to_fit();

  count_slab(ctx, longs, shorts, xl, xr);
  components_slab(ctx, longs, shorts, xl, xr);

  // interior endpoint abscissae of the shorts
  std::vector<const Rational*> interior;
  for (uint32_t i : shorts) {
    for (const Rational* x : {&segs[i].p.x, &segs[i].q.x}) {
      if (xl && !(*x > *xl)) continue;
      if (xr && !(*x < *xr)) continue;
      interior.push_back(x);
    }
  }
  if (interior.empty()) {
    leaf_wall_pairs(ctx, shorts, xl);
    return;
  }
  std::nth_element(interior.begin(), interior.begin() + interior.size() / 2,
                   interior.end(),
                   [](const Rational* a, const Rational* b) { return *a < *b; });
  Rational cut = *interior[interior.size() / 2];

  std::vector<uint32_t> left, right;
  for (uint32_t i : shorts) {
    if (!(segs[i].p.x >= cut)) left.push_back(i);   // proj meets [xl, cut)
    if (!(segs[i].q.x < cut)) right.push_back(i);   // proj meets [cut, xr)
  }
  shorts.clear();
  shorts.shrink_to_fit();
  slab_rec(ctx, std::move(left), xl, cut);
  slab_rec(ctx, std::move(right), cut, std::move(xr));
}

}  // namespace

int64_t seg_intersections(const std::vector<Segment>& segs, uint64_t seed) {
  std::vector<SuppLine> supp;
  supp.reserve(segs.size());
  for (const auto& s : segs) supp.push_back(supporting(s));
  SlabCtx ctx{&segs, &supp, Rng(seed)};
  ctx.pairs = collinear_groups(segs, supp, nullptr);
  std::vector<uint32_t> ids(segs.size());
  std::iota(ids.begin(), ids.end(), 0u);
  slab_rec(ctx, std::move(ids), std::nullopt, std::nullopt);
  return ctx.pairs;
}

std::vector<uint32_t> seg_components_brute(const std::vector<Segment>& segs) {
  size_t n = segs.size();
  std::vector<uint32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0u);
  std::function<uint32_t(uint32_t)> find = [&](uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (segments_intersect(segs[i], segs[j]))
        parent[find(uint32_t(i))] = find(uint32_t(j));
  std::vector<uint32_t> label(n, 0);
  std::vector<uint32_t> mn(n, kNone32);
  for (size_t i = 0; i < n; ++i)
    mn[find(uint32_t(i))] = std::min(mn[find(uint32_t(i))], uint32_t(i));
  for (size_t i = 0; i < n; ++i) label[i] = mn[find(uint32_t(i))];
  return label;
}

std::vector<uint32_t> seg_components(const std::vector<Segment>& segs,
                                     uint64_t seed, ComponentGraph* graph) {
  size_t n = segs.size();
  std::vector<SuppLine> supp;
  supp.reserve(n);
  for (const auto& s : segs) supp.push_back(supporting(s));
  std::vector<std::pair<uint32_t, uint32_t>> edges;
  collinear_groups(segs, supp, &edges);
  SlabCtx ctx{&segs, &supp, Rng(seed)};
  ctx.components = true;
  ctx.edges = &edges;
  std::vector<uint32_t> ids(n);
  std::iota(ids.begin(), ids.end(), 0u);
  slab_rec(ctx, std::move(ids), std::nullopt, std::nullopt);

  std::vector<uint32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0u);
  std::function<uint32_t(uint32_t)> find = [&](uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  // edges witness connectivity: either a genuine intersecting pair or a
  // consecutive-component shortcut through a crossing short segment
  for (auto [a, b] : edges) parent[find(a)] = find(b);
  std::vector<uint32_t> label(n), mn(n, kNone32);
  for (size_t i = 0; i < n; ++i)
    mn[find(uint32_t(i))] = std::min(mn[find(uint32_t(i))], uint32_t(i));
  for (size_t i = 0; i < n; ++i) label[i] = mn[find(uint32_t(i))];
  if (graph) graph->edges = std::move(edges);
  return label;
}

}  // namespace hop
