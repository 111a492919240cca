#include "hop/arrangement.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>

namespace hop {

namespace {

struct Dir {
  Rational dx, dy;
};

// atan2-style order on directions: [0, pi) before [pi, 2pi)
int cmp_dir(const Dir& u, const Dir& v) {
  auto half = [](const Dir& d) {
    int sy = d.dy.sign();
    if (sy > 0) return 0;
    if (sy < 0) return 1;
    return d.dx.sign() > 0 ? 0 : 1;
  };
  int hu = half(u), hv = half(v);
  if (hu != hv) return hu < hv ? -1 : 1;
  // same half-plane: cross product decides
  Rational cross = u.dx * v.dy - u.dy * v.dx;
  return -cross.sign();  // cross > 0 -> u strictly before v (ccw)
}

int64_t checked_add(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("weight accumulation overflow");
  return r;
}

int64_t checked_mul(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("weight accumulation overflow");
  return r;
}

}  // namespace

Arrangement build_arrangement(const std::vector<Line>& input) {
  Arrangement arr;
  // deduplicate with multiplicity
  std::vector<uint32_t> idx(input.size());
  for (uint32_t i = 0; i < input.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](uint32_t a, uint32_t b) {
    return input[a].cmp(input[b]) < 0;
  });
  arr.in2dist_.resize(input.size());
  for (size_t k = 0; k < idx.size(); ++k) {
    if (k == 0 || input[idx[k]].cmp(input[idx[k - 1]]) != 0) {
      arr.lines_.push_back(input[idx[k]]);
      arr.mult_.push_back(0);
    }
    arr.in2dist_[idx[k]] = uint32_t(arr.lines_.size() - 1);
    ++arr.mult_.back();
  }
  const std::vector<Line>& L = arr.lines_;
  const uint32_t n = uint32_t(L.size());

  // interior vertices: pairwise meets grouped by point
  struct Hit {
    Point pt;
    uint32_t i, j;
  };
  std::vector<Hit> hits;
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = i + 1; j < n; ++j) {
      auto m = meet(L[i], L[j]);
      if (m) hits.push_back({std::move(*m), i, j});
    }
  std::sort(hits.begin(), hits.end(),
            [](const Hit& a, const Hit& b) { return a.pt.cmp(b.pt) < 0; });

  std::vector<std::vector<uint32_t>> vertex_lines;  // per vertex: lines through
  for (size_t k = 0; k < hits.size();) {
    size_t e = k;
    while (e < hits.size() && hits[e].pt == hits[k].pt) ++e;
    Arrangement::Vertex v;
    v.pt = hits[k].pt;
    arr.verts_.push_back(std::move(v));
    std::vector<uint32_t> through;
    for (size_t t = k; t < e; ++t) {
      through.push_back(hits[t].i);
      through.push_back(hits[t].j);
    }
    std::sort(through.begin(), through.end());
    through.erase(std::unique(through.begin(), through.end()), through.end());
    vertex_lines.push_back(std::move(through));
    k = e;
  }
  arr.n_true_verts_ = arr.verts_.size();

  // frame beyond all vertices and all wall crossings
  Rational X(1);
  for (const auto& v : arr.verts_) {
    Rational ax = v.pt.x.sign() < 0 ? -v.pt.x : v.pt.x;
    if (ax + Rational(1) > X) X = ax + Rational(1);
  }
  Rational Y(1);
  for (const auto& v : arr.verts_) {
    Rational ay = v.pt.y.sign() < 0 ? -v.pt.y : v.pt.y;
    if (ay + Rational(1) > Y) Y = ay + Rational(1);
  }
  for (const auto& l : L) {
    for (const Rational& xx : {X, -X}) {
      Rational val = l.eval(xx);
      if (val.sign() < 0) val = -val;
      if (val + Rational(1) > Y) Y = val + Rational(1);
    }
  }
  arr.frame_x_ = X;
  arr.frame_y_ = Y;

  // wall and corner vertices
  std::vector<uint32_t> left_wall(n), right_wall(n);
  for (uint32_t i = 0; i < n; ++i) {
    left_wall[i] = uint32_t(arr.verts_.size());
    arr.verts_.push_back({Point(-X, L[i].eval(-X)), true});
    right_wall[i] = uint32_t(arr.verts_.size());
    arr.verts_.push_back({Point(X, L[i].eval(X)), true});
  }
  uint32_t c_bl = uint32_t(arr.verts_.size());
  arr.verts_.push_back({Point(-X, -Y), true});
  uint32_t c_br = uint32_t(arr.verts_.size());
  arr.verts_.push_back({Point(X, -Y), true});
  uint32_t c_tr = uint32_t(arr.verts_.size());
  arr.verts_.push_back({Point(X, Y), true});
  uint32_t c_tl = uint32_t(arr.verts_.size());
  arr.verts_.push_back({Point(-X, Y), true});

  // undirected edges: (u, v, line id or kNone32 for frame)
  struct E {
    uint32_t u, v, line;
  };
  std::vector<E> edges;

  // per line: wall endpoint, interior vertices sorted by x, wall endpoint
  std::vector<std::vector<uint32_t>> on_line(n);
  for (uint32_t vid = 0; vid < arr.n_true_verts_; ++vid)
    for (uint32_t l : vertex_lines[vid]) on_line[l].push_back(vid);
  for (uint32_t i = 0; i < n; ++i) {
    auto& lst = on_line[i];
    std::sort(lst.begin(), lst.end(), [&](uint32_t a, uint32_t b) {
      return arr.verts_[a].pt.x < arr.verts_[b].pt.x;
    });
    uint32_t prev = left_wall[i];
    for (uint32_t vid : lst) {
      edges.push_back({prev, vid, i});
      prev = vid;
    }
    edges.push_back({prev, right_wall[i], i});
  }

  // frame cycle: bottom, right wall (y asc), top, left wall (y desc)
  {
    std::vector<uint32_t> rw = right_wall, lw = left_wall;
    auto by_y = [&](uint32_t a, uint32_t b) {
      return arr.verts_[a].pt.y < arr.verts_[b].pt.y;
    };
    std::sort(rw.begin(), rw.end(), by_y);
    std::sort(lw.begin(), lw.end(), by_y);
    edges.push_back({c_bl, c_br, kNone32});
    uint32_t prev = c_br;
    for (uint32_t vid : rw) {
      edges.push_back({prev, vid, kNone32});
      prev = vid;
    }
    edges.push_back({prev, c_tr, kNone32});
    edges.push_back({c_tr, c_tl, kNone32});
    prev = c_tl;
    for (size_t k = lw.size(); k-- > 0;) {
      edges.push_back({prev, lw[k], kNone32});
      prev = lw[k];
    }
    edges.push_back({prev, c_bl, kNone32});
  }

  // half edges
  arr.hedges_.resize(2 * edges.size());
  std::vector<std::vector<uint32_t>> out(arr.verts_.size());
  for (uint32_t e = 0; e < edges.size(); ++e) {
    uint32_t h1 = 2 * e, h2 = 2 * e + 1;
    arr.hedges_[h1] = {edges[e].u, h2, kNone32, kNone32, edges[e].line};
    arr.hedges_[h2] = {edges[e].v, h1, kNone32, kNone32, edges[e].line};
    out[edges[e].u].push_back(h1);
    out[edges[e].v].push_back(h2);
  }

  // rotations: sort outgoing half-edges ccw; next(h) = cw-neighbor of twin(h)
  auto h_dir = [&](uint32_t h) {
    const auto& he = arr.hedges_[h];
    const Point& a = arr.verts_[he.origin].pt;
    const Point& b = arr.verts_[arr.hedges_[he.twin].origin].pt;
    return Dir{b.x - a.x, b.y - a.y};
  };
  for (uint32_t v = 0; v < arr.verts_.size(); ++v) {
    auto& ring = out[v];
    std::sort(ring.begin(), ring.end(), [&](uint32_t a, uint32_t b) {
      return cmp_dir(h_dir(a), h_dir(b)) < 0;
    });
    // temporary: store ring position in `next` of the twin later; build map
  }
  // next pointers
  for (uint32_t v = 0; v < arr.verts_.size(); ++v) {
    auto& ring = out[v];
    for (size_t k = 0; k < ring.size(); ++k) {
      uint32_t h_in = arr.hedges_[ring[k]].twin;  // arrives at v
      uint32_t cw_prev = ring[(k + ring.size() - 1) % ring.size()];
      arr.hedges_[h_in].next = cw_prev;
    }
  }

  // face orbits
  for (uint32_t h = 0; h < arr.hedges_.size(); ++h) {
    if (arr.hedges_[h].face != kNone32) continue;
    uint32_t f = uint32_t(arr.faces_.size());
    arr.faces_.push_back({});
    arr.faces_.back().any_edge = h;
    uint32_t cur = h;
    do {
      arr.hedges_[cur].face = f;
      arr.faces_.back().vertex_ids.push_back(arr.hedges_[cur].origin);
      cur = arr.hedges_[cur].next;
    } while (cur != h);
  }

  // the outer orbit walks the frame clockwise; drop it from the face list by
  // swapping it to the back and recording its edge count
  {
    // locate the bottom frame edge directed bl -> br: its twin borders outer
    uint32_t outer = kNone32;
    for (uint32_t h = 0; h < arr.hedges_.size(); ++h) {
      const auto& he = arr.hedges_[h];
      if (he.line != kNone32) continue;
      const Point& a = arr.verts_[he.origin].pt;
      const Point& b = arr.verts_[arr.hedges_[he.twin].origin].pt;
      if (a.y == -Y && b.y == -Y && a.x < b.x) {
        outer = arr.hedges_[he.twin].face;
        break;
      }
    }
    assert(outer != kNone32);
    uint32_t last = uint32_t(arr.faces_.size() - 1);
    if (outer != last) {
      std::swap(arr.faces_[outer], arr.faces_[last]);
      for (auto& he : arr.hedges_) {
        if (he.face == outer)
          he.face = last;
        else if (he.face == last)
          he.face = outer;
      }
    }
    arr.n_outer_edges_ = arr.faces_.back().vertex_ids.size();
    arr.faces_.pop_back();
  }

  arr.compute_below();
  return arr;
}

void Arrangement::compute_below() {
  // BFS over face adjacency; crossing a line edge changes the count by the
  // line's multiplicity.  Start from the face over the bottom frame edge.
  std::vector<int8_t> seen(faces_.size(), 0);
  std::vector<uint32_t> stack;
  uint32_t start = kNone32;
  for (uint32_t h = 0; h < hedges_.size(); ++h) {
    const auto& he = hedges_[h];
    if (he.line != kNone32 || he.face == kNone32 || he.face >= faces_.size())
      continue;
    const Point& a = verts_[he.origin].pt;
    const Point& b = verts_[hedges_[he.twin].origin].pt;
    if (a.y == -frame_y_ && b.y == -frame_y_) {
      start = he.face;
      break;
    }
  }
  if (start == kNone32) {
    assert(faces_.size() == 1);
    start = 0;
  }
  faces_[start].below_mult = 0;
  seen[start] = 1;
  stack.push_back(start);
  while (!stack.empty()) {
    uint32_t f = stack.back();
    stack.pop_back();
    uint32_t h0 = faces_[f].any_edge, h = h0;
    do {
      const auto& he = hedges_[h];
      uint32_t g = hedges_[he.twin].face;
      if (he.line != kNone32 && g < faces_.size() && !seen[g]) {
        // f lies above the edge's line iff the edge runs left-to-right
        const Point& a = verts_[he.origin].pt;
        const Point& b = verts_[hedges_[he.twin].origin].pt;
        bool f_above = a.x < b.x;
        int64_t m = mult_[he.line];
        faces_[g].below_mult =
            faces_[f].below_mult + (f_above ? -m : m);
        seen[g] = 1;
        stack.push_back(g);
      }
      h = he.next;
    } while (h != h0);
  }
}

long long Arrangement::euler_characteristic() const {
  long long V = (long long)verts_.size();
  long long E = (long long)hedges_.size() / 2;
  long long F = (long long)faces_.size() + 1;  // plus outer
  return V - E + F;
}

Point Arrangement::face_sample(uint32_t face) const {
  const auto& ids = faces_[face].vertex_ids;
  Rational sx(0), sy(0);
  for (uint32_t v : ids) {
    sx += verts_[v].pt.x;
    sy += verts_[v].pt.y;
  }
  Rational k((long long)ids.size());
  return Point(sx / k, sy / k);
}

std::vector<int64_t> annotate_below(const Arrangement& arr) {
  std::vector<int64_t> out;
  out.reserve(arr.faces().size());
  for (const auto& f : arr.faces()) out.push_back(f.below_mult);
  return out;
}

VertDecomp build_vd(const Arrangement& arr) {
  VertDecomp vd;
  vd.face_vertices.resize(arr.faces().size());
  const Rational& X = arr.frame_x();
  for (uint32_t f = 0; f < arr.faces().size(); ++f) {
    // orbit edges, split into bottom chain (dx > 0) and top chain (dx < 0)
    struct Seg {
      Rational x1, x2;  // x1 < x2
      uint32_t line;    // kNone32 for horizontal frame edge
    };
    std::vector<Seg> bot, top;
    uint32_t h0 = arr.faces()[f].any_edge, h = h0;
    std::vector<Point> vpts;
    do {
      const auto& he = arr.halfedges()[h];
      const Point& a = arr.vertices()[he.origin].pt;
      const Point& b =
          arr.vertices()[arr.halfedges()[he.twin].origin].pt;
      vpts.push_back(a);
      int c = a.x.cmp(b.x);
      if (c < 0)
        bot.push_back({a.x, b.x, he.line});
      else if (c > 0)
        top.push_back({b.x, a.x, he.line});
      h = he.next;
    } while (h != h0);
    std::sort(bot.begin(), bot.end(),
              [](const Seg& s, const Seg& t) { return s.x1 < t.x1; });
    std::sort(top.begin(), top.end(),
              [](const Seg& s, const Seg& t) { return s.x1 < t.x1; });
    std::sort(vpts.begin(), vpts.end(),
              [](const Point& a, const Point& b) { return a.cmp(b) < 0; });
    vd.face_vertices[f] = vpts;

    // breakpoints: union of chain endpoints
    std::vector<Rational> xs;
    for (const auto& s : bot) {
      xs.push_back(s.x1);
      xs.push_back(s.x2);
    }
    for (const auto& s : top) {
      xs.push_back(s.x1);
      xs.push_back(s.x2);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    size_t bi = 0, ti = 0;
    for (size_t k = 0; k + 1 < xs.size(); ++k) {
      const Rational& x1 = xs[k];
      const Rational& x2 = xs[k + 1];
      while (bi < bot.size() && !(bot[bi].x2 > x1)) ++bi;
      while (ti < top.size() && !(top[ti].x2 > x1)) ++ti;
      assert(bi < bot.size() && ti < top.size());
      Trapezoid t;
      if (bot[bi].line != kNone32) t.bottom = arr.distinct_lines()[bot[bi].line];
      if (top[ti].line != kNone32) t.top = arr.distinct_lines()[top[ti].line];
      if (x1 != -X) t.xl = x1;
      if (x2 != X) t.xr = x2;
      vd.traps.push_back(std::move(t));
      vd.trap_face.push_back(f);
    }
  }
  return vd;
}

VertDecomp build_vd(const std::vector<Line>& lines) {
  return build_vd(build_arrangement(lines));
}

FaceWeightSums face_weight_sums(const Arrangement& arr,
                                const std::vector<int64_t>& line_weights,
                                const std::vector<int64_t>& face_weights) {
  const auto& faces = arr.faces();
  const auto& L = arr.distinct_lines();
  if (face_weights.size() != faces.size())
    throw std::invalid_argument("face_weight_sums: face weight count");
  if (line_weights.size() != arr.input_to_distinct().size())
    throw std::invalid_argument("face_weight_sums: line weight count");

  // aggregate input weights onto distinct lines
  std::vector<int64_t> wline(L.size(), 0);
  for (size_t i = 0; i < line_weights.size(); ++i) {
    uint32_t d = arr.input_to_distinct()[i];
    wline[d] = checked_add(wline[d], line_weights[i]);
  }

  FaceWeightSums out;

  // (a) per face: BFS identical to below counts but with weights
  out.per_face.assign(faces.size(), 0);
  {
    std::vector<int8_t> seen(faces.size(), 0);
    uint32_t start = kNone32;
    for (uint32_t h = 0; h < arr.halfedges().size(); ++h) {
      const auto& he = arr.halfedges()[h];
      if (he.line != kNone32 || he.face >= faces.size()) continue;
      const Point& a = arr.vertices()[he.origin].pt;
      const Point& b =
          arr.vertices()[arr.halfedges()[he.twin].origin].pt;
      if (a.y == -arr.frame_y() && b.y == -arr.frame_y()) {
        start = he.face;
        break;
      }
    }
    if (start == kNone32) start = 0;
    std::vector<uint32_t> stack{start};
    seen[start] = 1;
    out.per_face[start] = 0;
    while (!stack.empty()) {
      uint32_t f = stack.back();
      stack.pop_back();
      uint32_t h0 = faces[f].any_edge, h = h0;
      do {
        const auto& he = arr.halfedges()[h];
        uint32_t g = arr.halfedges()[he.twin].face;
        if (he.line != kNone32 && g < faces.size() && !seen[g]) {
          const Point& a = arr.vertices()[he.origin].pt;
          const Point& b =
              arr.vertices()[arr.halfedges()[he.twin].origin].pt;
          bool f_above = a.x < b.x;
          out.per_face[g] = checked_add(
              out.per_face[f], f_above ? -wline[he.line] : wline[he.line]);
          seen[g] = 1;
          stack.push_back(g);
        }
        h = he.next;
      } while (h != h0);
    }
  }

  // (b) per line: map each face's weight to its highest vertex.  The lex
  // (y, x) maximum of a face can lie exactly on a query line h even in
  // general position (a leftward wedge with apex on h), so each mapped
  // weight carries an interior direction tag that resolves on-h vertices:
  // f lies strictly above h iff its highest vertex does, or the vertex is
  // on h and the tag direction (dx, dy) satisfies dy > h.a * dx.
  struct Tag {
    Rational dx, dy;
    int64_t w;
  };
  std::vector<int64_t> vertex_weight(arr.vertices().size(), 0);
  std::vector<std::vector<Tag>> vertex_tags(arr.vertices().size());
  for (uint32_t f = 0; f < faces.size(); ++f) {
    const auto& ids = faces[f].vertex_ids;
    size_t best = 0;
    for (size_t k = 1; k < ids.size(); ++k) {
      const Point& pv = arr.vertices()[ids[k]].pt;
      const Point& pb = arr.vertices()[ids[best]].pt;
      int c = pv.y.cmp(pb.y);
      if (c > 0 || (c == 0 && pv.x > pb.x)) best = k;
    }
    uint32_t v = ids[best];
    uint32_t prev = ids[(best + ids.size() - 1) % ids.size()];
    uint32_t next = ids[(best + 1) % ids.size()];
    // the lex-highest vertex of a convex face is a strict corner, so the sum
    // of the two boundary directions points strictly into the face
    const Point& pv = arr.vertices()[v].pt;
    Rational dx = (arr.vertices()[prev].pt.x - pv.x) +
                  (arr.vertices()[next].pt.x - pv.x);
    Rational dy = (arr.vertices()[prev].pt.y - pv.y) +
                  (arr.vertices()[next].pt.y - pv.y);
    vertex_weight[v] = checked_add(vertex_weight[v], face_weights[f]);
    vertex_tags[v].push_back(Tag{std::move(dx), std::move(dy),
                                 face_weights[f]});
  }
  // assignment: vertex -> one incident line (frame corners have none)
  std::vector<std::vector<uint32_t>> assigned(L.size());
  std::vector<uint32_t> corners;
  {
    std::vector<uint32_t> vline(arr.vertices().size(), kNone32);
    for (const auto& he : arr.halfedges())
      if (he.line != kNone32) vline[he.origin] = he.line;
    for (uint32_t v = 0; v < arr.vertices().size(); ++v) {
      if (vertex_tags[v].empty()) continue;
      if (vline[v] == kNone32)
        corners.push_back(v);
      else
        assigned[vline[v]].push_back(v);
    }
  }
  struct LineSums {
    std::vector<Rational> xs;
    std::vector<uint32_t> vid;
    std::vector<int64_t> prefix;
  };
  std::vector<LineSums> sums(L.size());
  for (uint32_t l = 0; l < L.size(); ++l) {
    auto& a = assigned[l];
    std::sort(a.begin(), a.end(), [&](uint32_t u, uint32_t v) {
      return arr.vertices()[u].pt.x < arr.vertices()[v].pt.x;
    });
    sums[l].prefix.push_back(0);
    for (uint32_t v : a) {
      sums[l].xs.push_back(arr.vertices()[v].pt.x);
      sums[l].vid.push_back(v);
      sums[l].prefix.push_back(
          checked_add(sums[l].prefix.back(), vertex_weight[v]));
    }
  }

  auto tag_weight_above = [&](uint32_t v, const Line& h) {
    int64_t w = 0;
    for (const Tag& t : vertex_tags[v])
      if (t.dy > h.a * t.dx) w = checked_add(w, t.w);
    return w;
  };

  out.per_line.assign(line_weights.size(), 0);
  std::vector<int64_t> per_distinct(L.size(), 0);
  for (uint32_t h = 0; h < L.size(); ++h) {
    int64_t total = 0;
    for (uint32_t l = 0; l < L.size(); ++l) {
      if (sums[l].xs.empty()) continue;
      int64_t all = sums[l].prefix.back();
      if (L[l].a == L[h].a) {
        if (l == h) {
          // every assigned vertex lies on h: resolve by tags
          for (uint32_t v : sums[l].vid)
            total = checked_add(total, tag_weight_above(v, L[h]));
        } else if (L[l].b > L[h].b) {
          total = checked_add(total, all);
        }
        continue;
      }
      Rational x0 = *meet_x(L[l], L[h]);
      const auto& xs = sums[l].xs;
      auto less = [](const Rational& a, const Rational& b) { return a < b; };
      size_t lo =
          std::lower_bound(xs.begin(), xs.end(), x0, less) - xs.begin();
      size_t hi =
          std::upper_bound(xs.begin(), xs.end(), x0, less) - xs.begin();
      // l lies above h for x > x0 iff slope(l) > slope(h)
      if (L[l].a > L[h].a)
        total = checked_add(total, all - sums[l].prefix[hi]);
      else
        total = checked_add(total, sums[l].prefix[lo]);
      // vertices exactly at the crossing sit on h: tags decide
      for (size_t k = lo; k < hi; ++k)
        total = checked_add(total, tag_weight_above(sums[l].vid[k], L[h]));
    }
    for (uint32_t v : corners) {
      if (side(arr.vertices()[v].pt, L[h]) == SideSign::Above)
        total = checked_add(total, vertex_weight[v]);
    }
    per_distinct[h] = total;
  }
  for (size_t i = 0; i < line_weights.size(); ++i)
    out.per_line[i] = per_distinct[arr.input_to_distinct()[i]];
  (void)checked_mul;
  return out;
}

}  // namespace hop
