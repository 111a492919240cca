#include "hop/cascade.hpp"

#include <algorithm>
#include <cstdio>
#include <cassert>
#include <stdexcept>

namespace hop {

namespace {

uint32_t tree_degree(const CascadeInput& in) {
  size_t d = 0;
  for (const auto& ch : in.children) d = std::max(d, ch.size());
  return uint32_t(d);
}

}  // namespace

CascadeTree::CascadeTree(const CascadeInput& input, uint32_t c, Rng rng)
    : input_(&input) {
  size_t n = input.node_lines.size();
  if (input.parent.size() != n || input.children.size() != n)
    throw std::invalid_argument("cascade: inconsistent input tree");
  if (n == 0 || input.parent[0] != kNone32)
    throw std::invalid_argument("cascade: node 0 must be the root");
  for (uint32_t u = 1; u < n; ++u)
    if (input.parent[u] >= u)
      throw std::invalid_argument("cascade: parents must precede children");
  uint32_t c0 = tree_degree(input);
  if (c <= c0)
    throw std::invalid_argument(
        "cascade: sampling ratio c must exceed the tree degree");
  stats_.degree_bound = c0;
  stats_.c = c;
  stats_.node_count = n;
  for (const auto& ls : input.node_lines)
    stats_.z = std::max(stats_.z, ls.size());

  nodes_.resize(n);
  // children before parents (parents precede children in the id order)
  for (uint32_t u = uint32_t(n); u-- > 0;) build_node(u, c, rng);

  // root locator over A(L_root^+)
  root_loc_ = std::make_unique<SlabLocator>(nodes_[0].lines_plus);
  assert(root_loc_->face_count() == nodes_[0].master_faces);

  face_at_.assign(n, 0);
  epoch_at_.assign(n, 0);
}

void CascadeTree::build_node(uint32_t u, uint32_t c, Rng& rng) {
  NodeData& nd = nodes_[u];
  const auto& kids = input_->children[u];

  // L_u^+ = L_u + each child's own sample R_v (the same sample the child's
  // trapezoid structures are built on)
  nd.lines_plus = input_->node_lines[u];
  nd.n_own = uint32_t(nd.lines_plus.size());
  std::vector<std::vector<uint32_t>> sample_members(kids.size());
  for (size_t k = 0; k < kids.size(); ++k) {
    const NodeData& ch = nodes_[kids[k]];
    for (uint32_t idx : ch.sample) {
      sample_members[k].push_back(uint32_t(nd.lines_plus.size()));
      nd.lines_plus.push_back(ch.lines_plus[idx]);
    }
  }
  stats_.max_aug = std::max(stats_.max_aug, nd.lines_plus.size());

  const std::vector<Line>& L = nd.lines_plus;
  std::vector<SweepEvent> events = build_events(L);
  std::vector<Point> event_pts;
  event_pts.reserve(events.size());
  for (auto& e : events) event_pts.push_back(e.pt);

  std::vector<uint32_t> all(L.size());
  for (uint32_t i = 0; i < all.size(); ++i) all[i] = i;
  LineSweeper master(L, event_pts, all, /*with_traps=*/false);

  // sub-sweeps: own set (output link), this node's sample (trapezoid side),
  // and each child's sample (descent links)
  nd.own_identity = nd.n_own == L.size();
  std::unique_ptr<LineSweeper> own;
  if (!nd.own_identity && nd.n_own > 0) {
    std::vector<uint32_t> m(nd.n_own);
    for (uint32_t i = 0; i < nd.n_own; ++i) m[i] = i;
    own = std::make_unique<LineSweeper>(L, event_pts, m, false);
  }
  // the node's own sample R_u, drawn once; the parent augments with exactly
  // these lines and links into the same face numbering
  std::unique_ptr<LineSweeper> rsweep;
  if (input_->parent[u] != kNone32 && !L.empty()) {
    uint32_t want = uint32_t((L.size() + c - 1) / c);
    nd.sample = rng.sample_without_replacement(uint32_t(L.size()), want);
    std::sort(nd.sample.begin(), nd.sample.end());
    rsweep = std::make_unique<LineSweeper>(L, event_pts, nd.sample, true);
  }
  std::vector<std::unique_ptr<LineSweeper>> child_sub(kids.size());
  for (size_t k = 0; k < kids.size(); ++k) {
    if (!sample_members[k].empty())
      child_sub[k] =
          std::make_unique<LineSweeper>(L, event_pts, sample_members[k], false);
  }

  nd.link_R.resize(kids.size());

  // register a face into every trapezoid its gap window spans at a moment
  auto snapshot_trap = [&](uint32_t trap_id, uint32_t ev) {
    LineSweeper::TrapRec& t = rsweep->traps()[trap_id];
    uint32_t lo = t.bot == kNone32 ? 0 : master.pos_of(t.bot) + 1;
    uint32_t hi =
        t.top == kNone32 ? uint32_t(master.member_count()) : master.pos_of(t.top);
    // gaps lo..hi lie strictly inside the sample window
    for (uint32_t g = lo; g <= hi; ++g) {
      uint32_t lb = g == 0 ? kNone32 : master.order_at(g - 1);
      t.regs.push_back(LineSweeper::FaceReg{master.gap_face(g), lb, ev});
      if (g > lo) t.cand.push_back(master.order_at(g - 1));
    }
  };

  // link a master face (sitting in gap `gap` with lower boundary lb) into
  // every sub-arrangement
  auto link_face = [&](uint32_t face, uint32_t lb, const Point* at) {
    if (own) {
      uint32_t g = lb == kNone32 ? 0 : own->gap_below_line(lb, at);
      nd.own_face.push_back(own->gap_face(g));
    }
    for (size_t k = 0; k < kids.size(); ++k) {
      if (!child_sub[k]) {
        nd.link_R[k].push_back(0);
        continue;
      }
      uint32_t g = lb == kNone32 ? 0 : child_sub[k]->gap_below_line(lb, at);
      nd.link_R[k].push_back(child_sub[k]->gap_face(g));
    }
    (void)face;
  };

  // initial faces (born at -infinity), in gap order = face id order
  for (uint32_t g = 0; g <= master.member_count(); ++g) {
    uint32_t lb = g == 0 ? kNone32 : master.order_at(g - 1);
    link_face(master.gap_face(g), lb, nullptr);
  }
  if (rsweep) {
    for (uint32_t g = 0; g <= rsweep->member_count(); ++g)
      snapshot_trap(rsweep->gap_trap(g), kNone32);
  }

  // Events sharing an abscissa are processed as one group: face links, born
  // registrations, and trapezoid snapshots only make sense in the state just
  // right of x, after every event at that x has been applied.
  struct PendingBorn {
    uint32_t face, lb, ev;
  };
  std::vector<uint32_t> born, opened, sub_block;
  std::vector<PendingBorn> pending;
  for (uint32_t gs = 0; gs < events.size();) {
    uint32_t ge = gs;
    while (ge < events.size() && events[ge].pt.x == events[gs].pt.x) ++ge;
    opened.clear();
    pending.clear();
    for (uint32_t ev = gs; ev < ge; ++ev) {
      const auto& block = events[ev].block;
      const Point& pt = events[ev].pt;

      // candidate lines for the sample trapezoids this event point touches
      // (pre-state: the closing trapezoids; freshly opened ones get theirs
      // from the snapshot below)
      if (rsweep) {
        auto [gd, gu] = rsweep->gap_range_of_point(pt);
        for (uint32_t g = gd; g <= gu; ++g) {
          auto& cand = rsweep->traps()[rsweep->gap_trap(g)].cand;
          cand.insert(cand.end(), block.begin(), block.end());
        }
      }

      auto run_sub = [&](LineSweeper* sw, std::vector<uint32_t>* opened_out) {
        if (!sw) return;
        sub_block.clear();
        for (uint32_t l : block)
          if (sw->is_member(l)) sub_block.push_back(l);
        if (sub_block.size() >= 2)
          sw->apply_event(ev, pt, sub_block, nullptr, opened_out);
      };
      run_sub(own.get(), nullptr);
      run_sub(rsweep.get(), &opened);
      for (auto& cs : child_sub) run_sub(cs.get(), nullptr);

      born.clear();
      master.apply_event(ev, pt, block, &born, nullptr);

      // born faces are the inner gaps of the reordered block, in gap order
      uint32_t p = kNone32, qq = 0;
      for (uint32_t l : block) {
        uint32_t at = master.pos_of(l);
        p = std::min(p, at);
        qq = std::max(qq, at);
      }
      size_t bi = 0;
      for (uint32_t g = p + 1; g <= qq; ++g, ++bi)
        pending.push_back(PendingBorn{born[bi], master.order_at(g - 1), ev});
      assert(bi == born.size());
    }

    // state just right of x: faces entering freshly opened trapezoids
    for (uint32_t t : opened) snapshot_trap(t, ge - 1);
    // links and registrations of the group's born faces (id order)
    for (const PendingBorn& pb : pending) {
      const Point& pt = events[pb.ev].pt;
      link_face(pb.face, pb.lb, &pt);
      if (rsweep) {
        uint32_t rg = rsweep->gap_below_line(pb.lb, &pt);
        auto& trap = rsweep->traps()[rsweep->gap_trap(rg)];
        trap.regs.push_back(LineSweeper::FaceReg{pb.face, pb.lb, pb.ev});
      }
    }
    gs = ge;
  }
  master.finish();
  if (rsweep) rsweep->finish();

  nd.master_faces = uint32_t(master.faces().size());
  nd.master_below.reserve(nd.master_faces);
  for (const auto& fr : master.faces()) nd.master_below.push_back(fr.below);

  // output mapping to A(L_u)
  if (nd.own_identity) {
    nd.own_face_count = nd.master_faces;
    nd.own_below = nd.master_below;
  } else if (nd.n_own == 0) {
    nd.own_face_count = 1;
    nd.own_below.assign(1, 0);
    nd.own_face.assign(nd.master_faces, 0);
  } else {
    nd.own_face_count = uint32_t(own->faces().size());
    for (const auto& fr : own->faces()) nd.own_below.push_back(fr.below);
  }

  // persist the sample-side structures
  if (rsweep) {
    auto& traps = rsweep->traps();
    nd.chains.resize(rsweep->faces().size());
    for (uint32_t fi = 0; fi < rsweep->faces().size(); ++fi)
      nd.chains[fi].nverts = rsweep->faces()[fi].nverts;
    double sq = 0;
    std::vector<uint32_t> keep;  // trap id -> persisted id
    keep.assign(traps.size(), kNone32);
    for (uint32_t t = 0; t < traps.size(); ++t) {
      if (traps[t].face == kNone32) continue;  // zero-width
      auto fin = rsweep->finalize_trap(t);
      PTrap pt;
      pt.conflict = std::move(fin.conflict);
      pt.table = std::move(fin.table);
      if (traps[t].ev_close != kNone32)
        pt.xr = event_pts[traps[t].ev_close].x;
      sq += double(pt.conflict.size()) * double(pt.conflict.size());
      keep[t] = uint32_t(nd.traps.size());
      nd.traps.push_back(std::move(pt));
      nd.chains[traps[t].face].traps.push_back(keep[t]);
    }
    size_t z2 = std::max<size_t>(1, stats_.z * stats_.z);
    stats_.sum_conflict_sq_over_z_sq += sq / double(z2);
    ++stats_.sampled_nodes;
  }
}

void CascadeTree::reset() {
  for (auto& nd : nodes_) {
    for (auto& ch : nd.chains) {
      ch.cursor = 0;
      ch.advances = 0;
    }
  }
  have_last_ = false;
}

void CascadeTree::query(const Point& q, Perturb dir,
                        const std::vector<uint32_t>& subtree,
                        std::vector<NodeAnswer>& out) {
  // monotone stream: nondecreasing (x, dir) with Down before Up
  if (have_last_) {
    int c = q.x.cmp(last_x_);
    if (c < 0 || (c == 0 && dir == Perturb::Down && last_dir_ == Perturb::Up))
      throw std::invalid_argument(
          "cascade: queries must be x-monotone since the last reset");
  }
  have_last_ = true;
  last_x_ = q.x;
  last_dir_ = dir;
  if (subtree.empty() || subtree[0] != 0)
    throw std::invalid_argument("cascade: subtree must contain the root");

  ++epoch_;
  out.clear();

  // root location
  auto ans = root_loc_->locate(q, dir);
  ++stats_.root_locates;
#ifndef NDEBUG
  if (getenv("HOP_CASCADE_TRACE"))
    fprintf(stderr, "query (%s,%s) dir=%d root face=%u\n",
            q.x.to_string().c_str(), q.y.to_string().c_str(), int(dir),
            ans.face);
#endif
  face_at_[0] = ans.face;
  epoch_at_[0] = epoch_;

  for (uint32_t u : subtree) {
    if (epoch_at_[u] != epoch_)
      throw std::invalid_argument("cascade: subtree is not parent-closed");
    NodeData& nd = nodes_[u];
    uint32_t f = face_at_[u];
    ++stats_.visits;

    // report the face of A(L_u)
    uint32_t of;
    int64_t below;
    if (nd.own_identity) {
      of = f;
      below = f < nd.master_below.size() ? nd.master_below[f] : 0;
    } else if (nd.n_own == 0) {
      of = 0;
      below = 0;
    } else {
      of = nd.own_face[f];
      below = nd.own_below[of];
    }
    out.push_back(NodeAnswer{u, of, below});

    // descend into subtree children
    const auto& kids = input_->children[u];
    for (size_t k = 0; k < kids.size(); ++k) {
      uint32_t v = kids[k];
      NodeData& vd = nodes_[v];
      if (vd.lines_plus.empty()) {
        face_at_[v] = 0;
        epoch_at_[v] = epoch_;
        continue;
      }
      uint32_t fr = nd.link_R[k].empty() ? 0 : nd.link_R[k][f];
      // walk the face's trapezoid chain to the one holding q
      Chain& ch = vd.chains[fr];
      bool up = dir == Perturb::Up;
      while (ch.cursor + 1 < ch.traps.size()) {
        const auto& xr = vd.traps[ch.traps[ch.cursor]].xr;
        if (!xr) break;
        int c = q.x.cmp(*xr);
        if (up ? c >= 0 : c > 0) {
          ++ch.cursor;
          ++ch.advances;
          ++stats_.cursor_advances;
          if (ch.advances > ch.nverts) stats_.cursor_bound_ok = false;
        } else {
          break;
        }
      }
      const PTrap& trap = vd.traps[ch.traps[ch.cursor]];
      // conflict scan -> sign mask -> face of A(L_v^+)
      std::vector<uint64_t> mask((trap.conflict.size() + 63) / 64, 0);
      for (size_t j = 0; j < trap.conflict.size(); ++j) {
        if (side_perturbed(q, vd.lines_plus[trap.conflict[j]], dir) ==
            SideSign::Above)
          mask[j / 64] |= uint64_t(1) << (j % 64);
      }
      stats_.conflict_scanned += trap.conflict.size();
      auto it = std::lower_bound(
          trap.table.begin(), trap.table.end(), mask,
          [](const std::pair<std::vector<uint64_t>, uint32_t>& a,
             const std::vector<uint64_t>& m) { return a.first < m; });
#ifndef NDEBUG
      if (it == trap.table.end() || it->first != mask) {
        fprintf(stderr,
                "MISSING MASK node=%u child=%u q=(%s,%s) dir=%d f=%u fr=%u "
                "cursor=%u/%zu\n",
                u, v, q.x.to_string().c_str(), q.y.to_string().c_str(),
                int(dir), f, fr, ch.cursor, ch.traps.size());
        fprintf(stderr, "  conflict:");
        for (uint32_t cc : trap.conflict) fprintf(stderr, " %u", cc);
        fprintf(stderr, "\n  qmask:");
        for (auto w : mask) fprintf(stderr, " %llx", (unsigned long long)w);
        fprintf(stderr, "\n  table:");
        for (auto& e : trap.table) {
          fprintf(stderr, " [");
          for (auto w : e.first) fprintf(stderr, "%llx", (unsigned long long)w);
          fprintf(stderr, "->f%u]", e.second);
        }
        fprintf(stderr, "\n  lines of node %u:\n", v);
        for (size_t li = 0; li < vd.lines_plus.size(); ++li)
          fprintf(stderr, "   [%zu] y=%s x + %s\n", li,
                  vd.lines_plus[li].a.to_string().c_str(),
                  vd.lines_plus[li].b.to_string().c_str());
        assert(false && "query mask must match a registered face");
      }
#endif
      face_at_[v] = it->second;
      epoch_at_[v] = epoch_;
#ifndef NDEBUG
      if (getenv("HOP_CASCADE_TRACE")) {
        fprintf(stderr,
                "  trace u=%u f=%u -> child v=%u fr=%u trap=%u conflict=%zu "
                "-> f''=%u (below %lld)\n",
                u, f, v, fr, ch.traps[ch.cursor], trap.conflict.size(),
                it->second, (long long)vd.master_below[it->second]);
      }
#endif
    }
  }
}

}  // namespace hop
