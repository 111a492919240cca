#include "hop/sweep.hpp"

#include <algorithm>
#include <cstdio>
#include <cassert>
#include <stdexcept>

namespace hop {

int cmp_lines_at_plus(const Line& a, const Line& b, const Point* at) {
  stats::bump();
  if (at == nullptr) {
    // at -infinity: larger slope lies lower; ties by intercept
    int c = b.a.cmp(a.a);
    if (c) return c;
    return a.b.cmp(b.b);
  }
  int c = a.eval(at->x).cmp(b.eval(at->x));
  if (c) return c;
  return a.a.cmp(b.a);  // just right of the common point: smaller slope lower
}

std::vector<SweepEvent> build_events(const std::vector<Line>& lines) {
  struct Hit {
    Point pt;
    uint32_t i, j;
  };
  std::vector<Hit> hits;
  for (uint32_t i = 0; i < lines.size(); ++i) {
    for (uint32_t j = i + 1; j < lines.size(); ++j) {
      auto m = meet(lines[i], lines[j]);
      if (m) hits.push_back({std::move(*m), i, j});
    }
  }
  std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
    return a.pt.cmp(b.pt) < 0;
  });
  std::vector<SweepEvent> events;
  for (size_t k = 0; k < hits.size();) {
    size_t e = k;
    while (e < hits.size() && hits[e].pt == hits[k].pt) ++e;
    SweepEvent ev;
    ev.pt = hits[k].pt;
    for (size_t t = k; t < e; ++t) {
      ev.block.push_back(hits[t].i);
      ev.block.push_back(hits[t].j);
    }
    std::sort(ev.block.begin(), ev.block.end());
    ev.block.erase(std::unique(ev.block.begin(), ev.block.end()),
                   ev.block.end());
    events.push_back(std::move(ev));
    k = e;
  }
  return events;
}

LineSweeper::LineSweeper(const std::vector<Line>& all_lines,
                         const std::vector<Point>& event_pts,
                         std::vector<uint32_t> members, bool with_traps)
    : lines_(all_lines),
      event_pts_(event_pts),
      members_(std::move(members)),
      with_traps_(with_traps) {
  std::sort(members_.begin(), members_.end());
  order_ = members_;
  std::sort(order_.begin(), order_.end(), [&](uint32_t a, uint32_t b) {
    return cmp_lines_at_plus_ref(lines_[a], a, lines_[b], b, nullptr) < 0;
  });
  pos_.assign(all_lines.size(), kNone32);
  for (uint32_t p = 0; p < order_.size(); ++p) pos_[order_[p]] = p;
  size_t k = order_.size();
  gap_face_.resize(k + 1);
  for (uint32_t g = 0; g <= k; ++g) gap_face_[g] = new_face(int32_t(g));
  if (with_traps_) {
    gap_trap_.resize(k + 1);
    for (uint32_t g = 0; g <= k; ++g) gap_trap_[g] = open_trap(g, kNone32);
  }
}

uint32_t LineSweeper::new_face(int32_t below) {
  faces_.push_back(FaceRec{below, 0});
  return uint32_t(faces_.size() - 1);
}

uint32_t LineSweeper::open_trap(uint32_t gap, uint32_t ev) {
  TrapRec t;
  t.bot = gap == 0 ? kNone32 : order_[gap - 1];
  t.top = gap == order_.size() ? kNone32 : order_[gap];
  t.ev_open = ev;
  t.face = gap_face_[gap];
  traps_.push_back(std::move(t));
  return uint32_t(traps_.size() - 1);
}

void LineSweeper::close_trap(uint32_t gap, uint32_t ev) {
  uint32_t id = gap_trap_[gap];
  TrapRec& t = traps_[id];
  t.ev_close = ev;
  // drop zero-width trapezoids (opened and closed at the same abscissa)
  if (t.ev_open != kNone32 && ev != kNone32 &&
      event_pts_[t.ev_open].x == event_pts_[ev].x) {
    t.face = kNone32;  // marker: discarded
  }
}

void LineSweeper::apply_event(uint32_t event_id, const Point& pt,
                              const std::vector<uint32_t>& member_block,
                              std::vector<uint32_t>* born,
                              std::vector<uint32_t>* opened) {
  size_t b = member_block.size();
  assert(b >= 2);
  uint32_t p = kNone32, q = 0;
  for (uint32_t l : member_block) {
    uint32_t at = pos_[l];
    p = std::min(p, at);
    q = std::max(q, at);
  }
  assert(q - p + 1 == b && "event block must be contiguous in the order");

  // the vertex touches every face around it
  for (uint32_t g = p; g <= q + 1; ++g) ++faces_[gap_face_[g]].nverts;

  if (with_traps_) {
    for (uint32_t g = p; g <= q + 1; ++g) close_trap(g, event_id);
  }

  // reorder the block for x just right of the event: slope ascending, with
  // geometric duplicates kept in id order (the refined order's tie rule)
  std::sort(order_.begin() + p, order_.begin() + q + 1,
            [&](uint32_t a, uint32_t b) {
              return cmp_lines_at_plus_ref(lines_[a], a, lines_[b], b, &pt) <
                     0;
            });
  for (uint32_t at = p; at <= q; ++at) pos_[order_[at]] = at;

  // inner gaps start new faces
  for (uint32_t g = p + 1; g <= q; ++g) {
    gap_face_[g] = new_face(int32_t(g));
    ++faces_[gap_face_[g]].nverts;
    if (born) born->push_back(gap_face_[g]);
  }

  if (with_traps_) {
    for (uint32_t g = p; g <= q + 1; ++g) {
      gap_trap_[g] = open_trap(g, event_id);
      if (opened) opened->push_back(gap_trap_[g]);
    }
  }
}

void LineSweeper::finish() {
  if (!with_traps_) return;
  for (uint32_t g = 0; g < gap_trap_.size(); ++g) {
    traps_[gap_trap_[g]].ev_close = kNone32;
  }
}

uint32_t LineSweeper::gap_of_point(const Point& q, Perturb dir) const {
  // first position whose line is not below the perturbed point
  uint32_t lo = 0, hi = uint32_t(order_.size());
  while (lo < hi) {
    uint32_t mid = (lo + hi) / 2;
    if (side_perturbed(q, lines_[order_[mid]], dir) == SideSign::Above)
      lo = mid + 1;  // line below the point
    else
      hi = mid;
  }
  return lo;
}

std::pair<uint32_t, uint32_t> LineSweeper::gap_range_of_point(
    const Point& q) const {
  return {gap_of_point(q, Perturb::Down), gap_of_point(q, Perturb::Up)};
}

uint32_t LineSweeper::gap_below_line(uint32_t lb, const Point* at) const {
  uint32_t lo = 0, hi = uint32_t(order_.size());
  while (lo < hi) {
    uint32_t mid = (lo + hi) / 2;
    if (cmp_lines_at_plus_ref(lines_[order_[mid]], order_[mid], lines_[lb],
                              lb, at) <= 0)
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo;
}

LineSweeper::TrapFinal LineSweeper::finalize_trap(uint32_t trap_id) const {
  const TrapRec& t = traps_[trap_id];
  TrapFinal out;
  if (t.face == kNone32) return out;  // discarded zero-width trapezoid

  std::vector<uint32_t> cand = t.cand;
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  const Line* bot = t.bot == kNone32 ? nullptr : &lines_[t.bot];
  const Line* top = t.top == kNone32 ? nullptr : &lines_[t.top];
  const Rational* xl =
      t.ev_open == kNone32 ? nullptr : &event_pts_[t.ev_open].x;
  const Rational* xr =
      t.ev_close == kNone32 ? nullptr : &event_pts_[t.ev_close].x;
  for (uint32_t c : cand) {
    if (c == t.bot || c == t.top) continue;
    // duplicates of the boundary lines sit infinitesimally inside or
    // outside by the id refinement
    if (t.bot != kNone32 && lines_[c] == lines_[t.bot]) {
      if (c > t.bot) out.conflict.push_back(c);
      continue;
    }
    if (t.top != kNone32 && lines_[c] == lines_[t.top]) {
      if (c < t.top) out.conflict.push_back(c);
      continue;
    }
    if (line_crosses_band(lines_[c], bot, top, xl, xr))
      out.conflict.push_back(c);
  }

  size_t words = (out.conflict.size() + 63) / 64;
  for (const FaceReg& reg : t.regs) {
    std::vector<uint64_t> mask(words, 0);
    if (reg.lb != kNone32) {
      const Point* at = event_pt(reg.ev);
      for (size_t j = 0; j < out.conflict.size(); ++j) {
        // conflict line below the face iff it is <= the face's lower
        // boundary (id-refined) just right of the registration point
        if (cmp_lines_at_plus_ref(lines_[out.conflict[j]], out.conflict[j],
                                  lines_[reg.lb], reg.lb, at) <= 0)
          mask[j / 64] |= uint64_t(1) << (j % 64);
      }
    }
    out.table.emplace_back(std::move(mask), reg.face);
  }
  std::sort(out.table.begin(), out.table.end());
  out.table.erase(std::unique(out.table.begin(), out.table.end()),
                  out.table.end());
#ifndef NDEBUG
  for (size_t i = 1; i < out.table.size(); ++i) {
    if (out.table[i].first == out.table[i - 1].first) {
      fprintf(stderr,
              "MASK COLLISION trap %u: faces %u and %u share a mask\n"
              "  trap bot=%d top=%d ev_open=%d ev_close=%d\n",
              trap_id, out.table[i - 1].second, out.table[i].second,
              (int)t.bot, (int)t.top, (int)t.ev_open, (int)t.ev_close);
      fprintf(stderr, "  conflict:");
      for (uint32_t c : out.conflict) fprintf(stderr, " %u", c);
      fprintf(stderr, "\n  regs:");
      for (const FaceReg& r : t.regs)
        fprintf(stderr, " (f%u lb=%d ev=%d)", r.face, (int)r.lb, (int)r.ev);
      fprintf(stderr, "\n  lines:\n");
      for (size_t li = 0; li < lines_.size(); ++li)
        fprintf(stderr, "   [%zu] y=%s x + %s%s\n", li,
                lines_[li].a.to_string().c_str(),
                lines_[li].b.to_string().c_str(),
                is_member(uint32_t(li)) ? "  (member)" : "");
      fprintf(stderr, "  events:\n");
      for (size_t e = 0; e < event_pts_.size(); ++e)
        fprintf(stderr, "   ev%zu (%s, %s)\n", e,
                event_pts_[e].x.to_string().c_str(),
                event_pts_[e].y.to_string().c_str());
      assert(false && "two faces share a sign vector inside one trapezoid");
    }
  }
#endif
  return out;
}

std::vector<uint64_t> LineSweeper::mask_of_point(
    const std::vector<uint32_t>& conflict, const Point& q, Perturb dir) const {
  std::vector<uint64_t> mask((conflict.size() + 63) / 64, 0);
  for (size_t j = 0; j < conflict.size(); ++j) {
    if (side_perturbed(q, lines_[conflict[j]], dir) == SideSign::Above)
      mask[j / 64] |= uint64_t(1) << (j % 64);
  }
  return mask;
}

SlabLocator::SlabLocator(std::vector<Line> lines) : lines_(std::move(lines)) {
  std::vector<SweepEvent> events = build_events(lines_);
  std::vector<Point> event_pts;
  event_pts.reserve(events.size());
  for (const auto& e : events) event_pts.push_back(e.pt);

  std::vector<uint32_t> members(lines_.size());
  for (uint32_t i = 0; i < members.size(); ++i) members[i] = i;
  LineSweeper sw(lines_, event_pts, std::move(members), /*with_traps=*/false);

  auto snapshot = [&]() {
    orders_.emplace_back();
    gap_faces_.emplace_back();
    for (uint32_t p = 0; p < sw.member_count(); ++p)
      orders_.back().push_back(sw.order_at(p));
    for (uint32_t g = 0; g <= sw.member_count(); ++g)
      gap_faces_.back().push_back(sw.gap_face(g));
  };

  snapshot();  // initial state, valid on (-inf, xs_[0])
  for (size_t k = 0; k < events.size();) {
    size_t e = k;
    while (e < events.size() && events[e].pt.x == events[k].pt.x) ++e;
    for (size_t t = k; t < e; ++t)
      sw.apply_event(uint32_t(t), events[t].pt, events[t].block, nullptr,
                     nullptr);
    xs_.push_back(events[k].pt.x);
    snapshot();  // valid on [xs_.back(), next x)
    k = e;
  }
  faces_ = sw.faces();
}

SlabLocator::Ans SlabLocator::locate(const Point& q, Perturb dir) const {
  // snapshot index: number of abscissae <= q.x (Up) or < q.x (Down)
  size_t lo = 0, hi = xs_.size();
  while (lo < hi) {
    size_t mid = (lo + hi) / 2;
    int c = xs_[mid].cmp(q.x);
    bool left = dir == Perturb::Up ? c <= 0 : c < 0;
    if (left)
      lo = mid + 1;
    else
      hi = mid;
  }
  const auto& order = orders_[lo];
  const auto& gf = gap_faces_[lo];
  uint32_t a = 0, b = uint32_t(order.size());
  while (a < b) {
    uint32_t mid = (a + b) / 2;
    if (side_perturbed(q, lines_[order[mid]], dir) == SideSign::Above)
      a = mid + 1;
    else
      b = mid;
  }
  return Ans{gf[a], faces_[gf[a]].below};
}

}  // namespace hop
