#pragma once

#include <cstdint>
#include <tuple>
#include <vector>

#include "hop/geom.hpp"

namespace hop {

inline constexpr uint32_t kNone32 = 0xffffffffu;

// Order of two non-vertical lines "just right of x" (at == nullptr means at
// x = -infinity).  Returns <0 when a is strictly below b there, 0 when the
// lines are identical.
int cmp_lines_at_plus(const Line& a, const Line& b, const Point* at);

// The same order refined by line id (smaller id infinitesimally lower):
// duplicate geometry gets a consistent strict order, so zero-area gaps
// between duplicates keep distinct sign masks.
inline int cmp_lines_at_plus_ref(const Line& a, uint32_t ida, const Line& b,
                                 uint32_t idb, const Point* at) {
  if (ida == idb) return 0;
  int c = cmp_lines_at_plus(a, b, at);
  if (c) return c;
  return ida < idb ? -1 : 1;
}

// Crossing events of a line set, grouped by point and sorted by (x, y).
struct SweepEvent {
  Point pt;
  std::vector<uint32_t> block;  // line ids through pt (>= 2)
};
std::vector<SweepEvent> build_events(const std::vector<Line>& lines);

// Left-to-right sweep over a subset ("members") of a common line array.
// Maintains the bottom-to-top order, the face of every gap, per-face below
// counts, and (optionally) the vertical-decomposition trapezoids with
// conflict-candidate lists and face registrations.  Face ids are assigned in
// birth order, which only depends on the member set, so two sweeps of the
// same members number faces identically.
class LineSweeper {
 public:
  struct FaceRec {
    int32_t below = 0;    // member lines strictly below the face
    uint32_t nverts = 0;  // arrangement vertices on the boundary
  };

  // (face, lower boundary line at registration, event of registration);
  // lb == kNone32 encodes the bottom-infinite gap, ev == kNone32 birth at -inf
  struct FaceReg {
    uint32_t face;
    uint32_t lb;
    uint32_t ev;
  };

  struct TrapRec {
    uint32_t bot = kNone32, top = kNone32;  // member line ids; kNone32 = open
    uint32_t ev_open = kNone32, ev_close = kNone32;
    uint32_t face = kNone32;
    std::vector<uint32_t> cand;   // candidate crossing lines (master-local)
    std::vector<FaceReg> regs;    // faces meeting the trapezoid
  };

  LineSweeper(const std::vector<Line>& all_lines,
              const std::vector<Point>& event_pts,
              std::vector<uint32_t> members, bool with_traps);

  // Processes the member sub-block of an event (>= 2 member lines through
  // pt).  Appends born face ids to *born and (with traps) opened trapezoid
  // ids to *opened.
  void apply_event(uint32_t event_id, const Point& pt,
                   const std::vector<uint32_t>& member_block,
                   std::vector<uint32_t>* born,
                   std::vector<uint32_t>* opened);
  void finish();  // close trapezoids running to +infinity

  size_t member_count() const { return order_.size(); }
  const std::vector<uint32_t>& members_sorted() const { return members_; }
  bool is_member(uint32_t line) const {
    return line < pos_.size() && pos_[line] != kNone32;
  }

  // ---- current-state queries -------------------------------------------
  // gap = number of member lines below the perturbed point
  uint32_t gap_of_point(const Point& q, Perturb dir) const;
  // gaps touched by q: (gap under Down, gap under Up); equal off-boundary
  std::pair<uint32_t, uint32_t> gap_range_of_point(const Point& q) const;
  // number of member lines <= lb (id-refined order) just right of *at
  // (nullptr = -inf); identifies the gap whose lower boundary is line lb
  uint32_t gap_below_line(uint32_t lb, const Point* at) const;

  uint32_t gap_face(uint32_t gap) const { return gap_face_[gap]; }
  uint32_t gap_trap(uint32_t gap) const { return gap_trap_[gap]; }
  uint32_t order_at(uint32_t pos) const { return order_[pos]; }
  uint32_t pos_of(uint32_t line) const { return pos_[line]; }

  const std::vector<FaceRec>& faces() const { return faces_; }
  std::vector<TrapRec>& traps() { return traps_; }
  const std::vector<TrapRec>& traps() const { return traps_; }

  // Exact filter + mask table computation for one closed trapezoid.
  // conflict: surviving candidate lines; table: (mask over conflict, face)
  // sorted by mask, where bit j is set when conflict[j] lies below the face.
  struct TrapFinal {
    std::vector<uint32_t> conflict;
    std::vector<std::pair<std::vector<uint64_t>, uint32_t>> table;
  };
  TrapFinal finalize_trap(uint32_t trap_id) const;

  // mask of q against a conflict list (bit set = line below perturbed q)
  std::vector<uint64_t> mask_of_point(const std::vector<uint32_t>& conflict,
                                      const Point& q, Perturb dir) const;

 private:
  const std::vector<Line>& lines_;
  const std::vector<Point>& event_pts_;
  std::vector<uint32_t> members_;   // sorted member line ids
  bool with_traps_;

  std::vector<uint32_t> order_;     // bottom-to-top member line ids
  std::vector<uint32_t> pos_;       // line id -> position (kNone32 if not member)
  std::vector<uint32_t> gap_face_;  // gap -> face id
  std::vector<uint32_t> gap_trap_;  // gap -> open trapezoid id
  std::vector<FaceRec> faces_;
  std::vector<TrapRec> traps_;

  uint32_t new_face(int32_t below);
  uint32_t open_trap(uint32_t gap, uint32_t ev);
  void close_trap(uint32_t gap, uint32_t ev);

  const Point* event_pt(uint32_t ev) const {
    return ev == kNone32 ? nullptr : &event_pts_[ev];
  }
};

// Point location in one small arrangement by the persistent-slab method:
// a snapshot of the sweep order per distinct event abscissa, O(log n) per
// query.  O(n^3) space, meant for arrangements of a few hundred lines (the
// cascade root, test oracles).  Face ids match LineSweeper's birth order.
class SlabLocator {
 public:
  explicit SlabLocator(std::vector<Line> lines);

  struct Ans {
    uint32_t face;
    int32_t below;  // member lines strictly below the face
  };
  Ans locate(const Point& q, Perturb dir) const;

  size_t face_count() const { return faces_.size(); }
  const std::vector<LineSweeper::FaceRec>& faces() const { return faces_; }

 private:
  std::vector<Line> lines_;
  std::vector<Rational> xs_;  // distinct event abscissae, increasing
  // snapshot s is valid on [xs_[s-1], xs_[s]) with s = 0 valid on (-inf, xs_[0])
  std::vector<std::vector<uint32_t>> orders_;
  std::vector<std::vector<uint32_t>> gap_faces_;
  std::vector<LineSweeper::FaceRec> faces_;
};

}  // namespace hop
