#pragma once

#include <cstdint>
#include <vector>

#include "hop/geom.hpp"
#include "hop/rng.hpp"
#include "hop/sweep.hpp"

namespace hop {

// Point location over the trapezoidal map of a line set, built by randomized
// incremental insertion with a history dag.
//
// Construction runs under a lexicographic symbolic perturbation: line i's
// intercept is b_i + eta^i for an infinitesimal eta, which removes all
// degeneracies (duplicates are collapsed first and carry multiplicity), so
// the incremental update never meets a special case.  Queries resolve
// boundary ties by the spec's upward/downward rule with an epsilon that
// dominates eta, so reported faces and below counts are exact for the true
// (unperturbed) input.
class PointLocator {
 public:
  PointLocator(const std::vector<Line>& input, uint64_t seed);

  struct Ans {
    uint32_t trap;
    uint32_t face;
    int64_t below;  // input lines (with multiplicity) strictly below the
                    // perturbed query point
  };
  Ans locate(const Point& q, Perturb dir) const;

  size_t trap_count() const { return n_alive_; }
  size_t face_count() const { return n_faces_; }
  size_t node_count() const { return nodes_.size(); }

 private:
  struct Vert {
    Rational x0;      // rational part of the abscissa
    uint32_t li, lj;  // defining distinct lines, li < lj
    __int128 fxn = 0, fxd = 1;  // x0 as int128 fraction when small enough
    bool fast = false;
  };
  struct Trap {
    uint32_t top = kNone32, bot = kNone32;  // distinct-line ids
    uint32_t lv = kNone32, rv = kNone32;    // wall vertices
    int64_t below = 0;
    uint32_t leaf = kNone32;
    uint32_t face = kNone32;
    bool alive = true;
  };
  enum NodeKind : uint8_t { kLeaf, kXNode, kYNode };
  struct Node {
    NodeKind kind;
    uint32_t a;             // leaf: trap, x: vertex, y: distinct line
    uint32_t lo = kNone32;  // x: left,  y: below
    uint32_t hi = kNone32;  // x: right, y: above
  };

  std::vector<Line> lines_;  // distinct
  struct FastLine {
    long long a = 0, b = 0;
    bool ok = false;
  };
  std::vector<FastLine> fast_;  // int64 coefficients when applicable
  std::vector<int64_t> mult_;
  std::vector<Vert> verts_;
  std::vector<Trap> traps_;
  std::vector<Node> nodes_;
  uint32_t root_ = kNone32;
  size_t n_alive_ = 0, n_faces_ = 0;

  // ---- symbolic-perturbation comparisons --------------------------------
  // sign of sum of coeff * eta^expo terms (0 < eta << everything)
  static int eta_sign(std::vector<std::pair<uint32_t, Rational>> terms);
  int cmp_vertex_x(const Vert& a, const Vert& b) const;
  // perturbed line g1 minus g2 evaluated just right of vertex v
  int cmp_lines_at_vertex(uint32_t g1, uint32_t g2, const Vert& v) const;
  // perturbed order of g1 vs g2 at x = -infinity (below = negative)
  int cmp_lines_at_minus_inf(uint32_t g1, uint32_t g2) const;

  // trap of the point on perturbed line ell just right of vertex v
  // (v == kNone32: at -infinity)
  uint32_t locate_walk(uint32_t ell, uint32_t v) const;

  void vert_fast_fields(Vert& v) const;
  uint32_t new_leaf(uint32_t trap);
  uint32_t new_trap(uint32_t top, uint32_t bot, uint32_t lv, int64_t below);
  void insert_line(uint32_t ell);
  void build_faces();
};

}  // namespace hop
