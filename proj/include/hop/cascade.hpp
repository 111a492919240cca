#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hop/geom.hpp"
#include "hop/rng.hpp"
#include "hop/sweep.hpp"

namespace hop {

// Point location in the arrangements of line sets stored on a bounded-degree
// rooted tree: a query (point, root-containing subtree) reports the face of
// A(L_u) containing the point for every subtree node u.
struct CascadeInput {
  std::vector<uint32_t> parent;                // kNone32 for the root (id 0)
  std::vector<std::vector<uint32_t>> children;
  std::vector<std::vector<Line>> node_lines;   // L_u
};

// Fractional cascading over the tree: each node's set is augmented with a
// 1/c sample of every child's augmented set, arrangements of the augmented
// sets are linked face-to-face, and queries walk the links top-down.  The
// per-node work is one conflict-list scan plus an amortized cursor advance,
// after a single O(log z) location at the root.
//
// Queries must arrive in nondecreasing (x, dir, y) order since the last
// reset, with Down ordered before Up at equal abscissae (the walk cursors
// only move right).
class CascadeTree {
 public:
  CascadeTree(const CascadeInput& input, uint32_t c, Rng rng);

  struct NodeAnswer {
    uint32_t node;
    uint32_t face;   // face id of A(L_u), stable across queries
    int64_t below;   // lines of L_u strictly below the face
  };

  // subtree: node ids, root first, every non-root preceded by its parent
  void query(const Point& q, Perturb dir, const std::vector<uint32_t>& subtree,
             std::vector<NodeAnswer>& out);
  void reset();

  struct Stats {
    size_t max_aug = 0;            // max |L_u^+|
    size_t node_count = 0;
    uint32_t degree_bound = 0;     // c0 of the input tree
    uint32_t c = 0;
    // build: Clarkson-Shor second moment, summed over sampled nodes
    double sum_conflict_sq_over_z_sq = 0;
    size_t sampled_nodes = 0;
    size_t z = 0;                  // max |L_u|
    // queries since construction
    uint64_t visits = 0;
    uint64_t conflict_scanned = 0;  // total conflict entries side-tested
    uint64_t cursor_advances = 0;
    uint64_t root_locates = 0;
    bool cursor_bound_ok = true;    // per-face advances <= face vertex count
  };
  const Stats& stats() const { return stats_; }
  size_t aug_size(uint32_t u) const { return nodes_[u].lines_plus.size(); }

 private:
  struct PTrap {
    std::vector<uint32_t> conflict;  // local line ids of the node's L^+
    // sign mask over `conflict` -> master face id, sorted by mask
    std::vector<std::pair<std::vector<uint64_t>, uint32_t>> table;
    std::optional<Rational> xr;      // right wall of the trapezoid
  };
  struct Chain {
    std::vector<uint32_t> traps;     // left-to-right trapezoids of one face
    uint32_t cursor = 0;
    uint32_t advances = 0;           // since last reset
    uint32_t nverts = 0;             // face complexity (cursor-bound check)
  };
  struct NodeData {
    std::vector<Line> lines_plus;    // L_u then the child samples
    uint32_t n_own = 0;              // |L_u|
    uint32_t master_faces = 0;
    // output link: master face -> (face of A(L_u), below count); identity
    // when L_u == L_u^+
    bool own_identity = false;
    std::vector<uint32_t> own_face;
    std::vector<int64_t> own_below;  // per A(L_u) face
    std::vector<int64_t> master_below;
    uint32_t own_face_count = 0;
    // per child (children order): master face -> face of A(R_child)
    std::vector<std::vector<uint32_t>> link_R;
    // this node's sample R_u (indices into lines_plus), shared with the
    // parent's augmentation and links
    std::vector<uint32_t> sample;
    // sample structures of this node (used when descending from the parent)
    std::vector<PTrap> traps;
    std::vector<Chain> chains;       // per face of A(R_u)
  };

  const CascadeInput* input_;
  std::vector<NodeData> nodes_;
  std::unique_ptr<SlabLocator> root_loc_;
  Stats stats_;

  // query-state
  bool have_last_ = false;
  Rational last_x_;
  Perturb last_dir_ = Perturb::Down;
  std::vector<uint32_t> face_at_;   // per node: master face for current query
  std::vector<uint32_t> epoch_at_;
  uint32_t epoch_ = 0;

  void build_node(uint32_t u, uint32_t c, Rng& rng);
};

}  // namespace hop
