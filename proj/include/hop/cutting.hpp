#pragma once

#include <cstdint>
#include <vector>

#include "hop/geom.hpp"
#include "hop/rng.hpp"
#include "hop/sweep.hpp"

namespace hop {

struct CutNode {
  Trapezoid cell;
  std::vector<uint32_t> conflict;  // input line ids crossing the open cell
  int64_t below = 0;               // input lines entirely below the cell
  uint32_t parent = kNone32;
  std::vector<uint32_t> children;  // empty = leaf
  int level = 0;                   // cutting level at creation
  bool from_point_split = false;
  std::vector<uint32_t> points;    // assigned points (leaves, after split)
};

struct CuttingParams {
  int rho = 2;             // per-level shrink factor
  int sample_base = 5;     // base sample size s0
  int kappa = 2;           // enforced bound factor: conflict <= kappa*n/rho^i
  int max_resample = 64;   // attempts before growing the sample
};

// Randomized hierarchical (1/rho^i)-cutting of a line set into trapezoids
// with conflict lists and below counts.  Las Vegas: every level's bound is
// enforced by resampling, so the stated invariants always hold.
class CuttingTree {
 public:
  CuttingTree(std::vector<Line> lines, uint64_t r, CuttingParams params,
              Rng rng);

  const std::vector<Line>& lines() const { return lines_; }
  const std::vector<CutNode>& nodes() const { return nodes_; }
  const CutNode& node(uint32_t id) const { return nodes_[id]; }
  uint32_t root() const { return 0; }
  const std::vector<uint32_t>& leaves() const { return leaves_; }

  int levels() const { return levels_; }            // k = ceil(log_rho r)
  size_t max_branching() const { return max_branching_; }  // measured c0
  size_t resamples() const { return resamples_; }
  int64_t conflict_bound(int level) const;          // kappa * n / rho^level

  // Subdivides overloaded leaves with median cuts (vertical, then the
  // lexicographic y/index fallback) until every leaf holds at most cap
  // points; a leaf whose points are all identical stays as is.  Points are
  // assigned under the upward perturbation rule.
  void split_by_points(const std::vector<Point>& pts, size_t cap);

  // leaf containing each point under the perturbation rule
  std::vector<uint32_t> locate_batch(const std::vector<Point>& pts,
                                     Perturb dir) const;
  std::vector<uint32_t> locate_batch_serial(const std::vector<Point>& pts,
                                            Perturb dir) const;
  uint32_t locate_one(const Point& p, Perturb dir) const;

  // ids of all nodes whose cells the line crosses (a subtree containing the
  // root, in parent-before-child order)
  std::vector<uint32_t> crossed_nodes(const Line& l) const;

 private:
  std::vector<Line> lines_;
  std::vector<CutNode> nodes_;
  std::vector<uint32_t> leaves_;
  CuttingParams params_;
  int levels_ = 0;
  size_t max_branching_ = 0;
  size_t resamples_ = 0;

  void refine(uint32_t id, int64_t child_bound, Rng& rng);
  void split_leaf(uint32_t id, const std::vector<Point>& pts, size_t cap);
};

// Vertical decomposition of a set of divider lines clipped to a cell; the
// returned trapezoids tile the cell.
std::vector<Trapezoid> vd_clip(const std::vector<Line>& dividers,
                               const Trapezoid& cell);

}  // namespace hop
