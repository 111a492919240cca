#pragma once

#include <cstdint>
#include <vector>

#include "hop/geom.hpp"

namespace hop {

struct CountResult {
  int64_t above = 0;       // point strictly above line
  int64_t incidences = 0;  // point exactly on line
  uint64_t predicate_evals = 0;
  double wall_seconds = 0;
  uint64_t seed = 0;
  // count_cascade instrumentation: total crossed-subtree size over queries
  uint64_t subtree_total = 0;
};

// O(mn) oracle; the parallel kernel and the serial reference compute the
// same exact counts.
CountResult count_brute(const std::vector<Point>& pts,
                        const std::vector<Line>& lines);
CountResult count_brute_serial(const std::vector<Point>& pts,
                               const std::vector<Line>& lines);

// arrangement baseline: trapezoidal-map locator over all lines, two
// perturbed locates per point
CountResult count_arrangement(const std::vector<Point>& pts,
                              const std::vector<Line>& lines, uint64_t seed);

// recurrence baseline: alternating primal/dual cutting stages, then the
// arrangement baseline on the smaller side
CountResult count_recursive(const std::vector<Point>& pts,
                            const std::vector<Line>& lines, int depth_limit,
                            uint64_t seed);

// the main engine: hierarchical cutting + fractional cascading over the
// dualized leaf sets, one x-monotone query pass per perturbation direction
CountResult count_cascade(const std::vector<Point>& pts,
                          const std::vector<Line>& lines, uint64_t seed);

// asymmetric reduction onto balanced cascade subproblems
CountResult count_asymmetric(const std::vector<Point>& pts,
                             const std::vector<Line>& lines, uint64_t seed);

struct WeightedResult {
  std::vector<int64_t> per_point;  // sum of weights of lines strictly below
  std::vector<int64_t> per_line;   // sum of weights of points strictly above
};

// weighted individual sums via the hierarchical cutting with
// face_weight_sums base cases; additions only
WeightedResult weighted_counts(const std::vector<Point>& pts,
                               const std::vector<int64_t>& point_weights,
                               const std::vector<Line>& lines,
                               const std::vector<int64_t>& line_weights,
                               uint64_t seed);

struct IndividualCounts {
  std::vector<int64_t> below_per_point;  // lines strictly below the point
  std::vector<int64_t> on_per_point;     // lines through the point
  std::vector<int64_t> above_per_line;   // points strictly above the line
  std::vector<int64_t> on_per_line;      // points on the line
};

IndividualCounts individual_counts(const std::vector<Point>& pts,
                                   const std::vector<Line>& lines,
                                   uint64_t seed);

}  // namespace hop
