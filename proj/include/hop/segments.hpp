#pragma once

#include <cstdint>
#include <vector>

#include "hop/geom.hpp"

namespace hop {

// closed-segment intersection predicate (shared endpoints and collinear
// overlaps count)
bool segments_intersect(const Segment& a, const Segment& b);

// number of unordered pairs with nonempty intersection
int64_t seg_intersections(const std::vector<Segment>& segs, uint64_t seed);
int64_t seg_intersections_brute(const std::vector<Segment>& segs);

struct ComponentGraph {
  std::vector<std::pair<uint32_t, uint32_t>> edges;  // witnessed pairs
};

// connected-component label per segment (labels are component-minimum ids);
// the witness graph is exposed for the sparsity invariant
std::vector<uint32_t> seg_components(const std::vector<Segment>& segs,
                                     uint64_t seed,
                                     ComponentGraph* graph = nullptr);
std::vector<uint32_t> seg_components_brute(const std::vector<Segment>& segs);

}  // namespace hop
