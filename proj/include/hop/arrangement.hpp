#pragma once

#include <cstdint>
#include <vector>

#include "hop/geom.hpp"
#include "hop/sweep.hpp"

namespace hop {

// Doubly-connected edge list of a line arrangement, clipped to a rectangular
// frame chosen beyond every vertex.  Frame faces are in bijection with the
// true faces of the arrangement (unbounded ones included), so face counts and
// below counts match the unclipped arrangement.  Input lines are
// deduplicated; duplicates contribute multiplicity.
class Arrangement {
 public:
  struct Vertex {
    Point pt;
    bool frame = false;  // wall crossing or corner
  };
  struct HalfEdge {
    uint32_t origin = kNone32;  // tail vertex
    uint32_t twin = kNone32;
    uint32_t next = kNone32;
    uint32_t face = kNone32;
    uint32_t line = kNone32;  // distinct-line id; kNone32 for frame edges
  };
  struct Face {
    uint32_t any_edge = kNone32;
    int64_t below_mult = 0;  // input lines (with multiplicity) strictly below
    std::vector<uint32_t> vertex_ids;  // boundary vertices (orbit order)
  };

  const std::vector<Line>& distinct_lines() const { return lines_; }
  const std::vector<uint32_t>& multiplicity() const { return mult_; }
  // distinct-line id of each input line
  const std::vector<uint32_t>& input_to_distinct() const { return in2dist_; }

  const std::vector<Vertex>& vertices() const { return verts_; }
  const std::vector<HalfEdge>& halfedges() const { return hedges_; }
  const std::vector<Face>& faces() const { return faces_; }

  size_t num_true_vertices() const { return n_true_verts_; }
  size_t num_faces() const { return faces_.size(); }
  // V - E + F over the frame-clipped planar graph, outer face included
  long long euler_characteristic() const;

  // a strictly interior rational point of the face (vertex centroid)
  Point face_sample(uint32_t face) const;

  const Rational& frame_x() const { return frame_x_; }
  const Rational& frame_y() const { return frame_y_; }

  friend Arrangement build_arrangement(const std::vector<Line>& lines);

 private:
  std::vector<Line> lines_;
  std::vector<uint32_t> mult_;
  std::vector<uint32_t> in2dist_;
  std::vector<Vertex> verts_;
  std::vector<HalfEdge> hedges_;
  std::vector<Face> faces_;
  size_t n_true_verts_ = 0;
  size_t n_outer_edges_ = 0;
  Rational frame_x_, frame_y_;

  void compute_below();
};

// O(n^2 log n) construction by sorting vertices along each line and
// completing rotations; handles duplicates, parallel bundles and concurrent
// triples exactly.  Faces carry multiplicity-weighted below counts.
Arrangement build_arrangement(const std::vector<Line>& lines);

// Per-face count of input lines (with multiplicity) strictly below; the
// counts are computed during construction, this re-derives them and checks
// consistency (spec operation shape).
std::vector<int64_t> annotate_below(const Arrangement& arr);

struct VertDecomp {
  std::vector<Trapezoid> traps;
  std::vector<uint32_t> trap_face;                 // containing face id
  std::vector<std::vector<Point>> face_vertices;   // x-sorted per face
};

VertDecomp build_vd(const Arrangement& arr);
VertDecomp build_vd(const std::vector<Line>& lines);

struct FaceWeightSums {
  std::vector<int64_t> per_face;  // sum of weights of lines strictly below
  std::vector<int64_t> per_line;  // sum of weights of faces strictly above
};

// Weighted sums over one arrangement: line_weights per input line,
// face_weights per arrangement face.  Per-line answers are computed by the
// highest-vertex assignment with prefix/suffix sums along each line.
FaceWeightSums face_weight_sums(const Arrangement& arr,
                                const std::vector<int64_t>& line_weights,
                                const std::vector<int64_t>& face_weights);

}  // namespace hop
