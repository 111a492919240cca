#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hop/exact.hpp"
#include "hop/stats.hpp"

namespace hop {

enum class SideSign { Below = -1, On = 0, Above = 1 };

inline SideSign side_of_int(int s) {
  return s < 0 ? SideSign::Below : (s > 0 ? SideSign::Above : SideSign::On);
}

// Points carry rational coordinates: inputs are integral, but duals of
// rational lines and arrangement vertices are not.
struct Point {
  Rational x, y;

  Point() = default;
  Point(Rational px, Rational py) : x(std::move(px)), y(std::move(py)) {}
  Point(long long px, long long py) : x(px), y(py) {}
  Point(long px, long py) : x(px), y(py) {}
  Point(int px, int py) : x(px), y(py) {}

  bool operator==(const Point& o) const { return x == o.x && y == o.y; }
  // lexicographic (x, then y)
  int cmp(const Point& o) const {
    int c = x.cmp(o.x);
    return c ? c : y.cmp(o.y);
  }
  bool operator<(const Point& o) const { return cmp(o) < 0; }
  std::string to_string() const {
    return "(" + x.to_string() + ", " + y.to_string() + ")";
  }
};

// Non-vertical line y = a*x + b.  Vertical lines are unrepresentable.
struct Line {
  Rational a, b;

  Line() = default;
  Line(Rational slope, Rational intercept)
      : a(std::move(slope)), b(std::move(intercept)) {}

  Rational eval(const Rational& x) const { return a * x + b; }
  bool operator==(const Line& o) const { return a == o.a && b == o.b; }
  int cmp(const Line& o) const {
    int c = a.cmp(o.a);
    return c ? c : b.cmp(o.b);
  }
  bool operator<(const Line& o) const { return cmp(o) < 0; }
  std::string to_string() const {
    return "y = " + a.to_string() + "*x + " + b.to_string();
  }
};

// Segment with endpoints in lexicographic order, p != q.
struct Segment {
  Point p, q;

  Segment() = default;
  Segment(Point u, Point v) {
    int c = u.cmp(v);
    if (c == 0) throw std::invalid_argument("Segment: equal endpoints");
    if (c < 0) {
      p = std::move(u);
      q = std::move(v);
    } else {
      p = std::move(v);
      q = std::move(u);
    }
  }

  bool vertical() const { return p.x == q.x; }
  bool operator==(const Segment& o) const { return p == o.p && q == o.q; }
};

// Exact sign of p.y - (l.a*p.x + l.b).  The one predicate everything else
// reduces to; counted for instrumentation.
inline SideSign side(const Point& p, const Line& l) {
  stats::bump();
  // sign of (py*ad*bd - an*px_num*bd/pd... ) computed by clearing denominators
  // of a, b and p.x, p.y pairwise; all dens positive.
  const ExactScalar& an = l.a.num();
  const ExactScalar& ad = l.a.den();
  const ExactScalar& bn = l.b.num();
  const ExactScalar& bd = l.b.den();
  // value = py - (an/ad)px - bn/bd; multiply by ad*bd*pxd*pyd (>0):
  // py_n * ad * bd * pxd  -  an * px_n * bd * pyd  -  bn * ad * pxd * pyd
  const ExactScalar& pxn = p.x.num();
  const ExactScalar& pxd = p.x.den();
  const ExactScalar& pyn = p.y.num();
  const ExactScalar& pyd = p.y.den();
  ExactScalar lhs = pyn * ad * bd * pxd;
  ExactScalar rhs = an * pxn * bd * pyd + bn * ad * pxd * pyd;
  return side_of_int(lhs.cmp(rhs));
}

// Fast path used by the brute-force kernels: integral coordinates and
// integral line coefficients, all within int64.
inline int side_sign_i64(long long px, long long py, long long a,
                         long long b) {
  stats::bump();
  __int128 v = static_cast<__int128>(py) -
               static_cast<__int128>(a) * px - static_cast<__int128>(b);
  return v < 0 ? -1 : (v > 0 ? 1 : 0);
}

// Duality p = (p1, p2) <-> line y = p1*x - p2; preserves above/below.
inline Line dual_point(const Point& p) { return Line(p.x, -p.y); }
inline Point dual_line(const Line& l) { return Point(l.a, -l.b); }

// x-coordinate of the intersection, absent for equal slopes.
inline std::optional<Rational> meet_x(const Line& l1, const Line& l2) {
  if (l1.a == l2.a) return std::nullopt;
  return (l2.b - l1.b) / (l1.a - l2.a);
}

inline std::optional<Point> meet(const Line& l1, const Line& l2) {
  auto x = meet_x(l1, l2);
  if (!x) return std::nullopt;
  return Point(*x, l1.eval(*x));
}

// Shear (x, y) -> (x + lambda*y, y).  Incidences are always preserved.
// The point-line residue y - (ax+b) scales by 1/(1 + lambda*a) under the
// map, so above/below is preserved exactly when 1 + lambda*a > 0 for the
// line in question (an image line with 1 + lambda*a < 0 has its sides
// swapped even though it is non-vertical).
Point shear(const Point& p, const ExactScalar& lambda);
Line shear(const Line& l, const ExactScalar& lambda);  // throws if image vertical
Segment shear(const Segment& s, const ExactScalar& lambda);

std::vector<Point> shear(const std::vector<Point>& ps,
                         const ExactScalar& lambda);
std::vector<Line> shear(const std::vector<Line>& ls,
                        const ExactScalar& lambda);
std::vector<Segment> shear(const std::vector<Segment>& ss,
                           const ExactScalar& lambda);

// Perturbation direction for boundary tie-breaks: Up maps q to
// (q.x + eps^2, q.y + eps), Down to (q.x - eps^2, q.y - eps).
enum class Perturb { Down = -1, Up = 1 };

// Unreduced fraction n/d with d > 0; comparisons cross-multiply, so hot
// predicates never pay a gcd normalization.
struct RawFrac {
  ExactScalar n, d;
  RawFrac() : n(0), d(1) {}
  RawFrac(ExactScalar nn, ExactScalar dd) : n(std::move(nn)), d(std::move(dd)) {
    if (d.sign() < 0) {
      n = -n;
      d = -d;
    }
  }
  explicit RawFrac(const Rational& r) : n(r.num()), d(r.den()) {}
  int cmp(const RawFrac& o) const {
    stats::bump();
    return (n * o.d).cmp(o.n * d);
  }
};

// sign of (l1 - l2) evaluated at x
int sign_line_diff_at(const Line& l1, const Line& l2, const RawFrac& x);

// True when line crosses the open region bounded below/above by bot/top
// (nullptr = unbounded) between abscissae xl and xr (nullptr = unbounded).
bool line_crosses_band(const Line& line, const Line* bot, const Line* top,
                       const Rational* xl, const Rational* xr);

// Trapezoid bounded by non-vertical lines and vertical walls; absent fields
// mean unbounded in that direction.
struct Trapezoid {
  std::optional<Line> top, bottom;
  std::optional<Rational> xl, xr;

  bool contains(const Point& q, Perturb dir) const;
  // classification of a line against the open cell
  enum class LineClass { Crossing, Below, Above };
  LineClass classify(const Line& l) const;
};

// Side of the perturbed point: ties on the line resolve to Above for Up
// (the epsilon term dominates the slope * eps^2 term) and Below for Down.
inline SideSign side_perturbed(const Point& p, const Line& l, Perturb dir) {
  SideSign s = side(p, l);
  if (s != SideSign::On) return s;
  return dir == Perturb::Up ? SideSign::Above : SideSign::Below;
}

}  // namespace hop
