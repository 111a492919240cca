#include "hop/geom.hpp"

namespace hop {

Point shear(const Point& p, const ExactScalar& lambda) {
  return Point(p.x + Rational(lambda) * p.y, p.y);
}

Line shear(const Line& l, const ExactScalar& lambda) {
  // points (x, ax+b) map to (x + lambda(ax+b), ax+b); solving for the image
  // line gives slope a/(1+lambda*a), intercept b/(1+lambda*a).
  Rational denom = Rational(1) + Rational(lambda) * l.a;
  if (denom.is_zero())
    throw std::invalid_argument("shear: lambda makes a line vertical");
  return Line(l.a / denom, l.b / denom);
}

Segment shear(const Segment& s, const ExactScalar& lambda) {
  return Segment(shear(s.p, lambda), shear(s.q, lambda));
}

std::vector<Point> shear(const std::vector<Point>& ps,
                         const ExactScalar& lambda) {
  std::vector<Point> out;
  out.reserve(ps.size());
  for (const auto& p : ps) out.push_back(shear(p, lambda));
  return out;
}

std::vector<Line> shear(const std::vector<Line>& ls,
                        const ExactScalar& lambda) {
  std::vector<Line> out;
  out.reserve(ls.size());
  for (const auto& l : ls) out.push_back(shear(l, lambda));
  return out;
}

std::vector<Segment> shear(const std::vector<Segment>& ss,
                           const ExactScalar& lambda) {
  std::vector<Segment> out;
  out.reserve(ss.size());
  for (const auto& s : ss) out.push_back(shear(s, lambda));
  return out;
}

int sign_line_diff_at(const Line& l1, const Line& l2, const RawFrac& x) {
  stats::bump();
  const ExactScalar& a1n = l1.a.num();
  const ExactScalar& a1d = l1.a.den();
  const ExactScalar& a2n = l2.a.num();
  const ExactScalar& a2d = l2.a.den();
  const ExactScalar& b1n = l1.b.num();
  const ExactScalar& b1d = l1.b.den();
  const ExactScalar& b2n = l2.b.num();
  const ExactScalar& b2d = l2.b.den();
  ExactScalar da = a1n * a2d - a2n * a1d;
  ExactScalar db = b1n * b2d - b2n * b1d;
  ExactScalar v = da * x.n * (b1d * b2d) + db * x.d * (a1d * a2d);
  return v.sign();
}

namespace {

// crossing abscissa of two non-parallel lines, unreduced
RawFrac raw_meet_x(const Line& l1, const Line& l2) {
  ExactScalar n = (l2.b.num() * l1.b.den() - l1.b.num() * l2.b.den()) *
                  (l1.a.den() * l2.a.den());
  ExactScalar d = (l1.a.num() * l2.a.den() - l2.a.num() * l1.a.den()) *
                  (l1.b.den() * l2.b.den());
  return RawFrac(std::move(n), std::move(d));
}

}  // namespace

bool line_crosses_band(const Line& line, const Line* bot, const Line* top,
                       const Rational* xl, const Rational* xr) {
  stats::bump();
  // interval of x where the line sits strictly inside (bot, top),
  // intersected with (xl, xr); crossing iff the result is nonempty
  bool lo_inf = true, hi_inf = true;
  RawFrac lo, hi;
  auto clip_above = [&](const Line& bound) -> bool {
    // keep {x : line(x) > bound(x)}
    if (line.a == bound.a) return line.b > bound.b;  // all or nothing
    RawFrac x0 = raw_meet_x(line, bound);
    if (line.a > bound.a) {
      if (lo_inf || x0.cmp(lo) > 0) { lo = std::move(x0); lo_inf = false; }
    } else {
      if (hi_inf || x0.cmp(hi) < 0) { hi = std::move(x0); hi_inf = false; }
    }
    return true;
  };
  auto clip_below = [&](const Line& bound) -> bool {
    // keep {x : line(x) < bound(x)}
    if (line.a == bound.a) return line.b < bound.b;
    RawFrac x0 = raw_meet_x(line, bound);
    if (line.a < bound.a) {
      if (lo_inf || x0.cmp(lo) > 0) { lo = std::move(x0); lo_inf = false; }
    } else {
      if (hi_inf || x0.cmp(hi) < 0) { hi = std::move(x0); hi_inf = false; }
    }
    return true;
  };
  if (bot && !clip_above(*bot)) return false;
  if (top && !clip_below(*top)) return false;
  if (xl) {
    RawFrac x(*xl);
    if (lo_inf || x.cmp(lo) > 0) { lo = std::move(x); lo_inf = false; }
  }
  if (xr) {
    RawFrac x(*xr);
    if (hi_inf || x.cmp(hi) < 0) { hi = std::move(x); hi_inf = false; }
  }
  if (lo_inf || hi_inf) return true;
  return lo.cmp(hi) < 0;
}

bool Trapezoid::contains(const Point& q, Perturb dir) const {
  bool up = dir == Perturb::Up;
  if (xl) {
    int c = q.x.cmp(*xl);
    if (up ? c < 0 : c <= 0) return false;
  }
  if (xr) {
    int c = q.x.cmp(*xr);
    if (up ? c >= 0 : c > 0) return false;
  }
  if (bottom && side_perturbed(q, *bottom, dir) != SideSign::Above)
    return false;
  if (top && side_perturbed(q, *top, dir) != SideSign::Below) return false;
  return true;
}

Trapezoid::LineClass Trapezoid::classify(const Line& l) const {
  const Line* bot_p = bottom ? &*bottom : nullptr;
  const Line* top_p = top ? &*top : nullptr;
  const Rational* xl_p = xl ? &*xl : nullptr;
  const Rational* xr_p = xr ? &*xr : nullptr;
  if (line_crosses_band(l, bot_p, top_p, xl_p, xr_p))
    return LineClass::Crossing;
  RawFrac xhat;
  if (xl && xr)
    xhat = RawFrac(xl->num() * xr->den() + xr->num() * xl->den(),
                   xl->den() * xr->den() * ExactScalar(2));
  else if (xl)
    xhat = RawFrac(xl->num() + xl->den(), xl->den());
  else if (xr)
    xhat = RawFrac(xr->num() - xr->den(), xr->den());
  // a non-crossing line keeps one side of each boundary across the open span
  if (bottom && sign_line_diff_at(l, *bottom, xhat) <= 0)
    return LineClass::Below;
  if (top && sign_line_diff_at(l, *top, xhat) >= 0) return LineClass::Above;
  // unbounded side: nothing can be entirely on it
  if (!bottom) return LineClass::Above;
  return LineClass::Below;
}

}  // namespace hop
