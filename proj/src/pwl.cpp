#include "riesz/pwl.hpp"

#include <algorithm>

namespace riesz {

namespace {

bool collinear(const Breakpoint& a, const Breakpoint& b, const Breakpoint& c) {
  return (b.v - a.v) * (c.t - a.t) == (c.v - a.v) * (b.t - a.t);
}

std::vector<Breakpoint> canonicalize(std::vector<Breakpoint> pts) {
  std::vector<Breakpoint> out;
  out.reserve(pts.size());
  for (auto& p : pts) {
    while (out.size() >= 2 && collinear(out[out.size() - 2], out.back(), p)) out.pop_back();
    out.push_back(std::move(p));
  }
  return out;
}

// Value of the affine piece through a and b at t.
Rational interpolate(const Breakpoint& a, const Breakpoint& b, const Rational& t) {
  return a.v + (b.v - a.v) * (t - a.t) / (b.t - a.t);
}

std::vector<Rational> merged_grid(const PwlFunc& f, const PwlFunc& g) {
  std::vector<Rational> ts;
  ts.reserve(f.breakpoints().size() + g.breakpoints().size());
  for (const auto& p : f.breakpoints()) ts.push_back(p.t);
  for (const auto& p : g.breakpoints()) ts.push_back(p.t);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  return ts;
}

// Pointwise max (take_max) or min of f and g, inserting graph crossings.
PwlFunc envelope(const PwlFunc& f, const PwlFunc& g, bool take_max) {
  const auto grid = merged_grid(f, g);
  std::vector<Breakpoint> out;
  out.reserve(grid.size() * 2);
  Rational prev_t, prev_d;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Rational& t = grid[i];
    const Rational fv = f(t);
    const Rational gv = g(t);
    const Rational d = fv - gv;
    if (i > 0 && sgn(d) * sgn(prev_d) < 0) {
      // f - g is affine on [prev_t, t] and changes sign strictly inside.
      const Rational cross = prev_t + (t - prev_t) * prev_d / (prev_d - d);
      out.push_back({cross, f(cross)});
    }
    out.push_back({t, (take_max == (d >= 0)) ? fv : gv});
    prev_t = t;
    prev_d = d;
  }
  return PwlFunc(std::move(out));
}

template <class Op>
PwlFunc pointwise(const PwlFunc& f, const PwlFunc& g, Op op) {
  const auto grid = merged_grid(f, g);
  std::vector<Breakpoint> out;
  out.reserve(grid.size());
  for (const auto& t : grid) out.push_back({t, op(f(t), g(t))});
  return PwlFunc(std::move(out));
}

}  // namespace

PwlFunc::PwlFunc(std::vector<Breakpoint> breakpoints) {
  if (breakpoints.size() < 2) throw PreconditionError("pwl function needs at least two breakpoints");
  if (breakpoints.front().t != 0 || breakpoints.back().t != 1) {
    throw PreconditionError("pwl breakpoints must start at t=0 and end at t=1");
  }
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i - 1].t < breakpoints[i].t)) {
      throw PreconditionError("pwl breakpoints must be strictly increasing in t");
    }
  }
  points_ = canonicalize(std::move(breakpoints));
}

PwlFunc PwlFunc::constant(const Rational& value) { return PwlFunc({{0, value}, {1, value}}); }

PwlFunc PwlFunc::identity() { return PwlFunc({{0, 0}, {1, 1}}); }

Rational PwlFunc::operator()(const Rational& t) const {
  if (t < 0 || t > 1) throw PreconditionError("pwl evaluation outside [0,1]: t = " + to_string(t));
  auto it = std::upper_bound(points_.begin(), points_.end(), t,
                             [](const Rational& x, const Breakpoint& p) { return x < p.t; });
  if (it == points_.end()) return points_.back().v;
  const Breakpoint& hi = *it;
  const Breakpoint& lo = *(it - 1);
  return interpolate(lo, hi, t);
}

PwlFunc PwlFunc::operator-() const {
  PwlFunc r = *this;
  for (auto& p : r.points_) p.v = -p.v;
  return r;
}

PwlFunc operator+(const PwlFunc& f, const PwlFunc& g) {
  return pointwise(f, g, [](const Rational& a, const Rational& b) { return Rational(a + b); });
}

PwlFunc operator-(const PwlFunc& f, const PwlFunc& g) {
  return pointwise(f, g, [](const Rational& a, const Rational& b) { return Rational(a - b); });
}

PwlFunc operator*(const Rational& s, const PwlFunc& f) {
  std::vector<Breakpoint> pts(f.breakpoints().begin(), f.breakpoints().end());
  for (auto& p : pts) p.v *= s;
  return PwlFunc(std::move(pts));
}

Rational pwl_eval(const PwlFunc& f, const Rational& t) { return f(t); }

PwlFunc join(const PwlFunc& f, const PwlFunc& g) { return envelope(f, g, true); }

PwlFunc meet(const PwlFunc& f, const PwlFunc& g) { return envelope(f, g, false); }

PwlFunc abs(const PwlFunc& f) { return join(f, -f); }

bool leq(const PwlFunc& f, const PwlFunc& g) {
  const auto grid = merged_grid(f, g);
  return std::all_of(grid.begin(), grid.end(), [&](const Rational& t) { return f(t) <= g(t); });
}

bool is_positive(const PwlFunc& f) {
  return std::all_of(f.breakpoints().begin(), f.breakpoints().end(),
                     [](const Breakpoint& p) { return sgn(p.v) >= 0; });
}

Rational sup_norm(const PwlFunc& f) {
  Rational best = 0;
  for (const auto& p : f.breakpoints()) best = max(best, riesz::Rational(::abs(p.v)));
  return best;
}

Rational l1_norm(const PwlFunc& f) {
  Rational total = 0;
  const auto pts = f.breakpoints();
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const Rational width = pts[i].t - pts[i - 1].t;
    const Rational a = pts[i - 1].v;
    const Rational b = pts[i].v;
    if (sgn(a) * sgn(b) >= 0) {
      total += width * (::abs(a) + ::abs(b)) / 2;
    } else {
      // Two triangles meeting at the zero; widths split as |a| : |b|.
      total += width * (a * a + b * b) / (2 * (::abs(a) + ::abs(b)));
    }
  }
  return total;
}

Rational max_slope(const PwlFunc& f) {
  Rational best = 0;
  const auto pts = f.breakpoints();
  for (std::size_t i = 1; i < pts.size(); ++i) {
    best = max(best, Rational(::abs((pts[i].v - pts[i - 1].v) / (pts[i].t - pts[i - 1].t))));
  }
  return best;
}

PwlFunc tent_family(std::uint64_t k) {
  if (k == 0) throw PreconditionError("tent_family: k must be >= 1");
  if (k == 1) return PwlFunc({{0, 1}, {1, 0}});
  return PwlFunc({{0, 1}, {ratio(1, static_cast<std::int64_t>(k)), 0}, {1, 0}});
}

PwlFunc ramp_family(std::uint64_t k) {
  if (k == 0) throw PreconditionError("ramp_family: k must be >= 1");
  if (k == 1) return PwlFunc::identity();
  return PwlFunc({{0, 0}, {ratio(1, static_cast<std::int64_t>(k)), 1}, {1, 1}});
}

PwlFunc bump(std::uint64_t i, std::uint64_t n, const Rational& peak) {
  if (n == 0 || i >= n) throw PreconditionError("bump: need 0 <= i < n");
  const auto si = static_cast<std::int64_t>(i);
  const auto sn = static_cast<std::int64_t>(n);
  const Rational lo = ratio(si, sn);
  const Rational mid = ratio(2 * si + 1, 2 * sn);
  const Rational hi = ratio(si + 1, sn);
  std::vector<Breakpoint> pts;
  if (lo != 0) pts.push_back({0, 0});
  pts.push_back({lo, 0});
  pts.push_back({mid, peak});
  pts.push_back({hi, 0});
  if (hi != 1) pts.push_back({1, 0});
  return PwlFunc(std::move(pts));
}

std::strong_ordering lex_compare(const PwlFunc& f, const PwlFunc& g) {
  const auto a = f.breakpoints();
  const auto b = g.breakpoints();
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (int c = cmp(a[i].t, b[i].t); c != 0) return c <=> 0;
    if (int c = cmp(a[i].v, b[i].v); c != 0) return c <=> 0;
  }
  return a.size() <=> b.size();
}

}  // namespace riesz
