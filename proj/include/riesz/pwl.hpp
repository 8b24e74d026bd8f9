#pragma once

#include "riesz/error.hpp"
#include "riesz/rational.hpp"

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace riesz {

struct Breakpoint {
  Rational t;
  Rational v;
  friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

/// Continuous piecewise-linear function on [0,1] with rational breakpoints.
///
/// Stored in canonical form: the first breakpoint sits at t = 0, the last
/// at t = 1, t strictly increases, and no interior breakpoint is collinear
/// with its neighbours. Two functions are equal iff their canonical
/// breakpoint lists are equal, so `==` is pointwise equality.
class PwlFunc {
 public:
  explicit PwlFunc(std::vector<Breakpoint> breakpoints);

  static PwlFunc constant(const Rational& value);
  /// t -> t.
  static PwlFunc identity();

  std::span<const Breakpoint> breakpoints() const noexcept { return points_; }

  /// Exact value at t; throws PreconditionError for t outside [0,1].
  Rational operator()(const Rational& t) const;

  friend bool operator==(const PwlFunc&, const PwlFunc&) = default;

  PwlFunc operator-() const;
  friend PwlFunc operator+(const PwlFunc& f, const PwlFunc& g);
  friend PwlFunc operator-(const PwlFunc& f, const PwlFunc& g);
  friend PwlFunc operator*(const Rational& s, const PwlFunc& f);

 private:
  std::vector<Breakpoint> points_;
};

Rational pwl_eval(const PwlFunc& f, const Rational& t);

/// Pointwise maximum. The result's breakpoints are drawn from both inputs
/// plus every exact crossing of the two graphs.
PwlFunc join(const PwlFunc& f, const PwlFunc& g);
/// Pointwise minimum.
PwlFunc meet(const PwlFunc& f, const PwlFunc& g);
PwlFunc abs(const PwlFunc& f);

/// f <= g everywhere on [0,1]. Exact: both sides are affine between
/// consecutive points of the merged breakpoint grid.
bool leq(const PwlFunc& f, const PwlFunc& g);
bool is_positive(const PwlFunc& f);

Rational sup_norm(const PwlFunc& f);
/// Integral of |f| over [0,1]; segments changing sign are split at their zero.
Rational l1_norm(const PwlFunc& f);
/// Largest |slope| over all segments.
Rational max_slope(const PwlFunc& f);

/// k = 1: the ramp from (0,1) to (1,0); k >= 2: 1 at 0, 0 from 1/k on.
PwlFunc tent_family(std::uint64_t k);
/// min(1, k t).
PwlFunc ramp_family(std::uint64_t k);
/// Tent supported on [i/n, (i+1)/n] (i is 0-based) with the given peak.
PwlFunc bump(std::uint64_t i, std::uint64_t n, const Rational& peak);

/// Lexicographic order on canonical breakpoint lists (dedup only).
std::strong_ordering lex_compare(const PwlFunc& f, const PwlFunc& g);

}  // namespace riesz
