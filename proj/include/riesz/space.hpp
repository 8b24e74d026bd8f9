#pragma once

#include "riesz/lattice.hpp"
#include "riesz/pwl.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace riesz {

enum class SpaceKind { SeqL1, SeqLInf, WeightedL1, PwlSup, PwlL1, Product };

std::string to_string(SpaceKind kind);
SpaceKind parse_space_kind(const std::string& name);

/// A concrete lattice together with its norm (or, for products, the
/// product topology). Sequence kinds live on R^dim; Pwl kinds on the
/// piecewise-linear functions over [0,1]. Products are finite and flat:
/// a factor may not itself be a product.
class SpaceTag {
 public:
  static SpaceTag seq_l1(std::size_t dim);
  static SpaceTag seq_linf(std::size_t dim);
  static SpaceTag weighted_l1(std::vector<Rational> weights);
  static SpaceTag pwl_sup();
  static SpaceTag pwl_l1();
  /// Same kind (and weights pattern for WeightedL1 is not resized).
  static SpaceTag sequence(SpaceKind kind, std::size_t dim);

  SpaceKind kind() const noexcept { return kind_; }
  /// Dimension of a sequence space; 1 for Pwl kinds; sum of factor dims
  /// for a product of sequence spaces.
  std::size_t dim() const;
  const std::vector<Rational>& weights() const noexcept { return weights_; }
  const std::vector<SpaceTag>& factors() const noexcept { return factors_; }

  bool is_product() const noexcept { return kind_ == SpaceKind::Product; }
  bool is_sequence() const noexcept;
  bool is_function() const noexcept;

  /// Human-readable, e.g. "SeqL1(4)" or "Product[SeqLInf(2), SeqL1(2)]".
  std::string name() const;

  friend bool operator==(const SpaceTag&, const SpaceTag&) = default;

 private:
  friend SpaceTag make_product(std::vector<SpaceTag> tags);
  SpaceKind kind_ = SpaceKind::SeqLInf;
  std::size_t dim_ = 1;
  std::vector<Rational> weights_;
  std::vector<SpaceTag> factors_;
};

/// Finite product with product topology and factorwise order.
SpaceTag make_product(std::vector<SpaceTag> tags);

using FactorValue = std::variant<Element, PwlFunc>;

struct ProductElement {
  std::vector<FactorValue> factors;
  friend bool operator==(const ProductElement&, const ProductElement&) = default;
};

/// Any vector of any shipped space.
using Point = std::variant<Element, PwlFunc, ProductElement>;

/// Throws DimensionMismatch if `x` does not belong to `tag`.
void require_conforms(const Point& x, const SpaceTag& tag);
bool conforms(const Point& x, const SpaceTag& tag);

Point join(const Point& x, const Point& y);
Point meet(const Point& x, const Point& y);
Point negate(const Point& x);
Point abs(const Point& x);
Point scale(const Rational& s, const Point& x);
bool leq(const Point& x, const Point& y);
bool is_positive(const Point& x);
Point zero_of(const SpaceTag& tag);
std::strong_ordering lex_compare(const Point& x, const Point& y);

/// Concatenates the coordinates of a product of sequence spaces.
Element flatten(const ProductElement& x);
/// Inverse of flatten for the given product tag.
ProductElement unflatten(const Element& x, const SpaceTag& product);
/// Coordinate range [begin, end) of factor i inside the flattened vector.
std::pair<std::size_t, std::size_t> factor_range(const SpaceTag& product, std::size_t i);

/// Lattice norm of a non-product space. Products have no single norm;
/// use is_bounded_in with a NeighborhoodSpec instead.
Rational norm(const Point& x, const SpaceTag& tag);
Rational norm(const FactorValue& x, const SpaceTag& tag);

/// A solid zero neighborhood: a closed norm ball for plain tags, or for
/// products a finite set of factor balls with every other factor free.
class NeighborhoodSpec {
 public:
  static NeighborhoodSpec ball(const Rational& radius);
  static NeighborhoodSpec product(std::map<std::size_t, Rational> factor_radii);

  bool is_ball() const noexcept { return !is_product_; }
  const Rational& radius() const;
  const std::map<std::size_t, Rational>& constraints() const noexcept { return constraints_; }

  friend bool operator==(const NeighborhoodSpec&, const NeighborhoodSpec&) = default;

 private:
  bool is_product_ = false;
  Rational radius_ = 1;
  std::map<std::size_t, Rational> constraints_;
};

/// Throws if `u` does not fit `tag` (ball vs product, factor indices).
void require_conforms(const NeighborhoodSpec& u, const SpaceTag& tag);
bool contains(const NeighborhoodSpec& u, const SpaceTag& tag, const Point& x);
/// Least lambda >= 0 with x in lambda * U (over the constrained factors).
Rational absorption_scale(const NeighborhoodSpec& u, const SpaceTag& tag, const Point& x);

/// An infinite set described by a per-parameter envelope: envelope(K) is a
/// positive element dominating |a| for every member a with parameter <= K.
/// Boundedness is decided from the envelope at checkpoints 1, 2, 4, ..., 2^10.
struct ParametricFamily {
  std::string name;
  std::function<Point(std::uint64_t)> envelope;
};

inline constexpr int kCheckpointExponent = 10;

struct UnboundedWitness {
  std::optional<std::size_t> factor;  // product factor, 0-based
  std::size_t coordinate = 0;         // 0-based; for Pwl kinds the breakpoint index
  std::vector<std::pair<std::uint64_t, Rational>> growth;  // (K, scale at K)
};

struct BoundednessVerdict {
  bool bounded = true;
  std::optional<Rational> scale;  // least lambda with A in lambda U
  std::optional<UnboundedWitness> witness;
  /// Parametric families only: the scale was read at the last checkpoint.
  bool checkpoint_limited = false;
};

BoundednessVerdict is_bounded_in(std::span<const Point> a, const NeighborhoodSpec& u,
                                 const SpaceTag& tag);
BoundednessVerdict is_bounded_in(const ParametricFamily& a, const NeighborhoodSpec& u,
                                 const SpaceTag& tag);

struct SolidityVerdict {
  bool passed = true;
  std::size_t trials = 0;
  /// First pair with |x| <= |y| but norm(x) > norm(y).
  std::optional<std::pair<Point, Point>> witness;
};

/// Randomized check that norm(x) <= norm(y) whenever |x| <= |y|.
SolidityVerdict solidity_check(const SpaceTag& tag, std::size_t trials, std::uint64_t seed);
/// Same check for an arbitrary candidate norm on R^dim.
SolidityVerdict solidity_check(const std::function<Rational(const Element&)>& candidate,
                               std::size_t dim, std::size_t trials, std::uint64_t seed);

}  // namespace riesz
