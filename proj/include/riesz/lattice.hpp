#pragma once

#include "riesz/error.hpp"
#include "riesz/rational.hpp"

#include <compare>
#include <cstddef>
#include <set>
#include <span>
#include <vector>

namespace riesz {

/// Point of R^n (n >= 1) under the coordinatewise order.
class Element {
 public:
  explicit Element(std::vector<Rational> coords);
  Element(std::initializer_list<Rational> coords);

  static Element zero(std::size_t dim);
  /// Standard basis vector e_i, 0-based index.
  static Element unit(std::size_t dim, std::size_t i);
  static Element constant(std::size_t dim, const Rational& value);

  std::size_t dim() const noexcept { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  std::span<const Rational> coords() const noexcept { return coords_; }

  friend bool operator==(const Element&, const Element&) = default;

  Element operator-() const;
  friend Element operator+(const Element& x, const Element& y);
  friend Element operator-(const Element& x, const Element& y);
  friend Element operator*(const Rational& s, const Element& x);

 private:
  std::vector<Rational> coords_;
};

void require_same_dim(const Element& x, const Element& y);

/// Total lexicographic order on coordinates; only used for canonical
/// set membership, unrelated to the lattice order.
std::strong_ordering lex_compare(const Element& x, const Element& y);

struct LexLess {
  bool operator()(const Element& x, const Element& y) const { return lex_compare(x, y) < 0; }
};

Element join(const Element& x, const Element& y);
Element meet(const Element& x, const Element& y);

struct Decomposition {
  Element abs;
  Element pos;
  Element neg;
};

Decomposition abs_pos_neg(const Element& x);
Element abs(const Element& x);

/// x <= y coordinatewise.
bool leq(const Element& x, const Element& y);
/// x >= 0.
bool is_positive(const Element& x);

/// Finite set of equal-dimension elements, sorted lexicographically with
/// duplicates removed at construction.
class FiniteSet {
 public:
  FiniteSet() = default;
  explicit FiniteSet(std::vector<Element> elements);
  FiniteSet(std::initializer_list<Element> elements);

  bool empty() const noexcept { return elements_.empty(); }
  std::size_t size() const noexcept { return elements_.size(); }
  /// Throws PreconditionError on an empty set.
  std::size_t dim() const;
  /// How many input elements were dropped as duplicates.
  std::size_t duplicates_removed() const noexcept { return duplicates_removed_; }
  bool contains(const Element& x) const;
  /// Subset in the set-theoretic sense.
  bool is_subset_of(const FiniteSet& other) const;

  std::span<const Element> elements() const noexcept { return elements_; }
  auto begin() const noexcept { return elements_.begin(); }
  auto end() const noexcept { return elements_.end(); }

  friend bool operator==(const FiniteSet& a, const FiniteSet& b) { return a.elements_ == b.elements_; }

  FiniteSet negated() const;

 private:
  std::vector<Element> elements_;
  std::size_t duplicates_removed_ = 0;
};

inline constexpr std::size_t kDefaultClosureCap = 4096;

/// Thrown when a closure grows past its cap. Carries what was built so far.
class ClosureOverflow : public Error {
 public:
  ClosureOverflow(const std::string& what, FiniteSet partial)
      : Error(what), partial_(std::move(partial)) {}
  const FiniteSet& partial() const noexcept { return partial_; }
  bool truncated() const noexcept { return true; }

 private:
  FiniteSet partial_;
};

/// All finite joins a_1 v ... v a_k of members of `a`. Built as the set of
/// subset maxima, one generator at a time: after step i the working set is
/// exactly the maxima of nonempty subsets of the first i generators.
FiniteSet sup_closure(const FiniteSet& a, std::size_t cap = kDefaultClosureCap);
/// All finite meets; dual of sup_closure.
FiniteSet inf_closure(const FiniteSet& a, std::size_t cap = kDefaultClosureCap);

Element finite_sup(const FiniteSet& a);
Element finite_inf(const FiniteSet& a);

/// Membership in the solid hull of a finite set: some b in B has |x| <= |b|.
bool solid_hull_contains(const FiniteSet& b, const Element& x);

bool is_upward_directed(const FiniteSet& a);
bool is_downward_directed(const FiniteSet& a);

template <class T>
struct ClosureResult {
  std::vector<T> elements;  // sorted by the dedup order
  bool truncated = false;
};

/// Generic subset-maxima closure, shared with the function lattice.
/// `join_op` is the lattice operation, `less` a strict total order for
/// dedup. Stops as soon as more than `cap` distinct elements exist.
template <class T, class JoinOp, class Less>
ClosureResult<T> join_closure(std::span<const T> generators, JoinOp join_op, Less less,
                              std::size_t cap) {
  std::set<T, Less> closure(less);
  for (const T& g : generators) {
    std::vector<T> snapshot(closure.begin(), closure.end());
    closure.insert(g);
    for (const T& c : snapshot) {
      if (closure.size() > cap) break;
      closure.insert(join_op(c, g));
    }
    if (closure.size() > cap) return {{closure.begin(), closure.end()}, true};
  }
  return {{closure.begin(), closure.end()}, false};
}

}  // namespace riesz
