#include "riesz/lattice.hpp"

#include <algorithm>

namespace riesz {

Element::Element(std::vector<Rational> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw PreconditionError("zero-dimensional lattice elements are not allowed");
}

Element::Element(std::initializer_list<Rational> coords)
    : Element(std::vector<Rational>(coords)) {}

Element Element::zero(std::size_t dim) { return constant(dim, Rational(0)); }

Element Element::unit(std::size_t dim, std::size_t i) {
  if (i >= dim) throw PreconditionError("basis index out of range");
  Element e = zero(dim);
  e.coords_[i] = 1;
  return e;
}

Element Element::constant(std::size_t dim, const Rational& value) {
  return Element(std::vector<Rational>(dim, value));
}

Element Element::operator-() const {
  Element r = *this;
  for (auto& c : r.coords_) c = -c;
  return r;
}

Element operator+(const Element& x, const Element& y) {
  require_same_dim(x, y);
  Element r = x;
  for (std::size_t i = 0; i < r.dim(); ++i) r.coords_[i] += y.coords_[i];
  return r;
}

Element operator-(const Element& x, const Element& y) {
  require_same_dim(x, y);
  Element r = x;
  for (std::size_t i = 0; i < r.dim(); ++i) r.coords_[i] -= y.coords_[i];
  return r;
}

Element operator*(const Rational& s, const Element& x) {
  Element r = x;
  for (auto& c : r.coords_) c *= s;
  return r;
}

void require_same_dim(const Element& x, const Element& y) {
  if (x.dim() != y.dim()) {
    throw DimensionMismatch("incompatible spaces: dim " + std::to_string(x.dim()) + " vs " +
                            std::to_string(y.dim()));
  }
}

std::strong_ordering lex_compare(const Element& x, const Element& y) {
  if (x.dim() != y.dim()) return x.dim() <=> y.dim();
  for (std::size_t i = 0; i < x.dim(); ++i) {
    const int c = cmp(x[i], y[i]);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

namespace {

template <class Pick>
Element combine(const Element& x, const Element& y, Pick pick) {
  require_same_dim(x, y);
  std::vector<Rational> out;
  out.reserve(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) out.push_back(pick(x[i], y[i]));
  return Element(std::move(out));
}

}  // namespace

Element join(const Element& x, const Element& y) {
  return combine(x, y, [](const Rational& a, const Rational& b) { return max(a, b); });
}

Element meet(const Element& x, const Element& y) {
  return combine(x, y, [](const Rational& a, const Rational& b) { return min(a, b); });
}

Decomposition abs_pos_neg(const Element& x) {
  const Element zero = Element::zero(x.dim());
  return {join(x, -x), join(x, zero), join(-x, zero)};
}

Element abs(const Element& x) { return join(x, -x); }

bool leq(const Element& x, const Element& y) {
  require_same_dim(x, y);
  for (std::size_t i = 0; i < x.dim(); ++i) {
    if (x[i] > y[i]) return false;
  }
  return true;
}

bool is_positive(const Element& x) {
  return std::all_of(x.coords().begin(), x.coords().end(), [](const Rational& c) { return sgn(c) >= 0; });
}

FiniteSet::FiniteSet(std::vector<Element> elements) : elements_(std::move(elements)) {
  for (const auto& e : elements_) {
    if (e.dim() != elements_.front().dim()) throw DimensionMismatch("finite set mixes dimensions");
  }
  std::sort(elements_.begin(), elements_.end(), LexLess{});
  const auto before = elements_.size();
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  duplicates_removed_ = before - elements_.size();
}

FiniteSet::FiniteSet(std::initializer_list<Element> elements)
    : FiniteSet(std::vector<Element>(elements)) {}

std::size_t FiniteSet::dim() const {
  if (elements_.empty()) throw PreconditionError("empty finite set has no dimension");
  return elements_.front().dim();
}

bool FiniteSet::contains(const Element& x) const {
  return std::binary_search(elements_.begin(), elements_.end(), x, LexLess{});
}

bool FiniteSet::is_subset_of(const FiniteSet& other) const {
  return std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(),
                       elements_.end(), LexLess{});
}

FiniteSet FiniteSet::negated() const {
  std::vector<Element> out;
  out.reserve(elements_.size());
  for (const auto& e : elements_) out.push_back(-e);
  return FiniteSet(std::move(out));
}

namespace {

void require_nonempty(const FiniteSet& a, const char* op) {
  if (a.empty()) throw PreconditionError(std::string(op) + " requires a nonempty set");
}

template <class Op>
FiniteSet closure_with(const FiniteSet& a, std::size_t cap, Op op, const char* name) {
  require_nonempty(a, name);
  auto result = join_closure<Element>(a.elements(), op, LexLess{}, cap);
  FiniteSet built(std::move(result.elements));
  if (result.truncated) {
    throw ClosureOverflow(std::string(name) + ": closure exceeds cap of " + std::to_string(cap),
                          std::move(built));
  }
  return built;
}

}  // namespace

FiniteSet sup_closure(const FiniteSet& a, std::size_t cap) {
  return closure_with(a, cap, [](const Element& x, const Element& y) { return join(x, y); },
                      "sup_closure");
}

FiniteSet inf_closure(const FiniteSet& a, std::size_t cap) {
  return closure_with(a, cap, [](const Element& x, const Element& y) { return meet(x, y); },
                      "inf_closure");
}

Element finite_sup(const FiniteSet& a) {
  require_nonempty(a, "finite_sup");
  Element s = a.elements().front();
  for (const auto& e : a) s = join(s, e);
  return s;
}

Element finite_inf(const FiniteSet& a) {
  require_nonempty(a, "finite_inf");
  Element s = a.elements().front();
  for (const auto& e : a) s = meet(s, e);
  return s;
}

bool solid_hull_contains(const FiniteSet& b, const Element& x) {
  if (!b.empty() && b.dim() != x.dim()) throw DimensionMismatch("solid hull: dimension mismatch");
  const Element ax = abs(x);
  return std::any_of(b.begin(), b.end(), [&](const Element& e) { return leq(ax, abs(e)); });
}

namespace {

template <class Bound, class Cmp>
bool directed(const FiniteSet& a, Bound bound, Cmp below) {
  require_nonempty(a, "directedness check");
  const auto elems = a.elements();
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = i + 1; j < elems.size(); ++j) {
      const Element target = bound(elems[i], elems[j]);
      const bool found = std::any_of(elems.begin(), elems.end(),
                                     [&](const Element& c) { return below(target, c); });
      if (!found) return false;
    }
  }
  return true;
}

}  // namespace

bool is_upward_directed(const FiniteSet& a) {
  return directed(
      a, [](const Element& x, const Element& y) { return join(x, y); },
      [](const Element& t, const Element& c) { return leq(t, c); });
}

bool is_downward_directed(const FiniteSet& a) {
  return directed(
      a, [](const Element& x, const Element& y) { return meet(x, y); },
      [](const Element& t, const Element& c) { return leq(c, t); });
}

}  // namespace riesz
