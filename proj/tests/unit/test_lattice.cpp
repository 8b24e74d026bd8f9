#include <doctest.h>

#include "oracles.hpp"
#include "riesz/lattice.hpp"

using namespace riesz;

namespace {

Element el(const oracle::Vec& v) { return Element(std::vector<Rational>(v.begin(), v.end())); }
oracle::Vec vec(const Element& x) { return {x.coords().begin(), x.coords().end()}; }

}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(to_string(parse_rational("-6/4")) == "-3/2");
  CHECK(to_string(parse_rational("7")) == "7");
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("1.5"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
  CHECK(pow2(-3) == Rational(1, 8));
  CHECK(ratio(4, -6) == Rational(-2, 3));
}

TEST_CASE("join and meet") {
  const Element x{1, -2, 3};
  const Element y{0, 5, -1};
  CHECK(join(x, y) == Element{1, 5, 3});
  CHECK(meet(x, y) == Element{0, -2, -1});
  CHECK(join(Element{1, -2}, Element{0, 5}) == Element{1, 5});
  CHECK_THROWS_AS(join(Element{1, 2}, Element{1, 2, 3}), DimensionMismatch);
  CHECK_THROWS_AS(Element(std::vector<Rational>{}), PreconditionError);
}

TEST_CASE("lattice laws against coordinate loops") {
  oracle::Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = rng.uniform(1, 6);
    const auto a = rng.vec(n), b = rng.vec(n), c = rng.vec(n);
    const Element x = el(a), y = el(b), z = el(c);
    REQUIRE(vec(join(x, y)) == oracle::vmax(a, b));
    REQUIRE(vec(meet(x, y)) == oracle::vmin(a, b));
    CHECK(join(join(x, y), z) == join(x, join(y, z)));
    CHECK(meet(x, join(y, z)) == join(meet(x, y), meet(x, z)));
    CHECK(meet(x, y) == -join(-x, -y));
    CHECK(join(x, y) + meet(x, y) == x + y);
    const auto d = abs_pos_neg(x);
    CHECK(d.pos == join(x, Element::zero(n)));
    CHECK(d.neg == join(-x, Element::zero(n)));
    CHECK(d.abs == d.pos + d.neg);
    CHECK(leq(meet(x, y), join(x, y)));
    CHECK(leq(x, y) == (oracle::vmax(a, b) == b));
  }
}

TEST_CASE("abs, positivity and order") {
  CHECK(abs(Element{-1, 2, 0}) == Element{1, 2, 0});
  CHECK(is_positive(Element{0, Rational(1, 3)}));
  CHECK_FALSE(is_positive(Element{0, Rational(-1, 3)}));
  CHECK(leq(Element{0, 1}, Element{0, 2}));
  CHECK_FALSE(leq(Element{1, 0}, Element{0, 2}));
}

TEST_CASE("finite set canonical form") {
  const FiniteSet a({Element{1, 2}, Element{0, 0}, Element{1, 2}});
  CHECK(a.size() == 2);
  CHECK(a.duplicates_removed() == 1);
  CHECK(a.contains(Element{0, 0}));
  CHECK(a.dim() == 2);
  CHECK_THROWS(FiniteSet({Element{1}, Element{1, 2}}));
  CHECK_THROWS(FiniteSet().dim());
}

TEST_CASE("sup closure matches subset enumeration") {
  oracle::Rng rng(5);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = rng.uniform(1, 4);
    const std::size_t m = rng.uniform(1, 7);
    std::vector<oracle::Vec> raw;
    std::vector<Element> els;
    for (std::size_t i = 0; i < m; ++i) {
      raw.push_back(rng.vec(n));
      els.push_back(el(raw.back()));
    }
    const FiniteSet a(els);
    std::vector<Element> expected;
    for (const auto& v : oracle::subset_joins(raw)) expected.push_back(el(v));
    CHECK(sup_closure(a) == FiniteSet(expected));
    CHECK(finite_sup(sup_closure(a)) == finite_sup(a));
    CHECK(inf_closure(a) == sup_closure(a.negated()).negated());
    CHECK(a.is_subset_of(sup_closure(a)));
  }
}

TEST_CASE("closure cap") {
  std::vector<Element> basis;
  for (std::size_t i = 0; i < 14; ++i) basis.push_back(Element::unit(14, i));
  CHECK_THROWS_AS(sup_closure(FiniteSet(basis), 100), ClosureOverflow);
  try {
    sup_closure(FiniteSet(basis), 100);
  } catch (const ClosureOverflow& e) {
    CHECK(e.truncated());
    CHECK(e.partial().size() > 100);
  }
  CHECK(sup_closure(FiniteSet({Element{1, 0}, Element{0, 1}})).size() == 3);
}

TEST_CASE("solid hull and directedness") {
  const FiniteSet b({Element{2, 1}, Element{0, 3}});
  CHECK(solid_hull_contains(b, Element{-2, 1}));
  CHECK(solid_hull_contains(b, Element{0, -3}));
  CHECK_FALSE(solid_hull_contains(b, Element{2, 2}));
  CHECK_FALSE(is_upward_directed(FiniteSet({Element{1, 0}, Element{0, 1}})));
  CHECK(is_upward_directed(FiniteSet({Element{1, 0}, Element{0, 1}, Element{1, 1}})));
  CHECK(is_downward_directed(FiniteSet({Element{1, 0}, Element{0, 1}, Element{0, 0}})));
}
