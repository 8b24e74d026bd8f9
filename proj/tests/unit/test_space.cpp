#include <doctest.h>

#include "oracles.hpp"
#include "riesz/json_io.hpp"
#include "riesz/space.hpp"

using namespace riesz;

TEST_CASE("space tags") {
  CHECK(SpaceTag::seq_l1(4).name() == "SeqL1(4)");
  CHECK(SpaceTag::pwl_sup().dim() == 1);
  const SpaceTag p = make_product({SpaceTag::seq_linf(2), SpaceTag::seq_l1(3)});
  CHECK(p.is_product());
  CHECK(p.dim() == 5);
  CHECK(p.name() == "Product[SeqLInf(2), SeqL1(3)]");
  CHECK(factor_range(p, 1) == std::pair<std::size_t, std::size_t>{2, 5});
  CHECK_THROWS(make_product({}));
  CHECK_THROWS(make_product({p, SpaceTag::seq_l1(1)}));
  CHECK_THROWS(SpaceTag::weighted_l1({1, 0}));
  CHECK(parse_space_kind("PwlL1") == SpaceKind::PwlL1);
  CHECK_THROWS(parse_space_kind("Lp"));
}

TEST_CASE("norms against coordinate loops") {
  oracle::Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = rng.uniform(1, 6);
    const auto v = rng.vec(n);
    const Point x = Element(std::vector<Rational>(v.begin(), v.end()));
    CHECK(norm(x, SpaceTag::seq_l1(n)) == oracle::norm1(v));
    CHECK(norm(x, SpaceTag::seq_linf(n)) == oracle::norminf(v));
  }
  const Point e = Element{1, -2, 3};
  CHECK(norm(e, SpaceTag::weighted_l1({1, Rational(1, 2), 2})) == 8);
  CHECK_THROWS_AS(norm(e, SpaceTag::seq_l1(2)), DimensionMismatch);
  CHECK_THROWS_AS(norm(e, make_product({SpaceTag::seq_l1(3)})), PreconditionError);
}

TEST_CASE("product lattice operations act factorwise") {
  const SpaceTag p = make_product({SpaceTag::seq_linf(2), SpaceTag::pwl_sup()});
  const Point x = ProductElement{{Element{1, -1}, PwlFunc::identity()}};
  const Point y = ProductElement{{Element{0, 2}, PwlFunc::constant(Rational(1, 2))}};
  const auto j = std::get<ProductElement>(join(x, y));
  CHECK(std::get<Element>(j.factors[0]) == Element{1, 2});
  CHECK(std::get<PwlFunc>(j.factors[1])(Rational(1, 4)) == Rational(1, 2));
  CHECK(std::get<PwlFunc>(j.factors[1])(Rational(3, 4)) == Rational(3, 4));
  CHECK(conforms(x, p));
  CHECK_FALSE(conforms(Point(Element{1, 2}), p));
  CHECK(leq(meet(x, y), x));
  CHECK(is_positive(abs(x)));
  CHECK(zero_of(p) == scale(0, x));
  const SpaceTag q = make_product({SpaceTag::seq_linf(2), SpaceTag::seq_l1(1)});
  const Element flat{1, 2, 3};
  CHECK(flatten(unflatten(flat, q)) == flat);
}

TEST_CASE("neighborhoods and absorption") {
  const SpaceTag p = make_product({SpaceTag::seq_linf(2), SpaceTag::seq_l1(2), SpaceTag::seq_linf(1)});
  const auto u = NeighborhoodSpec::product({{0, 1}, {1, 2}});
  const Point x = ProductElement{{Element{Rational(1, 2), 0}, Element{3, 1}, Element{1000}}};
  CHECK(absorption_scale(u, p, x) == 2);
  CHECK_FALSE(contains(u, p, x));
  CHECK(contains(u, p, scale(Rational(1, 2), x)));
  CHECK_THROWS(absorption_scale(NeighborhoodSpec::ball(1), p, x));
  CHECK_THROWS(require_conforms(NeighborhoodSpec::product({{3, 1}}), p));
  CHECK_THROWS(NeighborhoodSpec::ball(0));
  CHECK(absorption_scale(NeighborhoodSpec::ball(2), SpaceTag::seq_l1(2), Point(Element{1, 3})) == 2);
}

TEST_CASE("boundedness of finite sets and parametric families") {
  const SpaceTag l1 = SpaceTag::seq_l1(4);
  const std::vector<Point> pts = {Element{1, 0, 0, 0}, Element{0, 2, 0, 1}};
  const auto v = is_bounded_in(pts, NeighborhoodSpec::ball(1), l1);
  CHECK(v.bounded);
  CHECK(*v.scale == 3);

  // Running joins of the basis of R^4 grow linearly in l1, not in l-inf.
  const ParametricFamily growing{"k * e1", [](std::uint64_t k) -> Point {
                                   return Element{Rational(static_cast<long>(k)), 0, 0};
                                 }};
  const auto g = is_bounded_in(growing, NeighborhoodSpec::ball(1), SpaceTag::seq_linf(3));
  CHECK_FALSE(g.bounded);
  REQUIRE(g.witness);
  CHECK(g.witness->coordinate == 0);
  CHECK(g.witness->growth.back().second == 1024);

  const ParametricFamily settling{"(1 - 2^-k) e2", [](std::uint64_t k) -> Point {
                                    return Element{0, 1 - pow2(-static_cast<int>(k))};
                                  }};
  const auto s = is_bounded_in(settling, NeighborhoodSpec::ball(1), SpaceTag::seq_linf(2));
  CHECK(s.bounded);
  CHECK(s.checkpoint_limited);
  CHECK_THROWS(is_bounded_in(ParametricFamily{"nothing", {}}, NeighborhoodSpec::ball(1), SpaceTag::seq_linf(2)));

  // Growth in a free factor makes the family unbounded.
  const SpaceTag p = make_product({SpaceTag::seq_linf(1), SpaceTag::seq_linf(1)});
  const ParametricFamily free_growth{"free", [](std::uint64_t k) -> Point {
                                       return ProductElement{{Element{1}, Element{Rational(static_cast<long>(k))}}};
                                     }};
  const auto f = is_bounded_in(free_growth, NeighborhoodSpec::product({{0, 1}}), p);
  CHECK_FALSE(f.bounded);
  CHECK(f.witness->factor == std::optional<std::size_t>(1));
}

TEST_CASE("solidity") {
  for (const auto& tag : {SpaceTag::seq_l1(3), SpaceTag::seq_linf(3), SpaceTag::pwl_sup(), SpaceTag::pwl_l1(),
                          SpaceTag::weighted_l1({1, 2, Rational(1, 3)})}) {
    CHECK(solidity_check(tag, 200, 7).passed);
  }
  const auto bad = solidity_check([](const Element& x) { return Rational(::abs(x[0] - x[1])); }, 2, 500, 7);
  CHECK_FALSE(bad.passed);
  REQUIRE(bad.witness);
}

TEST_CASE("json round trips") {
  const Point e = Element{Rational(1, 3), -2};
  CHECK(point_from_json(to_json(e)) == e);
  const Point f = PwlFunc({{0, 1}, {Rational(1, 2), -1}, {1, 0}});
  CHECK(point_from_json(to_json(f)) == f);
  const Point p = ProductElement{{Element{1}, PwlFunc::identity()}};
  CHECK(point_from_json(to_json(p)) == p);
  const SpaceTag t = make_product({SpaceTag::weighted_l1({1, Rational(1, 2)}), SpaceTag::pwl_l1()});
  CHECK(space_tag_from_json(to_json(t)) == t);
  const auto u = NeighborhoodSpec::product({{1, Rational(3, 2)}});
  CHECK(neighborhood_from_json(to_json(u)) == u);
  CHECK(rational_from_json(Json(4)) == 4);
  CHECK_THROWS_AS(rational_from_json(Json("1/0")), ParseError);
  CHECK_THROWS_AS(point_from_json(Json::parse(R"([["0","1"],["1/2","0"]])")), ParseError);
  CHECK_THROWS_AS(space_tag_from_json(Json::parse(R"({"kind":"SeqL1"})")), ParseError);
}
