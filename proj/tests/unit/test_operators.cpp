#include <doctest.h>

#include "oracles.hpp"
#include "riesz/operators.hpp"

using namespace riesz;

namespace {

oracle::Mat random_mat(oracle::Rng& rng, std::size_t r, std::size_t c) {
  oracle::Mat m(r, oracle::Vec(c));
  for (auto& row : m) {
    for (auto& e : row) e = rng.grid();
  }
  return m;
}

std::vector<std::vector<Rational>> rows(const oracle::Mat& m) {
  std::vector<std::vector<Rational>> out;
  for (const auto& r : m) out.emplace_back(r.begin(), r.end());
  return out;
}

Element el(const oracle::Vec& v) { return Element(std::vector<Rational>(v.begin(), v.end())); }

}  // namespace

TEST_CASE("matrix construction and application") {
  const MatrixOp t({{1, -2}, {-3, 4}});
  CHECK(t.rows() == 2);
  CHECK(t.domain() == SpaceTag::seq_linf(2));
  CHECK(apply(t, Element{1, 1}) == Element{-1, 1});
  CHECK(t.column(1) == Element{-2, 4});
  CHECK_THROWS(MatrixOp({{1, 2}, {3}}));
  CHECK_THROWS(MatrixOp({}));
  CHECK_THROWS(MatrixOp({{1, 2}}, SpaceTag::seq_l1(3), SpaceTag::seq_l1(1)));
  CHECK_THROWS_AS(apply(t, Element{1, 2, 3}), DimensionMismatch);
  CHECK(MatrixOp::identity(SpaceTag::seq_l1(3)).domain() == SpaceTag::seq_l1(3));
  CHECK_THROWS(MatrixOp::identity(SpaceTag::pwl_sup()));
}

TEST_CASE("modulus: closed form, sign-vector enumeration and grid oracle agree") {
  const MatrixOp fixture({{1, -2}, {-3, 4}});
  CHECK(modulus_matrix(fixture) == MatrixOp({{1, 2}, {3, 4}}));
  CHECK(modulus_rk(fixture, Element{1, 1}) == Element{3, 7});

  oracle::Rng rng(17);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t r = rng.uniform(1, 3), c = rng.uniform(1, 4);
    const auto m = random_mat(rng, r, c);
    const auto x = rng.pos_vec(c);
    const MatrixOp t(rows(m));
    const Element expected = el(oracle::rk_grid(m, x));
    CHECK(modulus_rk(t, el(x)) == expected);
    CHECK(apply(modulus_matrix(t), el(x)) == expected);
  }
  CHECK_THROWS(modulus_rk(fixture, Element{1, -1}));
  std::vector<std::vector<Rational>> wide(1, std::vector<Rational>(21, 1));
  CHECK_THROWS_AS(modulus_rk(MatrixOp(wide), Element::constant(21, 1)), PreconditionError);
}

TEST_CASE("positivity, operator order and domination") {
  CHECK(is_positive(MatrixOp({{0, 1}, {2, 0}})).positive);
  const auto v = is_positive(MatrixOp({{0, 1}, {2, -1}}));
  CHECK_FALSE(v.positive);
  CHECK(v.witness_basis == std::optional<std::size_t>(1));
  CHECK(is_positive(RankOneOp({1, 0}, Element{1, 2})).positive);
  CHECK_FALSE(is_positive(RankOneOp({1, -1}, Element{1, 2})).positive);
  CHECK(is_positive(RankOneOp({-1, 0}, Element{0, 0})).positive);
  CHECK(operator_leq(MatrixOp({{0, 0}, {0, 0}}), MatrixOp({{1, 0}, {0, 1}})));
  CHECK_FALSE(operator_leq(MatrixOp({{1, 0}, {0, 1}}), MatrixOp({{0, 0}, {0, 0}})));

  const MatrixOp s({{2, -1}, {0, 3}});
  CHECK(dominates(s, MatrixOp({{-2, 1}, {0, -3}})).dominates);
  const auto d = dominates(s, MatrixOp({{1, 1}, {1, 0}}));
  CHECK_FALSE(d.dominates);
  CHECK(d.witness_entry == std::optional<std::pair<std::size_t, std::size_t>>({1, 0}));
}

TEST_CASE("induced norms against extreme-point enumeration") {
  oracle::Rng rng(23);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = rng.uniform(1, 5), m = rng.uniform(1, 5);
    const auto a = random_mat(rng, n, m);
    CHECK(induced_norm(MatrixOp(rows(a), SpaceTag::seq_l1(m), SpaceTag::seq_l1(n))) == oracle::induced_l1(a));
    CHECK(induced_norm(MatrixOp(rows(a), SpaceTag::seq_linf(m), SpaceTag::seq_linf(n))) == oracle::induced_linf(a));
  }
  CHECK_THROWS_AS(induced_norm(MatrixOp(std::vector<std::vector<Rational>>{{1}}, SpaceTag::seq_l1(1), SpaceTag::seq_linf(1))), PreconditionError);
  // l-inf -> l1: the sign vector (1,-1) gives |1+1| + |1+1| = 4.
  CHECK(ball_image_norm(MatrixOp({{1, -1}, {-1, 1}}, SpaceTag::seq_linf(2), SpaceTag::seq_l1(2))) == 4);
}

TEST_CASE("ideal echo: domination orders induced norms") {
  oracle::Rng rng(29);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = rng.uniform(1, 4);
    const auto a = random_mat(rng, n, n);
    oracle::Mat b = a;
    for (auto& row : b) {
      for (auto& e : row) e *= oracle::q(rng.uniform(-8, 8), 8);
    }
    for (auto kind : {SpaceKind::SeqL1, SpaceKind::SeqLInf}) {
      const SpaceTag tag = SpaceTag::sequence(kind, n);
      const MatrixOp s(rows(a), tag, tag), t(rows(b), tag, tag);
      REQUIRE(dominates(s, t).dominates);
      CHECK(induced_norm(t) <= induced_norm(s));
    }
  }
}

TEST_CASE("rank-one operators") {
  const RankOneOp r({1, 0}, Element{1, 2});
  CHECK(apply(r, Element{1, 0}) == Element{1, 2});
  CHECK(apply(r, Element{3, 5}) == Element{3, 6});
  CHECK(r.to_matrix() == MatrixOp({{1, 0}, {2, 0}}));
  CHECK_THROWS(RankOneOp({}, Element{1}));
}

TEST_CASE("order bounded image and projections") {
  const MatrixOp t({{1, -2}, {0, 3}});
  const auto box = order_bounded_image(t, Element{1, 1});
  CHECK(box.hi == Element{3, 3});
  CHECK(box.lo == Element{-3, -3});
  const MatrixOp p = basis_projection(2, 4);
  CHECK(apply(p, Element{1, 2, 3, 4}) == Element{1, 2, 0, 0});
  CHECK_THROWS(basis_projection(0, 4));
  CHECK_THROWS(basis_projection(5, 4));
  for (std::size_t n = 1; n < 8; ++n) {
    for (auto kind : {SpaceKind::SeqL1, SpaceKind::SeqLInf}) {
      CHECK(induced_norm(MatrixOp::identity(SpaceTag::sequence(kind, 8)) - basis_projection(n, 8, kind)) == 1);
    }
  }
}

TEST_CASE("nb-boundedness under product neighborhoods") {
  const SpaceTag p = make_product({SpaceTag::seq_linf(2), SpaceTag::seq_linf(2), SpaceTag::seq_linf(2)});
  const MatrixOp id = MatrixOp::identity(p);
  const auto partial = nb_bounded_check(id, NeighborhoodSpec::product({{0, 1}, {1, 1}}));
  CHECK_FALSE(partial.bounded);
  CHECK(partial.witness_factor == std::optional<std::size_t>(2));
  CHECK(partial.witness_coordinate == std::optional<std::size_t>(0));
  CHECK(*partial.witness_image == Element::unit(6, 4));
  const auto full = nb_bounded_check(id, NeighborhoodSpec::product({{0, 1}, {1, 1}, {2, 1}}));
  CHECK(full.bounded);
  const auto ball = nb_bounded_check(MatrixOp({{1, 2}, {0, 1}}), NeighborhoodSpec::ball(2));
  CHECK(ball.bounded);
  CHECK(*ball.scale == 6);
  // A free factor that the operator ignores does not break boundedness.
  std::vector<std::vector<Rational>> keep_first(2, std::vector<Rational>(2, 0));
  keep_first[0][0] = 1;
  const SpaceTag q = make_product({SpaceTag::seq_linf(1), SpaceTag::seq_linf(1)});
  CHECK(nb_bounded_check(MatrixOp(keep_first, q, q), NeighborhoodSpec::product({{0, 1}})).bounded);
}

TEST_CASE("monotone operator sequences") {
  const OperatorSeq down{[](std::uint64_t k) { return pow2(-static_cast<int>(k)) * MatrixOp({{1, 0}, {0, 1}}); },
                         Monotonicity::Decreasing};
  CHECK(operator_seq_monotone_check(down, 10).holds);
  const OperatorSeq flip{[](std::uint64_t k) {
                           return (k % 2 ? Rational(1) : Rational(-1)) * MatrixOp({{1, 0}, {0, 1}});
                         },
                         Monotonicity::Decreasing};
  const auto v = operator_seq_monotone_check(flip, 5);
  CHECK_FALSE(v.holds);
  CHECK(v.first_violation == std::optional<std::uint64_t>(3));
  CHECK_THROWS(operator_seq_monotone_check(down, 1));
}
