#include <doctest.h>

#include "oracles.hpp"
#include "riesz/pwl.hpp"

using namespace riesz;

namespace {

using Pts = std::vector<std::pair<oracle::Q, oracle::Q>>;

Pts pts(const PwlFunc& f) {
  Pts out;
  for (const auto& b : f.breakpoints()) out.emplace_back(b.t, b.v);
  return out;
}

PwlFunc random_pwl(oracle::Rng& rng) {
  std::vector<Breakpoint> b{{0, rng.grid()}};
  int last = 0;
  for (int i = 0, m = rng.uniform(0, 3); i < m; ++i) {
    if (last >= 15) break;
    last = rng.uniform(last + 1, 15);
    b.push_back({oracle::q(last, 16), rng.grid()});
  }
  b.push_back({1, rng.grid()});
  return PwlFunc(b);
}

Pts negate(Pts p) {
  for (auto& [t, v] : p) v = -v;
  return p;
}

}  // namespace

TEST_CASE("construction and canonical form") {
  CHECK_THROWS_AS(PwlFunc({{0, 1}}), PreconditionError);
  CHECK_THROWS_AS(PwlFunc({{Rational(1, 2), 1}, {1, 1}}), PreconditionError);
  CHECK_THROWS_AS(PwlFunc({{0, 1}, {Rational(1, 2), 1}, {Rational(1, 2), 2}, {1, 1}}), PreconditionError);
  const PwlFunc f({{0, 0}, {Rational(1, 2), Rational(1, 2)}, {1, 1}});
  CHECK(f == PwlFunc::identity());
  CHECK(f.breakpoints().size() == 2);
  CHECK_THROWS_AS(f(Rational(3, 2)), PreconditionError);
}

TEST_CASE("join and meet against dense sampling") {
  oracle::Rng rng(21);
  for (int trial = 0; trial < 120; ++trial) {
    const PwlFunc f = random_pwl(rng), g = random_pwl(rng);
    const PwlFunc j = join(f, g), m = meet(f, g);
    const Pts pf = pts(f), pg = pts(g), pj = pts(j), pm = pts(m);
    for (int k = 0; k <= 1000; ++k) {
      const oracle::Q t = oracle::q(k, 1000);
      const oracle::Q a = oracle::interpolate(pf, t), b = oracle::interpolate(pg, t);
      REQUIRE(oracle::interpolate(pj, t) == oracle::qmax(a, b));
      REQUIRE(oracle::interpolate(pm, t) == oracle::qmin(a, b));
    }
    CHECK(j + m == f + g);
  }
}

TEST_CASE("crossing points are exact") {
  const PwlFunc f({{0, 0}, {1, 1}});
  const PwlFunc g({{0, 1}, {1, 0}});
  const PwlFunc j = join(f, g);
  CHECK(j(Rational(1, 2)) == Rational(1, 2));
  CHECK(j.breakpoints().size() == 3);
  CHECK(j.breakpoints()[1].t == Rational(1, 2));
  const PwlFunc h({{0, 0}, {1, 3}});
  const PwlFunc c = PwlFunc::constant(1);
  CHECK(join(h, c).breakpoints()[1].t == Rational(1, 3));
}

TEST_CASE("norms against independent integration") {
  oracle::Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const PwlFunc f = random_pwl(rng);
    const Pts p = pts(f);
    CHECK(l1_norm(f) == oracle::positive_area(p) + oracle::positive_area(negate(p)));
    oracle::Q peak = 0;
    for (const auto& [t, v] : p) peak = oracle::qmax(peak, oracle::qabs(v));
    CHECK(sup_norm(f) == peak);
  }
  CHECK(l1_norm(PwlFunc({{0, -1}, {1, 1}})) == Rational(1, 2));
  CHECK(sup_norm(PwlFunc({{0, -3}, {1, 1}})) == 3);
}

TEST_CASE("order and abs") {
  const PwlFunc f({{0, -1}, {1, 1}});
  CHECK(abs(f)(0) == 1);
  CHECK(abs(f)(Rational(1, 2)) == 0);
  CHECK(is_positive(abs(f)));
  CHECK_FALSE(is_positive(f));
  CHECK(leq(meet(f, PwlFunc::constant(0)), f));
  // Touching at an interior point only.
  const PwlFunc v({{0, 1}, {Rational(1, 2), 0}, {1, 1}});
  CHECK(leq(PwlFunc::constant(0), v));
  CHECK_FALSE(leq(PwlFunc::constant(Rational(1, 100)), v));
}

TEST_CASE("families") {
  for (std::uint64_t k = 1; k <= 64; ++k) {
    const PwlFunc t = tent_family(k), r = ramp_family(k);
    CHECK(sup_norm(t) == 1);
    CHECK(t(0) == 1);
    CHECK(sup_norm(r) == 1);
    CHECK(max_slope(r) == Rational(static_cast<long>(k)));
    if (k > 1) {
      CHECK(leq(tent_family(k), tent_family(k - 1)));
      CHECK(leq(ramp_family(k - 1), ramp_family(k)));
      CHECK(t(Rational(1, static_cast<long>(k))) == 0);
    }
  }
  const PwlFunc b = bump(1, 4, 8);
  CHECK(b(Rational(3, 8)) == 8);
  CHECK(b(Rational(1, 4)) == 0);
  CHECK(l1_norm(b) == 1);
}
