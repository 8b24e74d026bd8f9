#include <doctest.h>

#include "oracles.hpp"
#include "riesz/diagnostics.hpp"

using namespace riesz;

namespace {

const Curve& series(const ProbeReport& r, const std::string& name) { return r.series.at(name); }

}  // namespace

TEST_CASE("am_ratio") {
  const Point e1 = Element{1, 0}, e2 = Element{0, 1};
  CHECK(am_ratio(e1, e2, SpaceTag::seq_linf(2)) == 1);
  CHECK(am_ratio(e1, e2, SpaceTag::seq_l1(2)) == 2);
  CHECK(am_ratio(e1, e1, SpaceTag::seq_l1(2)) == 1);
  CHECK_THROWS(am_ratio(Element{0, 0}, Element{0, 0}, SpaceTag::seq_l1(2)));
  CHECK_THROWS(am_ratio(Element{-1, 0}, e2, SpaceTag::seq_l1(2)));
}

TEST_CASE("am identity check") {
  CHECK(am_identity_check(SpaceTag::seq_linf(8), 1000, kDefaultSeed).verdict == Verdict::Holds);
  CHECK(am_identity_check(SpaceTag::pwl_sup(), 200, kDefaultSeed).verdict == Verdict::Holds);
  const auto l1 = am_identity_check(SpaceTag::seq_l1(2), 20, kDefaultSeed);
  CHECK(l1.verdict == Verdict::Fails);
  CHECK(l1.witnesses.size() == 4);
  CHECK(rational_from_json(l1.witnesses.back().value) >= 2);
  CHECK(am_identity_check(SpaceTag::pwl_l1(), 20, kDefaultSeed).verdict == Verdict::Fails);
  CHECK_THROWS(am_identity_check(make_product({SpaceTag::seq_l1(1)}), 5, 1));
}

TEST_CASE("am defect curves") {
  const std::vector<std::size_t> dims = {2, 4, 8, 16};
  SamplingSpec spec;
  spec.trials = 40;
  const auto linf = am_defect_curve(SpaceKind::SeqLInf, dims, spec);
  CHECK(linf.verdict == Verdict::Holds);
  for (const auto& p : *linf.curve) CHECK(p.value == 1);

  const auto l1 = am_defect_curve(SpaceKind::SeqL1, dims, spec);
  CHECK(l1.verdict == Verdict::Fails);
  for (const auto& p : series(l1, "witness_defect")) CHECK(p.value == Rational(static_cast<long>(p.parameter)));
  for (const auto& p : *l1.curve) CHECK(p.value >= Rational(static_cast<long>(p.parameter)));

  const std::vector<std::size_t> tents = {2, 4};
  const auto pwl = am_defect_curve(SpaceKind::PwlL1, tents, spec);
  CHECK(pwl.verdict == Verdict::Fails);
  CHECK(series(pwl, "witness_defect").front().value == 2);
  CHECK(am_defect_curve(SpaceKind::PwlSup, tents, spec).verdict == Verdict::Holds);
}

TEST_CASE("closure max norm matches brute force on small l-inf sets") {
  // All vectors with entries in {-1, 0, 1} in dimension 2: the unit ball's
  // lattice points. Every join stays in the ball.
  std::vector<Point> ball;
  for (int a = -1; a <= 1; ++a) {
    for (int b = -1; b <= 1; ++b) ball.push_back(Element{a, b});
  }
  CHECK(closure_max_norm(ball, SpaceTag::seq_linf(2)) == 1);
  const std::vector<Point> mixed = {Element{1, -1}, Element{-1, 1}};
  CHECK(closure_max_norm(mixed, SpaceTag::seq_l1(2)) == 2);
}

TEST_CASE("lebesgue probe") {
  const auto tents = lebesgue_probe(SequenceFamily::tents(), 64, pow2(-20));
  CHECK(tents.verdict == Verdict::Fails);
  REQUIRE(tents.curve);
  CHECK(tents.curve->size() == 64);
  for (const auto& p : *tents.curve) CHECK(p.value == 1);

  const auto tails = lebesgue_probe(SequenceFamily::c0_tails(32), 32, pow2(-20));
  CHECK(tails.verdict == Verdict::Holds);
  for (const auto& p : *tails.curve) CHECK(p.value == pow2(-static_cast<int>(p.parameter)));
  CHECK(tails.curve->back().value == pow2(-32));

  const auto zero = lebesgue_probe(SequenceFamily::constant(Element{0, 0}, SpaceTag::seq_linf(2),
                                                            Monotonicity::Decreasing),
                                   5, 0);
  CHECK(zero.verdict == Verdict::Holds);

  auto broken = SequenceFamily::c0_tails(4);
  broken.generator = [](std::uint64_t k) -> Point { return Element{0, 0, k == 3 ? 1 : 0, 0}; };
  try {
    lebesgue_probe(broken, 5, 0);
    FAIL("expected an order claim violation");
  } catch (const OrderClaimViolation& e) {
    CHECK(e.index() == 3);
  }
  CHECK_THROWS(lebesgue_probe(SequenceFamily::ramps(), 4, 0));
}

TEST_CASE("levi probe") {
  const auto ramps = levi_probe(SequenceFamily::ramps(), 64);
  CHECK(ramps.verdict == Verdict::Fails);
  for (const auto& p : *ramps.curve) CHECK(p.value == Rational(static_cast<long>(p.parameter)));
  for (const auto& p : series(ramps, "sup_norm")) CHECK(p.value == 1);

  const Element target{1, Rational(1, 2), 3, 0};
  const auto fam = SequenceFamily::stabilizing(target, 3);
  const auto r = levi_probe(fam, 8);
  CHECK(r.verdict == Verdict::Holds);
  // Brute force: coordinatewise max over the family terms.
  oracle::Vec best(4, oracle::Q(0));
  for (std::uint64_t k = 1; k <= 8; ++k) {
    const Point term = fam.generator(k);
    const auto& u = std::get<Element>(term);
    for (std::size_t i = 0; i < 4; ++i) best[i] = oracle::qmax(best[i], u[i]);
  }
  CHECK(point_from_json(r.witnesses.front().value) == Point(Element(std::vector<Rational>(best.begin(), best.end()))));

  const auto constant = levi_probe(
      SequenceFamily::constant(Element{2, 1}, SpaceTag::seq_l1(2), Monotonicity::Increasing), 4);
  CHECK(constant.verdict == Verdict::Holds);
  CHECK(point_from_json(constant.witnesses.front().value) == Point(Element{2, 1}));

  auto unbounded = SequenceFamily::stabilizing(Element{1}, 2);
  unbounded.norm_bound = Rational(1, 2);
  CHECK(levi_probe(unbounded, 4).verdict == Verdict::Inconclusive);
}

TEST_CASE("projection gap") {
  for (auto kind : {SpaceKind::SeqL1, SpaceKind::SeqLInf}) {
    const auto r = projection_gap(16, kind);
    CHECK(r.verdict == Verdict::Fails);
    CHECK(r.curve->size() == 15);
    for (const auto& p : *r.curve) CHECK(p.value == 1);
  }
  const auto linf = projection_gap(16, SpaceKind::SeqLInf);
  for (const auto& p : series(linf, "pointwise_contrast")) {
    CHECK(p.value == pow2(-static_cast<int>(p.parameter) - 1));
  }
  const auto l1 = projection_gap(16, SpaceKind::SeqL1);
  for (const auto& p : series(l1, "pointwise_contrast")) {
    CHECK(p.value == pow2(-static_cast<int>(p.parameter)) - pow2(-16));
  }
  CHECK_THROWS(projection_gap(1, SpaceKind::SeqL1));
  CHECK_THROWS(projection_gap(4, SpaceKind::PwlSup));
}

TEST_CASE("product preservation") {
  PreservationParams params;
  params.sampling.trials = 60;
  const auto both = product_preservation_check({SpaceTag::seq_linf(2), SpaceTag::seq_linf(3)},
                                               PreservationProbe::Am, params);
  CHECK(both.verdict == Verdict::Holds);
  const auto mixed = product_preservation_check({SpaceTag::seq_linf(2), SpaceTag::seq_l1(2)},
                                                PreservationProbe::Am, params);
  CHECK(mixed.verdict == Verdict::Fails);
  // The canonical l1 pair sits in factor 1 with factor 0 zero.
  const Point x = point_from_json(mixed.witnesses.front().value);
  const auto& px = std::get<ProductElement>(x);
  CHECK(std::get<Element>(px.factors[0]) == Element{0, 0});

  PreservationParams levi;
  levi.k_max = 8;
  levi.families = {SequenceFamily::stabilizing(Element{1, 2}, 3),
                   SequenceFamily::stabilizing(Element{Rational(1, 2), 0, 3}, 5, SpaceKind::SeqL1)};
  const auto l = product_preservation_check({SpaceTag::seq_linf(2), SpaceTag::seq_l1(3)}, PreservationProbe::Levi,
                                            levi);
  CHECK(l.verdict == Verdict::Holds);
  CHECK(l.witnesses[0].value == l.witnesses[1].value);

  levi.families[1] = SequenceFamily::ramps();
  const auto lf = product_preservation_check({SpaceTag::seq_linf(2), SpaceTag::pwl_sup()}, PreservationProbe::Levi,
                                             levi);
  CHECK(lf.verdict == Verdict::Fails);
}

TEST_CASE("operator demos") {
  const auto r = operator_levi_demo(SequenceFamily::stabilizing(Element{1, 2}, 3), Element{1, 0}, 8);
  CHECK(r.verdict == Verdict::Holds);
  CHECK(point_from_json(r.witnesses.front().value) == Point(Element{1, 0}));
  const auto constant = operator_levi_demo(
      SequenceFamily::constant(Element{3, 1}, SpaceTag::seq_linf(2), Monotonicity::Increasing), Element{0, 2}, 4);
  CHECK(constant.verdict == Verdict::Holds);
  const auto geo = operator_levi_demo(SequenceFamily::geometric(Element{1, 1}), Element{1, 1}, 20);
  CHECK(geo.verdict == Verdict::Holds);
  CHECK(point_from_json(geo.witnesses[1].value) == Point((1 - pow2(-20)) * Element{1, 1}));
  CHECK_THROWS(operator_levi_demo(SequenceFamily::geometric(Element{1, 1}), Element{0, -1}, 4));

  const auto leb = operator_lebesgue_demo(geometric_identity_seq(4), SpaceTag::seq_linf(4), 30, pow2(-20));
  CHECK(leb.verdict == Verdict::Holds);
  for (const auto& p : series(leb, "order_unit_side")) CHECK(p.value == pow2(-static_cast<int>(p.parameter)));
  CHECK(series(leb, "induced_norm") == series(leb, "order_unit_side"));
  const auto diag = operator_lebesgue_demo(geometric_diagonal_seq(5, SpaceKind::SeqL1), SpaceTag::seq_l1(5), 20,
                                           pow2(-20));
  CHECK(diag.verdict == Verdict::Holds);
  const OperatorSeq stuck{[](std::uint64_t) { return MatrixOp({{1, 0}, {0, 1}}); }, Monotonicity::Decreasing};
  CHECK_THROWS_AS(operator_lebesgue_demo(stuck, SpaceTag::seq_linf(2), 4, 0), PreconditionError);
  const OperatorSeq negative{[](std::uint64_t k) { return Rational(-pow2(-static_cast<int>(k))) * MatrixOp(std::vector<std::vector<Rational>>{{1}}); },
                             Monotonicity::Decreasing};
  CHECK_THROWS(operator_lebesgue_demo(negative, SpaceTag::seq_linf(1), 4, 0));
}

TEST_CASE("nb boundedness probe") {
  const auto r = nb_boundedness_probe(3, 2, {0, 1});
  CHECK(r.verdict == Verdict::Fails);
  const Point dir = point_from_json(r.witnesses.front().value);
  const auto& p = std::get<ProductElement>(dir);
  CHECK(std::get<Element>(p.factors[2]) == Element{1, 0});
  CHECK(nb_boundedness_probe(3, 2, {0, 1, 2}).verdict == Verdict::Holds);
}

TEST_CASE("report rendering") {
  ProbeReport r;
  r.probe_name = "demo";
  r.verdict = Verdict::Fails;
  CHECK_THROWS(to_json(r));
  r.witnesses.push_back({"x", Json("1/2")});
  r.curve = Curve{{1, Rational(1, 3)}};
  const Json j = to_json(r);
  CHECK(j["verdict"] == "fails");
  CHECK(j["curve"][0][1] == "1/3");
  const std::string md = to_markdown(r, true);
  CHECK(md.find("| 1 | 1/3 |") != std::string::npos);
  CHECK(md.find("non-authoritative") != std::string::npos);
  CHECK(to_markdown(r).find("non-authoritative") == std::string::npos);
}
