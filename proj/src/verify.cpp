#include "riesz/verify.hpp"

#include "riesz/diagnostics.hpp"

#include <functional>

namespace riesz {

namespace {

using Check = std::function<std::string(Sampler&, std::size_t)>;

// An empty string means the check passed; anything else is the failure detail.
CheckResult run_check(const std::string& name, const Check& body, const VerifyOptions& o) {
  Sampler s(derive_seed(o.seed, "verify:" + name));
  try {
    std::string detail = body(s, o.trials);
    return {name, detail.empty(), detail};
  } catch (const std::exception& e) {
    return {name, false, std::string("threw: ") + e.what()};
  }
}

std::string lattice_laws(Sampler& s, std::size_t trials) {
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t n = 1 + s.below(6);
    const Element x = s.element(n), y = s.element(n), z = s.element(n);
    if (join(x, x) != x || meet(x, x) != x) return "idempotency";
    if (join(x, y) != join(y, x) || meet(x, y) != meet(y, x)) return "commutativity";
    if (join(join(x, y), z) != join(x, join(y, z))) return "join associativity";
    if (meet(meet(x, y), z) != meet(x, meet(y, z))) return "meet associativity";
    if (join(x, meet(x, y)) != x || meet(x, join(x, y)) != x) return "absorption";
    if (meet(x, join(y, z)) != join(meet(x, y), meet(x, z))) return "distributivity";
    if (meet(x, y) != -join(-x, -y)) return "meet-from-join duality";
    const auto d = abs_pos_neg(x);
    if (d.pos - d.neg != x || d.pos + d.neg != d.abs || meet(d.pos, d.neg) != Element::zero(n)) {
      return "Riesz decomposition";
    }
    if (join(x, y) + meet(x, y) != x + y) return "x v y + x ^ y = x + y";
    if (!leq(abs(x + y), abs(x) + abs(y))) return "triangle inequality";
  }
  return {};
}

std::string pwl_laws(Sampler& s, std::size_t trials) {
  for (std::size_t t = 0; t < trials / 4; ++t) {
    const PwlFunc f = s.pwl(), g = s.pwl();
    const PwlFunc j = join(f, g), m = meet(f, g);
    if (j + m != f + g) return "join + meet = f + g";
    if (!leq(f, j) || !leq(g, j) || !leq(m, f)) return "envelope bounds";
    for (int k = 0; k <= 16; ++k) {
      const Rational tt = ratio(k, 16);
      if (j(tt) != max(f(tt), g(tt))) return "pointwise join";
    }
  }
  return {};
}

std::string closure_identity(Sampler& s, std::size_t trials) {
  for (std::size_t t = 0; t < trials / 2; ++t) {
    const std::size_t n = 1 + s.below(4);
    std::vector<Element> v;
    for (std::size_t i = 0, m = 1 + s.below(6); i < m; ++i) v.push_back(s.element(n));
    const FiniteSet a(v);
    if (finite_sup(a) != finite_sup(sup_closure(a))) return "sup A != sup A^v";
    if (finite_inf(a) != finite_inf(inf_closure(a))) return "inf A != inf A^";
    if (inf_closure(a) != sup_closure(a.negated()).negated()) return "inf-closure duality";
  }
  return {};
}

std::string modulus_oracle(Sampler&, std::size_t) {
  const std::vector<Element> xs = {Element{1, 1, 1}, Element{1, 2, 0}, Element{2, 1, 1}};
  for (int code = 0; code < 19683; ++code) {
    std::vector<std::vector<Rational>> rows(3, std::vector<Rational>(3));
    int c = code;
    for (int i = 0; i < 9; ++i, c /= 3) rows[i / 3][i % 3] = c % 3 - 1;
    const MatrixOp t(rows);
    const MatrixOp m = modulus_matrix(t);
    for (const auto& x : xs) {
      if (apply(m, x) != modulus_rk(t, x)) return "mismatch at matrix code " + std::to_string(code);
    }
  }
  return {};
}

std::string domination_ideal(Sampler& s, std::size_t trials) {
  for (std::size_t t = 0; t < trials / 2; ++t) {
    const std::size_t n = 1 + s.below(4);
    std::vector<std::vector<Rational>> srows(n, std::vector<Rational>(n)), trows = srows;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        srows[i][j] = s.grid_value();
        trows[i][j] = s.unit_scalar() * ::abs(srows[i][j]);
      }
    }
    for (auto kind : {SpaceKind::SeqL1, SpaceKind::SeqLInf}) {
      const SpaceTag tag = SpaceTag::sequence(kind, n);
      const MatrixOp sop(srows, tag, tag), top(trows, tag, tag);
      if (!dominates(sop, top).dominates) return "constructed pair not dominated";
      if (induced_norm(top) > induced_norm(sop)) return "induced norm not monotone under domination";
    }
  }
  return {};
}

std::string expect(const ProbeReport& r, Verdict v) {
  if (r.verdict == v) return {};
  return r.probe_name + " returned " + to_string(r.verdict) + ", expected " + to_string(v);
}

}  // namespace

std::vector<CheckResult> run_invariant_suite(const VerifyOptions& o) {
  std::vector<CheckResult> out;
  out.push_back(run_check("lattice laws (dims 1-6)", lattice_laws, o));
  out.push_back(run_check("pwl envelope laws", pwl_laws, o));
  out.push_back(run_check("sup A = sup A^v and closure duality", closure_identity, o));
  out.push_back(run_check("modulus formula vs sign-vector oracle (3x3, entries -1/0/1)", modulus_oracle, o));
  out.push_back(run_check("domination implies induced-norm order", domination_ideal, o));
  out.push_back(run_check("AM identity on SeqLInf(8) and PwlSup", [&](Sampler&, std::size_t trials) {
    std::string e = expect(am_identity_check(SpaceTag::seq_linf(8), trials, o.seed), Verdict::Holds);
    return e.empty() ? expect(am_identity_check(SpaceTag::pwl_sup(), trials / 5, o.seed), Verdict::Holds) : e;
  }, o));
  out.push_back(run_check("SeqL1 defect(n) = n", [&](Sampler&, std::size_t) -> std::string {
    const std::vector<std::size_t> dims = {2, 4, 8, 16};
    SamplingSpec spec;
    spec.trials = 20;
    spec.seed = o.seed;
    const ProbeReport r = am_defect_curve(SpaceKind::SeqL1, dims, spec);
    for (const auto& p : r.series.at("witness_defect")) {
      if (p.value != Rational(static_cast<long>(p.parameter))) return "defect(" + std::to_string(p.parameter) + ")";
    }
    return expect(r, Verdict::Fails);
  }, o));
  out.push_back(run_check("projection gap identically 1", [](Sampler&, std::size_t) {
    std::string e = expect(projection_gap(16, SpaceKind::SeqLInf), Verdict::Fails);
    return e.empty() ? expect(projection_gap(16, SpaceKind::SeqL1), Verdict::Fails) : e;
  }, o));
  out.push_back(run_check("Lebesgue certificates", [](Sampler&, std::size_t) {
    std::string e = expect(lebesgue_probe(SequenceFamily::tents(), 64, pow2(-20)), Verdict::Fails);
    return e.empty() ? expect(lebesgue_probe(SequenceFamily::c0_tails(32), 32, pow2(-20)), Verdict::Holds) : e;
  }, o));
  out.push_back(run_check("Levi certificates", [](Sampler&, std::size_t) {
    std::string e = expect(levi_probe(SequenceFamily::ramps(), 64), Verdict::Fails);
    return e.empty() ? expect(levi_probe(SequenceFamily::stabilizing(Element{1, 2, 3, 4}, 3), 8), Verdict::Holds)
                     : e;
  }, o));
  out.push_back(run_check("operator transfer demos", [](Sampler&, std::size_t) {
    std::string e =
        expect(operator_levi_demo(SequenceFamily::stabilizing(Element{1, 2}, 3), Element{1, 0}, 8), Verdict::Holds);
    if (!e.empty()) return e;
    return expect(operator_lebesgue_demo(geometric_identity_seq(4), SpaceTag::seq_linf(4), 30, pow2(-20)),
                  Verdict::Holds);
  }, o));
  out.push_back(run_check("product preservation", [&](Sampler&, std::size_t) {
    PreservationParams p;
    p.sampling.trials = 50;
    p.sampling.seed = o.seed;
    std::string e = expect(product_preservation_check({SpaceTag::seq_linf(2), SpaceTag::seq_linf(3)},
                                                      PreservationProbe::Am, p),
                           Verdict::Holds);
    if (!e.empty()) return e;
    return expect(product_preservation_check({SpaceTag::seq_linf(2), SpaceTag::seq_l1(2)}, PreservationProbe::Am, p),
                  Verdict::Fails);
  }, o));
  out.push_back(run_check("identity on a product is order bounded, not nb-bounded", [](Sampler&, std::size_t) {
    return expect(nb_boundedness_probe(3, 2, {0, 1}), Verdict::Fails);
  }, o));
  return out;
}

}  // namespace riesz
