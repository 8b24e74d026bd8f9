#include "riesz/diagnostics.hpp"

#include <algorithm>
#include <sstream>

namespace riesz {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::string to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::Tents: return "tents";
    case FamilyKind::Ramps: return "ramps";
    case FamilyKind::C0Tails: return "c0_tails";
    case FamilyKind::Custom: return "custom";
  }
  return "?";
}

void check_report(const ProbeReport& r) {
  if (r.verdict == Verdict::Fails && r.witnesses.empty()) {
    throw Error("probe " + r.probe_name + " reported failure without a witness");
  }
}

namespace {

Json curve_json(const Curve& c) {
  Json out = Json::array();
  for (const auto& p : c) out.push_back(Json::array({p.parameter, to_string(p.value)}));
  return out;
}

std::string md_table(const std::string& title, const Curve& c, bool approx) {
  std::ostringstream os;
  os << "\n**" << title << "**\n\n| parameter | value |" << (approx ? " approx (non-authoritative) |" : "")
     << "\n|---|---|" << (approx ? "---|" : "") << "\n";
  for (const auto& p : c) {
    os << "| " << p.parameter << " | " << to_string(p.value) << " |";
    if (approx) os << " ~" << to_decimal(p.value, 10) << " |";
    os << "\n";
  }
  return os.str();
}

}  // namespace

Json to_json(const ProbeReport& r) {
  check_report(r);
  Json witnesses = Json::array();
  for (const auto& w : r.witnesses) witnesses.push_back(Json{{"label", w.label}, {"value", w.value}});
  Json series = Json::object();
  for (const auto& [name, c] : r.series) series[name] = curve_json(c);
  return Json{{"probe_name", r.probe_name},
              {"verdict", to_string(r.verdict)},
              {"witnesses", witnesses},
              {"curve", r.curve ? curve_json(*r.curve) : Json(nullptr)},
              {"series", series},
              {"notes", r.notes},
              {"seed", r.seed},
              {"config_hash", r.config_hash}};
}

std::string to_markdown(const ProbeReport& r, bool approx) {
  std::ostringstream os;
  os << "## " << r.probe_name << "\n\n";
  os << "- verdict: **" << to_string(r.verdict) << "**\n";
  os << "- seed: " << r.seed << "\n";
  if (!r.config_hash.empty()) os << "- config hash: `" << r.config_hash << "`\n";
  for (const auto& n : r.notes) os << "- " << n << "\n";
  if (r.curve) os << md_table("curve", *r.curve, approx);
  for (const auto& [name, c] : r.series) os << md_table(name, c, approx);
  if (!r.witnesses.empty()) {
    os << "\n**witnesses**\n\n";
    for (const auto& w : r.witnesses) os << "- " << w.label << ": `" << w.value.dump() << "`\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Families

SequenceFamily SequenceFamily::tents() {
  SequenceFamily f;
  f.kind = FamilyKind::Tents;
  f.name = "tents";
  f.generator = [](std::uint64_t k) -> Point { return tent_family(k); };
  f.order_claim = Monotonicity::Decreasing;
  f.space = SpaceTag::pwl_sup();
  f.norm_bound = Rational(1);
  return f;
}

SequenceFamily SequenceFamily::ramps() {
  SequenceFamily f;
  f.kind = FamilyKind::Ramps;
  f.name = "ramps";
  f.generator = [](std::uint64_t k) -> Point { return ramp_family(k); };
  f.order_claim = Monotonicity::Increasing;
  f.space = SpaceTag::pwl_sup();
  f.norm_bound = Rational(1);
  return f;
}

SequenceFamily SequenceFamily::c0_tails(std::size_t dim) {
  SequenceFamily f;
  f.kind = FamilyKind::C0Tails;
  f.name = "c0_tails";
  f.generator = [dim](std::uint64_t k) -> Point {
    std::vector<Rational> c(dim, Rational(0));
    for (std::size_t i = 0; i < dim; ++i) {
      if (i + 1 >= k) c[i] = pow2(-static_cast<int>(i + 1));
    }
    return Element(std::move(c));
  };
  f.order_claim = Monotonicity::Decreasing;
  f.space = SpaceTag::seq_linf(dim);
  f.norm_bound = Rational(1, 2);
  f.declared_limit = Element::zero(dim);
  return f;
}

SequenceFamily SequenceFamily::constant(Point value, SpaceTag space, Monotonicity claim) {
  require_conforms(value, space);
  SequenceFamily f;
  f.name = "constant";
  f.generator = [value](std::uint64_t) { return value; };
  f.order_claim = claim;
  f.space = std::move(space);
  f.declared_limit = std::move(value);
  return f;
}

SequenceFamily SequenceFamily::stabilizing(Element target, std::uint64_t steps, SpaceKind kind) {
  if (steps == 0) throw PreconditionError("stabilizing family needs steps >= 1");
  SequenceFamily f;
  f.name = "stabilizing";
  f.space = SpaceTag::sequence(kind, target.dim());
  f.generator = [target, steps](std::uint64_t k) -> Point {
    const auto num = static_cast<std::int64_t>(std::min(k, steps));
    return ratio(num, static_cast<std::int64_t>(steps)) * target;
  };
  f.order_claim = Monotonicity::Increasing;
  f.norm_bound = norm(Point(target), f.space);
  f.declared_limit = std::move(target);
  return f;
}

SequenceFamily SequenceFamily::geometric(Element target, SpaceKind kind) {
  SequenceFamily f;
  f.name = "geometric";
  f.space = SpaceTag::sequence(kind, target.dim());
  f.generator = [target](std::uint64_t k) -> Point {
    return (Rational(1) - pow2(-static_cast<int>(k))) * target;
  };
  f.order_claim = Monotonicity::Increasing;
  f.norm_bound = norm(Point(target), f.space);
  f.declared_limit = std::move(target);
  return f;
}

// ---------------------------------------------------------------------------
// AM probes

Rational am_ratio(const Point& x, const Point& y, const SpaceTag& tag) {
  if (!is_positive(x) || !is_positive(y)) throw PreconditionError("am_ratio: inputs must be positive");
  const Rational nx = norm(x, tag);
  const Rational ny = norm(y, tag);
  const Rational denom = max(nx, ny);
  if (sgn(denom) == 0) throw PreconditionError("am_ratio: both inputs are zero");
  return norm(join(x, y), tag) / denom;
}

namespace {

struct PointLess {
  bool operator()(const Point& a, const Point& b) const { return lex_compare(a, b) < 0; }
};

// Canonical disjointly supported unit vectors of a norm tag.
std::vector<Point> canonical_disjoint_set(const SpaceTag& tag, std::size_t n) {
  std::vector<Point> out;
  if (tag.is_function()) {
    // Unit sup norm peak 1; unit L1 norm needs peak 2n on a base of 1/n.
    const Rational peak = tag.kind() == SpaceKind::PwlL1 ? Rational(2 * static_cast<long>(n)) : Rational(1);
    for (std::size_t i = 0; i < n; ++i) out.emplace_back(bump(i, n, peak));
    return out;
  }
  for (std::size_t i = 0; i < std::min(n, tag.dim()); ++i) {
    Element e = Element::unit(tag.dim(), i);
    if (tag.kind() == SpaceKind::WeightedL1) e = (Rational(1) / tag.weights()[i]) * e;
    out.emplace_back(std::move(e));
  }
  return out;
}

Point into_unit_ball(const Point& x, const SpaceTag& tag) {
  const Rational n = norm(x, tag);
  return n > 1 ? scale(Rational(1) / n, x) : x;
}

Witness witness(std::string label, Json value) { return {std::move(label), std::move(value)}; }

Json points_json(std::span<const Point> pts) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back(to_json(p));
  return a;
}

}  // namespace

Rational closure_max_norm(std::span<const Point> set, const SpaceTag& tag, std::size_t cap) {
  if (set.empty()) throw PreconditionError("closure_max_norm: empty set");
  const bool all_positive = std::all_of(set.begin(), set.end(), [](const Point& p) { return is_positive(p); });
  if (all_positive) {
    Point top = set.front();
    for (const auto& p : set) top = join(top, p);
    return norm(top, tag);
  }
  auto closure = join_closure<Point>(set, [](const Point& a, const Point& b) { return join(a, b); },
                                     PointLess{}, cap);
  if (closure.truncated) throw PreconditionError("closure_max_norm: closure exceeds cap");
  Rational best = 0;
  for (const auto& c : closure.elements) best = max(best, norm(c, tag));
  return best;
}

ProbeReport am_defect_curve(SpaceKind kind, std::span<const std::size_t> dims, const SamplingSpec& sampling) {
  if (kind == SpaceKind::Product) throw PreconditionError("am_defect_curve needs a norm family");
  if (dims.empty()) throw PreconditionError("am_defect_curve: empty dimension range");
  ProbeReport r;
  r.probe_name = "am_defect_curve";
  r.seed = sampling.seed;
  Curve defect, witness_defect;
  for (std::size_t n : dims) {
    if (n == 0) throw PreconditionError("am_defect_curve: dimensions must be positive");
    const SpaceTag tag = (kind == SpaceKind::PwlSup || kind == SpaceKind::PwlL1)
                             ? SpaceTag::sequence(kind, 1)
                             : SpaceTag::sequence(kind, n);
    const auto canon = canonical_disjoint_set(tag, n);
    const Rational w = closure_max_norm(canon, tag);
    Rational d = w;
    Sampler s(sampling, "am_defect_curve:" + to_string(kind) + ":" + std::to_string(n));
    for (std::size_t trial = 0; trial < sampling.trials; ++trial) {
      std::vector<Point> b;
      for (std::size_t i = 0; i < sampling.set_size; ++i) b.push_back(into_unit_ball(s.point(tag), tag));
      d = max(d, closure_max_norm(b, tag));
    }
    const auto p = static_cast<std::int64_t>(n);
    defect.push_back({p, d});
    witness_defect.push_back({p, w});
  }
  const bool flat = std::all_of(defect.begin(), defect.end(), [](const CurvePoint& c) { return c.value == 1; });
  bool growing = witness_defect.size() >= 2;
  for (std::size_t i = 1; i < witness_defect.size(); ++i) {
    if (!(witness_defect[i].value > witness_defect[i - 1].value)) growing = false;
  }
  if (flat) {
    r.verdict = Verdict::Holds;
  } else if (growing) {
    r.verdict = Verdict::Fails;
    const std::size_t n = dims.back();
    const SpaceTag tag = (kind == SpaceKind::PwlSup || kind == SpaceKind::PwlL1)
                             ? SpaceTag::sequence(kind, 1)
                             : SpaceTag::sequence(kind, n);
    const auto canon = canonical_disjoint_set(tag, n);
    Point top = canon.front();
    for (const auto& c : canon) top = join(top, c);
    r.witnesses.push_back(witness("unit-norm disjoint set B at n=" + std::to_string(n), points_json(canon)));
    r.witnesses.push_back(witness("sup B (norm " + to_string(norm(top, tag)) + ")", to_json(top)));
  }
  r.curve = std::move(defect);
  r.series["witness_defect"] = std::move(witness_defect);
  r.notes.push_back("family " + to_string(kind) + "; " + std::to_string(sampling.trials) +
                    " sampled unit-ball sets of size " + std::to_string(sampling.set_size) + " per n");
  r.notes.push_back("defect(n) is a finite-stage curve; growth across n stands in for unboundedness of B^v");
  if (kind == SpaceKind::PwlSup || kind == SpaceKind::PwlL1) {
    r.notes.push_back("for function families n counts disjoint unit bumps");
  }
  return r;
}

ProbeReport am_identity_check(const SpaceTag& tag, std::size_t trials, std::uint64_t seed) {
  if (tag.is_product()) throw PreconditionError("am_identity_check needs a norm tag");
  ProbeReport r;
  r.probe_name = "am_identity_check";
  r.seed = seed;
  Sampler s(derive_seed(seed, "am_identity_check:" + tag.name()));
  std::vector<std::pair<Point, Point>> pairs;
  const auto canon = canonical_disjoint_set(tag, 2);
  if (canon.size() == 2) pairs.emplace_back(canon[0], canon[1]);
  while (pairs.size() < trials + (canon.size() == 2 ? 1 : 0)) {
    Point x = s.positive_point(tag);
    Point y = s.positive_point(tag);
    if (sgn(norm(x, tag)) == 0 && sgn(norm(y, tag)) == 0) continue;
    pairs.emplace_back(std::move(x), std::move(y));
  }
  Rational worst = 1;
  std::optional<std::size_t> worst_at;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const Rational q = am_ratio(pairs[i].first, pairs[i].second, tag);
    if (q < 1) throw Error("am_ratio below 1: norm is not a lattice norm");
    if (q > worst) {
      worst = q;
      worst_at = i;
    }
  }
  r.verdict = worst_at ? Verdict::Fails : Verdict::Holds;
  if (worst_at) {
    const auto& [x, y] = pairs[*worst_at];
    r.witnesses.push_back(witness("x", to_json(x)));
    r.witnesses.push_back(witness("y", to_json(y)));
    r.witnesses.push_back(witness("x v y", to_json(join(x, y))));
    r.witnesses.push_back(witness("ratio", to_json(worst)));
  }
  r.notes.push_back(tag.name() + ": " + std::to_string(pairs.size()) + " positive pairs (" +
                    (canon.size() == 2 ? "canonical disjoint pair first" : "no canonical pair in dim 1") +
                    "); worst ratio " + to_string(worst));
  return r;
}

// ---------------------------------------------------------------------------
// Lebesgue / Levi probes

namespace {

std::vector<Point> materialize(const SequenceFamily& fam, std::uint64_t k_max) {
  if (!fam.generator) throw PreconditionError("family " + fam.name + " has no generator");
  std::vector<Point> terms;
  terms.reserve(k_max);
  for (std::uint64_t k = 1; k <= k_max; ++k) {
    Point u = fam.generator(k);
    require_conforms(u, fam.space);
    terms.push_back(std::move(u));
  }
  return terms;
}

void verify_order(const std::vector<Point>& terms, Monotonicity claim, const std::string& name) {
  for (std::size_t i = 1; i < terms.size(); ++i) {
    const bool ok = claim == Monotonicity::Increasing ? leq(terms[i - 1], terms[i]) : leq(terms[i], terms[i - 1]);
    if (!ok) {
      throw OrderClaimViolation("family " + name + " violates its order claim at k=" + std::to_string(i + 1),
                                i + 1);
    }
  }
}

// u_K vanishes on the probe grid: the first min(dim, K-1) coordinates, or
// the points j/K (1 <= j <= K) of [0,1].
bool vanishes_on_probe_grid(const Point& u_last, std::uint64_t k_max) {
  if (const auto* e = std::get_if<Element>(&u_last)) {
    const std::size_t n = std::min<std::size_t>(e->dim(), static_cast<std::size_t>(k_max - 1));
    for (std::size_t i = 0; i < n; ++i) {
      if (sgn((*e)[i]) != 0) return false;
    }
    return true;
  }
  if (const auto* f = std::get_if<PwlFunc>(&u_last)) {
    for (std::uint64_t j = 1; j <= k_max; ++j) {
      if (sgn((*f)(ratio(static_cast<std::int64_t>(j), static_cast<std::int64_t>(k_max)))) != 0) return false;
    }
    return true;
  }
  throw PreconditionError("sequence probes do not take product families");
}

}  // namespace

ProbeReport lebesgue_probe(const SequenceFamily& fam, std::uint64_t k_max, const Rational& threshold) {
  if (fam.order_claim != Monotonicity::Decreasing) {
    throw PreconditionError("lebesgue_probe: family " + fam.name + " is not claimed decreasing");
  }
  if (k_max < 2) throw PreconditionError("lebesgue_probe: K must be >= 2");
  const auto terms = materialize(fam, k_max);
  verify_order(terms, fam.order_claim, fam.name);

  ProbeReport r;
  r.probe_name = "lebesgue_probe";
  Curve norms;
  for (std::uint64_t k = 1; k <= k_max; ++k) {
    norms.push_back({static_cast<std::int64_t>(k), norm(terms[k - 1], fam.space)});
  }
  const Rational& last = norms.back().value;
  const bool constant_norm =
      std::all_of(norms.begin(), norms.end(), [&](const CurvePoint& c) { return c.value == norms.front().value; });
  const bool inf_zero = vanishes_on_probe_grid(terms.back(), k_max);

  r.notes.push_back("family " + fam.name + " in " + fam.space.name() + ", K=" + std::to_string(k_max) +
                    ", threshold " + to_string(threshold));
  if (!inf_zero) {
    r.verdict = Verdict::Inconclusive;
    r.notes.push_back("u_K does not vanish on the probe grid; the premise u_k decreasing to 0 is not confirmed");
  } else if (last <= threshold) {
    r.verdict = Verdict::Holds;
    r.notes.push_back("norm(u_K) = " + to_string(last) + " is within the threshold");
  } else if (constant_norm && sgn(last) > 0) {
    r.verdict = Verdict::Fails;
    r.witnesses.push_back(witness("u_1", to_json(terms.front())));
    r.witnesses.push_back(witness("u_K", to_json(terms.back())));
    r.notes.push_back("constant-norm certificate: norm(u_k) = " + to_string(last) +
                      " for every k <= K while u_K vanishes on the probe grid");
  } else {
    r.verdict = Verdict::Inconclusive;
    r.notes.push_back("norms decrease but stay above the threshold at K");
  }
  r.notes.push_back("probe grid: first K-1 coordinates, or t = j/K for pwl families");
  r.curve = std::move(norms);
  return r;
}

ProbeReport levi_probe(const SequenceFamily& fam, std::uint64_t k_max) {
  if (fam.order_claim != Monotonicity::Increasing) {
    throw PreconditionError("levi_probe: family " + fam.name + " is not claimed increasing");
  }
  if (k_max < 2) throw PreconditionError("levi_probe: K must be >= 2");
  const auto terms = materialize(fam, k_max);
  verify_order(terms, fam.order_claim, fam.name);

  ProbeReport r;
  r.probe_name = "levi_probe";
  r.notes.push_back("family " + fam.name + " in " + fam.space.name() + ", K=" + std::to_string(k_max));

  Curve norms;
  Rational observed = 0;
  for (std::uint64_t k = 1; k <= k_max; ++k) {
    const Rational n = norm(terms[k - 1], fam.space);
    observed = max(observed, n);
    norms.push_back({static_cast<std::int64_t>(k), n});
  }
  const Rational bound = fam.norm_bound.value_or(observed);
  if (!fam.norm_bound) r.notes.push_back("no declared norm bound; using the observed maximum " + to_string(observed));
  if (observed > bound) {
    r.verdict = Verdict::Inconclusive;
    r.notes.push_back("norm bound " + to_string(bound) + " violated (max " + to_string(observed) +
                      "); the Levi premise is vacuous");
    r.series["norm"] = std::move(norms);
    return r;
  }

  // Running suprema s_k = u_1 v ... v u_k.
  std::vector<Point> running;
  running.push_back(terms.front());
  for (std::size_t i = 1; i < terms.size(); ++i) running.push_back(join(running.back(), terms[i]));
  const Point& sup = running.back();
  const bool stabilized = running[running.size() - 2] == sup;

  if (fam.space.is_sequence()) {
    r.verdict = Verdict::Holds;
    r.witnesses.push_back(witness("supremum", to_json(sup)));
    std::uint64_t first = k_max;
    while (first > 1 && running[first - 2] == sup) --first;
    r.notes.push_back(stabilized ? "supremum reached at k=" + std::to_string(first)
                                 : "family has not stabilized by K; supremum shown is the finite-stage one");
    if (fam.declared_limit) r.witnesses.push_back(witness("declared limit", to_json(*fam.declared_limit)));
    r.curve = std::move(norms);
    return r;
  }

  Curve slopes;
  bool blowup = true;
  for (std::uint64_t k = 1; k <= k_max; ++k) {
    const Rational sl = max_slope(std::get<PwlFunc>(running[k - 1]));
    if (sl < Rational(static_cast<long>(k))) blowup = false;
    slopes.push_back({static_cast<std::int64_t>(k), sl});
  }
  if (blowup) {
    r.verdict = Verdict::Fails;
    r.witnesses.push_back(witness("running supremum at K", to_json(sup)));
    r.notes.push_back("slope(k) >= k for every k <= K under norm bound " + to_string(bound) +
                      ": the running suprema have no uniform modulus of continuity at this scale "
                      "(proxy for: no continuous supremum)");
  } else if (stabilized) {
    r.verdict = Verdict::Holds;
    r.witnesses.push_back(witness("supremum", to_json(sup)));
  } else {
    r.verdict = Verdict::Inconclusive;
    r.notes.push_back("slopes stay bounded but the family has not stabilized by K");
  }
  r.curve = std::move(slopes);
  r.series["sup_norm"] = std::move(norms);
  return r;
}

// ---------------------------------------------------------------------------
// Projections, products, operators

ProbeReport projection_gap(std::size_t dim, SpaceKind kind) {
  if (kind != SpaceKind::SeqL1 && kind != SpaceKind::SeqLInf) {
    throw PreconditionError("projection_gap supports SeqL1 and SeqLInf");
  }
  if (dim < 2) throw PreconditionError("projection_gap: dim must be >= 2");
  const SpaceTag tag = SpaceTag::sequence(kind, dim);
  const MatrixOp id = MatrixOp::identity(tag);
  std::vector<Rational> xc;
  for (std::size_t i = 0; i < dim; ++i) xc.push_back(pow2(-static_cast<int>(i + 1)));
  const Element x(std::move(xc));

  ProbeReport r;
  r.probe_name = "projection_gap";
  Curve gap, contrast;
  for (std::size_t n = 1; n < dim; ++n) {
    const MatrixOp rest = id - basis_projection(n, dim, kind);
    const auto p = static_cast<std::int64_t>(n);
    gap.push_back({p, induced_norm(rest)});
    contrast.push_back({p, norm(Point(apply(rest, x)), tag)});
  }
  const bool ones = std::all_of(gap.begin(), gap.end(), [](const CurvePoint& c) { return c.value == 1; });
  r.verdict = ones ? Verdict::Fails : Verdict::Inconclusive;
  const Element e_last = Element::unit(dim, dim - 1);
  r.witnesses.push_back(witness("e_" + std::to_string(dim) + " = (I - P_" + std::to_string(dim - 1) + ") e_" +
                                    std::to_string(dim) + ", unit norm",
                                to_json(e_last)));
  r.witnesses.push_back(witness("pointwise contrast vector x_i = 2^-i", to_json(x)));
  r.notes.push_back(tag.name() + ": gap(n) = induced_norm(I - P_n); a constant gap 1 means P_n does not "
                    "converge to I uniformly on the unit ball at this truncation");
  r.notes.push_back("series pointwise_contrast: norm((I - P_n) x) tends to 0 for the fixed x");
  r.curve = std::move(gap);
  r.series["pointwise_contrast"] = std::move(contrast);
  return r;
}

namespace {

Point embed(const Point& x, std::size_t factor, const SpaceTag& product) {
  ProductElement p = std::get<ProductElement>(zero_of(product));
  p.factors[factor] = std::visit([](const auto& v) -> FactorValue { return v; },
                                 std::get_if<Element>(&x) ? FactorValue(std::get<Element>(x))
                                                          : FactorValue(std::get<PwlFunc>(x)));
  return p;
}

NeighborhoodSpec all_factors_unit(const SpaceTag& product) {
  std::map<std::size_t, Rational> radii;
  for (std::size_t i = 0; i < product.factors().size(); ++i) radii[i] = 1;
  return NeighborhoodSpec::product(std::move(radii));
}

ProbeReport product_am(const std::vector<SpaceTag>& tags, const PreservationParams& params) {
  ProbeReport r;
  r.probe_name = "product_preservation_check";
  r.seed = params.sampling.seed;
  const SpaceTag product = make_product(tags);
  const NeighborhoodSpec unit = all_factors_unit(product);

  bool all_factors_hold = true;
  Curve factor_worst;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    const ProbeReport f = am_identity_check(tags[i], params.sampling.trials,
                                            derive_seed(params.sampling.seed, "factor:" + std::to_string(i)));
    all_factors_hold = all_factors_hold && f.verdict == Verdict::Holds;
    Rational worst = 1;
    for (const auto& w : f.witnesses) {
      if (w.label == "ratio") worst = rational_from_json(w.value);
    }
    factor_worst.push_back({static_cast<std::int64_t>(i), worst});
    r.notes.push_back("factor " + std::to_string(i) + " " + tags[i].name() + ": " + to_string(f.verdict));
  }

  // Product pairs: canonical disjoint pairs embedded in each factor, then
  // random positive pairs; ratio of absorption scales against the unit
  // neighborhood constraining every factor.
  std::vector<std::pair<Point, Point>> pairs;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    const auto canon = canonical_disjoint_set(tags[i], 2);
    if (canon.size() == 2) pairs.emplace_back(embed(canon[0], i, product), embed(canon[1], i, product));
  }
  Sampler s(params.sampling, "product_am:" + product.name());
  for (std::size_t t = 0; t < params.sampling.trials; ++t) {
    Point x = s.positive_point(product);
    Point y = s.positive_point(product);
    pairs.emplace_back(std::move(x), std::move(y));
  }
  Rational worst = 1;
  std::optional<std::size_t> worst_at;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const Rational lx = absorption_scale(unit, product, pairs[i].first);
    const Rational ly = absorption_scale(unit, product, pairs[i].second);
    const Rational denom = max(lx, ly);
    if (sgn(denom) == 0) continue;
    const Rational q = absorption_scale(unit, product, join(pairs[i].first, pairs[i].second)) / denom;
    if (q > worst) {
      worst = q;
      worst_at = i;
    }
  }
  const bool product_holds = !worst_at.has_value();
  const bool consistent = product_holds == all_factors_hold;
  r.series["factor_worst_ratio"] = std::move(factor_worst);
  r.notes.push_back("product " + product.name() + ": worst scale ratio " + to_string(worst) + " over " +
                    std::to_string(pairs.size()) + " positive pairs");
  if (worst_at) {
    const auto& [x, y] = pairs[*worst_at];
    r.witnesses.push_back(witness("x (embedded)", to_json(x)));
    r.witnesses.push_back(witness("y (embedded)", to_json(y)));
    r.witnesses.push_back(witness("x v y", to_json(join(x, y))));
    r.witnesses.push_back(witness("ratio", to_json(worst)));
  }
  if (!consistent) {
    r.verdict = Verdict::Inconclusive;
    r.notes.push_back("product verdict disagrees with the conjunction of factor verdicts");
  } else {
    r.verdict = product_holds ? Verdict::Holds : Verdict::Fails;
    r.notes.push_back("product verdict matches the conjunction of factor verdicts");
  }
  return r;
}

ProbeReport product_levi(const std::vector<SpaceTag>& tags, const PreservationParams& params) {
  if (params.families.size() != tags.size()) {
    throw PreconditionError("product levi check needs one family per factor");
  }
  ProbeReport r;
  r.probe_name = "product_preservation_check";
  r.seed = params.sampling.seed;
  const SpaceTag product = make_product(tags);

  ProductElement factor_sups;
  bool all_factors_hold = true;
  std::optional<std::size_t> failing_factor;
  std::vector<Point> factor_running;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    if (!(params.families[i].space == tags[i])) {
      throw PreconditionError("family " + std::to_string(i) + " lives in " + params.families[i].space.name() +
                              ", not " + tags[i].name());
    }
    const ProbeReport f = levi_probe(params.families[i], params.k_max);
    all_factors_hold = all_factors_hold && f.verdict == Verdict::Holds;
    if (f.verdict != Verdict::Holds && !failing_factor) failing_factor = i;
    r.notes.push_back("factor " + std::to_string(i) + " " + tags[i].name() + ": " + to_string(f.verdict));
    Point running = params.families[i].generator(1);
    for (std::uint64_t k = 2; k <= params.k_max; ++k) running = join(running, params.families[i].generator(k));
    factor_running.push_back(running);
    factor_sups.factors.push_back(std::get_if<Element>(&running) ? FactorValue(std::get<Element>(running))
                                                                 : FactorValue(std::get<PwlFunc>(running)));
  }

  // The product family, joined in the product lattice.
  auto product_term = [&](std::uint64_t k) {
    ProductElement p;
    for (const auto& fam : params.families) {
      Point u = fam.generator(k);
      p.factors.push_back(std::get_if<Element>(&u) ? FactorValue(std::get<Element>(u))
                                                   : FactorValue(std::get<PwlFunc>(u)));
    }
    return Point(std::move(p));
  };
  Point prev = product_term(1);
  Point product_sup = prev;
  for (std::uint64_t k = 2; k <= params.k_max; ++k) {
    Point cur = product_term(k);
    if (!leq(prev, cur)) {
      throw OrderClaimViolation("product family is not increasing at k=" + std::to_string(k), k);
    }
    product_sup = join(product_sup, cur);
    prev = std::move(cur);
  }
  const bool matches = product_sup == Point(factor_sups);
  r.witnesses.push_back(witness("product supremum", to_json(product_sup)));
  r.witnesses.push_back(witness("tuple of factor suprema", to_json(Point(factor_sups))));
  r.notes.push_back(matches ? "product supremum equals the tuple of factor suprema"
                            : "product supremum differs from the tuple of factor suprema");
  if (!matches) {
    r.verdict = Verdict::Inconclusive;
  } else if (all_factors_hold) {
    r.verdict = Verdict::Holds;
  } else {
    r.verdict = Verdict::Fails;
    r.witnesses.push_back(witness("failing factor " + std::to_string(*failing_factor) + " running supremum (embedded)",
                                  to_json(embed(factor_running[*failing_factor], *failing_factor, product))));
  }
  return r;
}

}  // namespace

ProbeReport product_preservation_check(const std::vector<SpaceTag>& tags, PreservationProbe probe,
                                       const PreservationParams& params) {
  if (tags.empty()) throw PreconditionError("product_preservation_check: empty factor list");
  return probe == PreservationProbe::Am ? product_am(tags, params) : product_levi(tags, params);
}

ProbeReport operator_levi_demo(const SequenceFamily& y_family, const Element& x0, std::uint64_t k_max) {
  if (!y_family.space.is_sequence()) throw PreconditionError("operator_levi_demo needs a coordinate lattice");
  if (y_family.order_claim != Monotonicity::Increasing) {
    throw PreconditionError("operator_levi_demo: family must be claimed increasing");
  }
  if (k_max < 2) throw PreconditionError("operator_levi_demo: K must be >= 2");
  std::optional<std::size_t> pivot;
  for (std::size_t i = 0; i < x0.dim(); ++i) {
    if (sgn(x0[i]) > 0) {
      pivot = i;
      break;
    }
  }
  if (!pivot) throw PreconditionError("operator_levi_demo: x0 has no strictly positive coordinate");

  const auto terms = materialize(y_family, k_max);
  verify_order(terms, Monotonicity::Increasing, y_family.name);

  // f = e_i / x0_i, so f(x0) = 1 with f >= 0.
  std::vector<Rational> f(x0.dim(), Rational(0));
  f[*pivot] = Rational(1) / x0[*pivot];
  const SpaceTag domain = SpaceTag::sequence(y_family.space.kind() == SpaceKind::WeightedL1 ? SpaceKind::SeqLInf
                                                                                             : y_family.space.kind(),
                                             x0.dim());
  const auto rank_one = [&](const Element& y) { return RankOneOp(f, y).to_matrix(domain, y_family.space); };

  OperatorSeq seq{[&](std::uint64_t k) { return rank_one(std::get<Element>(terms[k - 1])); },
                  Monotonicity::Increasing};
  const MonotoneVerdict mono = operator_seq_monotone_check(seq, k_max);
  if (!mono.holds) {
    throw OrderClaimViolation("operator family T_k is not increasing", *mono.first_violation);
  }

  Element sup = std::get<Element>(terms.front());
  for (const auto& t : terms) sup = join(sup, std::get<Element>(t));
  const MatrixOp top = rank_one(sup);
  const Element image = apply(top, x0);
  bool dominates_all = true;
  for (std::uint64_t k = 1; k <= k_max; ++k) dominates_all = dominates_all && operator_leq(seq.generator(k), top);

  ProbeReport r;
  r.probe_name = "operator_levi_demo";
  Curve evals;
  for (std::uint64_t k = 1; k <= k_max; ++k) {
    evals.push_back({static_cast<std::int64_t>(k), norm(Point(apply(seq.generator(k), x0)), y_family.space)});
  }
  r.curve = std::move(evals);
  r.witnesses.push_back(witness("functional f (f(x0) = 1)", to_json(Element(f))));
  r.witnesses.push_back(witness("sup y_k", to_json(sup)));
  r.witnesses.push_back(witness("T = f (x) sup y_k", to_json(top)));
  r.witnesses.push_back(witness("T(x0)", to_json(image)));
  const bool round_trip = image == sup;
  r.verdict = round_trip && dominates_all ? Verdict::Holds : Verdict::Fails;
  r.notes.push_back(round_trip ? "T(x0) equals sup y_k exactly" : "T(x0) differs from sup y_k");
  r.notes.push_back(dominates_all ? "T_k <= T for every k <= K" : "some T_k is not below T");
  r.notes.push_back("f is the coordinate functional on coordinate " + std::to_string(*pivot + 1) +
                    " scaled by 1/x0_i");
  if (terms[k_max - 2] != terms[k_max - 1]) {
    r.notes.push_back("family has not stabilized by K; sup y_k is the finite-stage supremum y_K");
  }
  if (y_family.declared_limit) {
    r.witnesses.push_back(witness("declared limit of y_k", to_json(*y_family.declared_limit)));
  }
  return r;
}

ProbeReport operator_lebesgue_demo(const OperatorSeq& family, const SpaceTag& tag, std::uint64_t k_max,
                                   const Rational& threshold) {
  if (tag.kind() != SpaceKind::SeqL1 && tag.kind() != SpaceKind::SeqLInf) {
    throw PreconditionError("operator_lebesgue_demo supports SeqL1 and SeqLInf");
  }
  if (k_max < 2) throw PreconditionError("operator_lebesgue_demo: K must be >= 2");
  if (!family.generator) throw PreconditionError("operator family has no generator");
  std::vector<MatrixOp> ops;
  for (std::uint64_t k = 1; k <= k_max; ++k) {
    const MatrixOp t = family.generator(k);
    MatrixOp tagged(t.to_rows(), tag, tag);
    if (!is_positive(tagged).positive) {
      throw PreconditionError("operator_lebesgue_demo: T_" + std::to_string(k) + " is not positive");
    }
    if (!ops.empty() && !operator_leq(tagged, ops.back())) {
      throw OrderClaimViolation("operator family is not decreasing at k=" + std::to_string(k), k);
    }
    ops.push_back(std::move(tagged));
  }
  // Entrywise infimum-zero evidence: every entry of T_K is at most
  // (largest entry of T_1) / K.
  Rational top = 0;
  for (std::size_t i = 0; i < ops.front().rows(); ++i) {
    for (std::size_t j = 0; j < ops.front().cols(); ++j) top = max(top, ops.front()(i, j));
  }
  const Rational ceiling = top / Rational(static_cast<long>(k_max));
  for (std::size_t i = 0; i < ops.back().rows(); ++i) {
    for (std::size_t j = 0; j < ops.back().cols(); ++j) {
      if (ops.back()(i, j) > ceiling) {
        throw PreconditionError("operator_lebesgue_demo: infimum not zero (entry (" + std::to_string(i + 1) + "," +
                                std::to_string(j + 1) + ") of T_K exceeds max(T_1)/K)");
      }
    }
  }

  ProbeReport r;
  r.probe_name = "operator_lebesgue_demo";
  Curve lhs, rhs;
  bool identity_ok = true;
  const Element ones = Element::constant(tag.dim(), 1);
  const SpaceTag sup_tag = SpaceTag::seq_linf(tag.dim());
  for (std::uint64_t k = 1; k <= k_max; ++k) {
    const MatrixOp& t = ops[k - 1];
    const Rational a = induced_norm(t);
    // l-inf: || |T| 1 ||_inf; l1: || |T|^T 1 ||_inf (max column sum).
    Rational b;
    if (tag.kind() == SpaceKind::SeqLInf) {
      b = norm(Point(apply(modulus_matrix(t), ones)), sup_tag);
    } else {
      std::vector<std::vector<Rational>> tr(t.cols(), std::vector<Rational>(t.rows()));
      for (std::size_t i = 0; i < t.rows(); ++i) {
        for (std::size_t j = 0; j < t.cols(); ++j) tr[j][i] = ::abs(t(i, j));
      }
      b = norm(Point(apply(MatrixOp(std::move(tr)), ones)), sup_tag);
    }
    identity_ok = identity_ok && a == b;
    lhs.push_back({static_cast<std::int64_t>(k), a});
    rhs.push_back({static_cast<std::int64_t>(k), b});
  }
  const Rational last = lhs.back().value;
  r.curve = lhs;
  r.series["induced_norm"] = std::move(lhs);
  r.series["order_unit_side"] = std::move(rhs);
  r.notes.push_back(tag.name() + ", K=" + std::to_string(k_max) + ", threshold " + to_string(threshold));
  r.notes.push_back(identity_ok ? "induced_norm(T_k) equals the order-unit evaluation for every k"
                                : "induced norm and order-unit evaluation disagree");
  if (!identity_ok) {
    r.verdict = Verdict::Inconclusive;
  } else if (last <= threshold) {
    r.verdict = Verdict::Holds;
    r.notes.push_back("induced_norm(T_K) = " + to_string(last) + " is within the threshold");
  } else {
    r.verdict = Verdict::Inconclusive;
    r.notes.push_back("induced_norm(T_K) = " + to_string(last) + " is above the threshold at this K");
  }
  r.witnesses.push_back(witness("T_K", to_json(ops.back())));
  return r;
}

OperatorSeq geometric_identity_seq(std::size_t dim, SpaceKind kind) {
  const SpaceTag tag = SpaceTag::sequence(kind, dim);
  return {[tag](std::uint64_t k) { return pow2(-static_cast<int>(k)) * MatrixOp::identity(tag); },
          Monotonicity::Decreasing};
}

OperatorSeq geometric_diagonal_seq(std::size_t dim, SpaceKind kind) {
  const SpaceTag tag = SpaceTag::sequence(kind, dim);
  return {[tag, dim](std::uint64_t k) {
            std::vector<std::vector<Rational>> rows(dim, std::vector<Rational>(dim, Rational(0)));
            const std::size_t half = (dim + 1) / 2;
            for (std::size_t i = 0; i < dim; ++i) {
              rows[i][i] = pow2(-static_cast<int>(i < half ? k : 2 * k));
            }
            return MatrixOp(std::move(rows), tag, tag);
          },
          Monotonicity::Decreasing};
}

ProbeReport nb_boundedness_probe(std::size_t factor_count, std::size_t factor_dim,
                                 const std::vector<std::size_t>& constrained) {
  if (factor_count == 0 || factor_dim == 0) throw PreconditionError("nb_boundedness_probe: empty product");
  std::map<std::size_t, Rational> radii;
  for (auto i : constrained) {
    if (i >= factor_count) throw PreconditionError("nb_boundedness_probe: constrained factor out of range");
    radii[i] = 1;
  }
  const SpaceTag product = make_product(std::vector<SpaceTag>(factor_count, SpaceTag::seq_linf(factor_dim)));
  const MatrixOp id = MatrixOp::identity(product);
  const NeighborhoodSpec u = NeighborhoodSpec::product(radii);
  const NbVerdict v = nb_bounded_check(id, u);
  const OrderInterval box = order_bounded_image(id, Element::constant(product.dim(), 1));

  ProbeReport r;
  r.probe_name = "nb_boundedness";
  r.notes.push_back("identity on " + product.name() + " against neighborhood " + to_json(u).dump());
  r.notes.push_back("order bounded: I maps [-1, 1] onto [" + to_json(box.lo).dump() + ", " + to_json(box.hi).dump() + "]");
  if (v.bounded) {
    r.verdict = Verdict::Holds;
    r.notes.push_back("I(U) is bounded with scale " + to_string(*v.scale));
  } else {
    r.verdict = Verdict::Fails;
    Element dir = Element::unit(product.dim(), factor_range(product, *v.witness_factor).first + *v.witness_coordinate);
    r.witnesses.push_back(witness("unconstrained direction: factor " + std::to_string(*v.witness_factor) +
                                      ", coordinate " + std::to_string(*v.witness_coordinate) + " (0-based)",
                                  to_json(Point(unflatten(dir, product)))));
    r.witnesses.push_back(witness("image of that direction", to_json(Point(unflatten(*v.witness_image, product)))));
    r.notes.push_back("every multiple of the witness direction lies in U while its image is nonzero, so I(U) "
                      "is unbounded: order bounded but not nb-bounded at truncation " + std::to_string(factor_count));
  }
  return r;
}

}  // namespace riesz
