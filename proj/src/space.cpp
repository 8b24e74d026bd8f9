#include "riesz/space.hpp"

#include "riesz/sampling.hpp"

#include <algorithm>

namespace riesz {

std::string to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::SeqL1: return "SeqL1";
    case SpaceKind::SeqLInf: return "SeqLInf";
    case SpaceKind::WeightedL1: return "WeightedL1";
    case SpaceKind::PwlSup: return "PwlSup";
    case SpaceKind::PwlL1: return "PwlL1";
    case SpaceKind::Product: return "Product";
  }
  return "?";
}

SpaceKind parse_space_kind(const std::string& name) {
  for (auto k : {SpaceKind::SeqL1, SpaceKind::SeqLInf, SpaceKind::WeightedL1, SpaceKind::PwlSup,
                 SpaceKind::PwlL1, SpaceKind::Product}) {
    if (to_string(k) == name) return k;
  }
  throw ParseError("unknown space kind \"" + name + "\"");
}

SpaceTag SpaceTag::seq_l1(std::size_t dim) { return sequence(SpaceKind::SeqL1, dim); }
SpaceTag SpaceTag::seq_linf(std::size_t dim) { return sequence(SpaceKind::SeqLInf, dim); }

SpaceTag SpaceTag::weighted_l1(std::vector<Rational> weights) {
  if (weights.empty()) throw PreconditionError("zero-dimensional spaces are not allowed");
  for (const auto& w : weights) {
    if (sgn(w) <= 0) throw PreconditionError("weights must be strictly positive");
  }
  SpaceTag t;
  t.kind_ = SpaceKind::WeightedL1;
  t.dim_ = weights.size();
  t.weights_ = std::move(weights);
  return t;
}

SpaceTag SpaceTag::pwl_sup() {
  SpaceTag t;
  t.kind_ = SpaceKind::PwlSup;
  return t;
}

SpaceTag SpaceTag::pwl_l1() {
  SpaceTag t;
  t.kind_ = SpaceKind::PwlL1;
  return t;
}

SpaceTag SpaceTag::sequence(SpaceKind kind, std::size_t dim) {
  if (dim == 0) throw PreconditionError("zero-dimensional spaces are not allowed");
  SpaceTag t;
  switch (kind) {
    case SpaceKind::SeqL1:
    case SpaceKind::SeqLInf:
      t.kind_ = kind;
      t.dim_ = dim;
      return t;
    case SpaceKind::WeightedL1:
      return weighted_l1(std::vector<Rational>(dim, Rational(1)));
    case SpaceKind::PwlSup: return pwl_sup();
    case SpaceKind::PwlL1: return pwl_l1();
    case SpaceKind::Product: break;
  }
  throw PreconditionError("SpaceTag::sequence: products are built with make_product");
}

std::size_t SpaceTag::dim() const {
  if (kind_ != SpaceKind::Product) return dim_;
  std::size_t total = 0;
  for (const auto& f : factors_) total += f.dim();
  return total;
}

bool SpaceTag::is_sequence() const noexcept {
  return kind_ == SpaceKind::SeqL1 || kind_ == SpaceKind::SeqLInf || kind_ == SpaceKind::WeightedL1;
}

bool SpaceTag::is_function() const noexcept {
  return kind_ == SpaceKind::PwlSup || kind_ == SpaceKind::PwlL1;
}

std::string SpaceTag::name() const {
  switch (kind_) {
    case SpaceKind::SeqL1:
    case SpaceKind::SeqLInf:
    case SpaceKind::WeightedL1:
      return to_string(kind_) + "(" + std::to_string(dim_) + ")";
    case SpaceKind::PwlSup:
    case SpaceKind::PwlL1:
      return to_string(kind_);
    case SpaceKind::Product: {
      std::string s = "Product[";
      for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) s += ", ";
        s += factors_[i].name();
      }
      return s + "]";
    }
  }
  return "?";
}

SpaceTag make_product(std::vector<SpaceTag> tags) {
  if (tags.empty()) throw PreconditionError("make_product: empty factor list");
  for (const auto& t : tags) {
    if (t.is_product()) throw PreconditionError("make_product: nested products are not supported");
  }
  SpaceTag p;
  p.kind_ = SpaceKind::Product;
  p.factors_ = std::move(tags);
  return p;
}

namespace {

bool factor_conforms(const FactorValue& x, const SpaceTag& tag) {
  if (tag.is_function()) return std::holds_alternative<PwlFunc>(x);
  if (tag.is_sequence()) {
    const auto* e = std::get_if<Element>(&x);
    return e != nullptr && e->dim() == tag.dim();
  }
  return false;
}

FactorValue as_factor(const Point& p) {
  if (const auto* e = std::get_if<Element>(&p)) return *e;
  if (const auto* f = std::get_if<PwlFunc>(&p)) return *f;
  throw DimensionMismatch("nested product element");
}

Point as_point(const FactorValue& v) {
  return std::visit([](const auto& x) -> Point { return x; }, v);
}

// Applies a binary lattice operation alternative-by-alternative.
template <class Op>
Point binary(const Point& x, const Point& y, Op op, const char* name) {
  if (x.index() != y.index()) throw DimensionMismatch(std::string(name) + ": mixed space kinds");
  if (const auto* a = std::get_if<Element>(&x)) return op(*a, std::get<Element>(y));
  if (const auto* f = std::get_if<PwlFunc>(&x)) return op(*f, std::get<PwlFunc>(y));
  const auto& px = std::get<ProductElement>(x);
  const auto& py = std::get<ProductElement>(y);
  if (px.factors.size() != py.factors.size()) {
    throw DimensionMismatch(std::string(name) + ": product arity mismatch");
  }
  ProductElement out;
  for (std::size_t i = 0; i < px.factors.size(); ++i) {
    out.factors.push_back(as_factor(binary(as_point(px.factors[i]), as_point(py.factors[i]), op, name)));
  }
  return out;
}

template <class Op>
Point unary(const Point& x, Op op) {
  if (const auto* a = std::get_if<Element>(&x)) return op(*a);
  if (const auto* f = std::get_if<PwlFunc>(&x)) return op(*f);
  ProductElement out;
  for (const auto& v : std::get<ProductElement>(x).factors) {
    out.factors.push_back(as_factor(unary(as_point(v), op)));
  }
  return out;
}

template <class Pred>
bool all_factors(const Point& x, const Point& y, Pred pred) {
  if (x.index() != y.index()) throw DimensionMismatch("mixed space kinds");
  if (const auto* a = std::get_if<Element>(&x)) return pred(*a, std::get<Element>(y));
  if (const auto* f = std::get_if<PwlFunc>(&x)) return pred(*f, std::get<PwlFunc>(y));
  const auto& px = std::get<ProductElement>(x);
  const auto& py = std::get<ProductElement>(y);
  if (px.factors.size() != py.factors.size()) throw DimensionMismatch("product arity mismatch");
  for (std::size_t i = 0; i < px.factors.size(); ++i) {
    if (!all_factors(as_point(px.factors[i]), as_point(py.factors[i]), pred)) return false;
  }
  return true;
}

}  // namespace

bool conforms(const Point& x, const SpaceTag& tag) {
  if (!tag.is_product()) {
    if (std::holds_alternative<ProductElement>(x)) return false;
    return factor_conforms(as_factor(x), tag);
  }
  const auto* p = std::get_if<ProductElement>(&x);
  if (p == nullptr || p->factors.size() != tag.factors().size()) return false;
  for (std::size_t i = 0; i < p->factors.size(); ++i) {
    if (!factor_conforms(p->factors[i], tag.factors()[i])) return false;
  }
  return true;
}

void require_conforms(const Point& x, const SpaceTag& tag) {
  if (!conforms(x, tag)) throw DimensionMismatch("element does not belong to " + tag.name());
}

Point join(const Point& x, const Point& y) {
  return binary(x, y, [](const auto& a, const auto& b) { return join(a, b); }, "join");
}

Point meet(const Point& x, const Point& y) {
  return binary(x, y, [](const auto& a, const auto& b) { return meet(a, b); }, "meet");
}

Point negate(const Point& x) {
  return unary(x, [](const auto& a) { return -a; });
}

Point abs(const Point& x) {
  return unary(x, [](const auto& a) { return abs(a); });
}

Point scale(const Rational& s, const Point& x) {
  return unary(x, [&](const auto& a) { return s * a; });
}

bool leq(const Point& x, const Point& y) {
  return all_factors(x, y, [](const auto& a, const auto& b) { return leq(a, b); });
}

bool is_positive(const Point& x) {
  return all_factors(x, x, [](const auto& a, const auto&) { return is_positive(a); });
}

Point zero_of(const SpaceTag& tag) {
  if (tag.is_function()) return PwlFunc::constant(0);
  if (tag.is_sequence()) return Element::zero(tag.dim());
  ProductElement p;
  for (const auto& f : tag.factors()) p.factors.push_back(as_factor(zero_of(f)));
  return p;
}

std::strong_ordering lex_compare(const Point& x, const Point& y) {
  if (x.index() != y.index()) return x.index() <=> y.index();
  if (const auto* a = std::get_if<Element>(&x)) return lex_compare(*a, std::get<Element>(y));
  if (const auto* f = std::get_if<PwlFunc>(&x)) return lex_compare(*f, std::get<PwlFunc>(y));
  const auto& px = std::get<ProductElement>(x).factors;
  const auto& py = std::get<ProductElement>(y).factors;
  for (std::size_t i = 0; i < std::min(px.size(), py.size()); ++i) {
    auto c = lex_compare(as_point(px[i]), as_point(py[i]));
    if (c != 0) return c;
  }
  return px.size() <=> py.size();
}

Element flatten(const ProductElement& x) {
  std::vector<Rational> c;
  for (const auto& f : x.factors) {
    const auto* e = std::get_if<Element>(&f);
    if (e == nullptr) throw DimensionMismatch("flatten: function factors have no coordinates");
    c.insert(c.end(), e->coords().begin(), e->coords().end());
  }
  return Element(std::move(c));
}

std::pair<std::size_t, std::size_t> factor_range(const SpaceTag& product, std::size_t i) {
  if (!product.is_product() || i >= product.factors().size()) {
    throw PreconditionError("factor_range: no factor " + std::to_string(i));
  }
  std::size_t begin = 0;
  for (std::size_t j = 0; j < i; ++j) begin += product.factors()[j].dim();
  return {begin, begin + product.factors()[i].dim()};
}

ProductElement unflatten(const Element& x, const SpaceTag& product) {
  if (!product.is_product()) throw PreconditionError("unflatten: not a product tag");
  for (const auto& f : product.factors()) {
    if (!f.is_sequence()) throw DimensionMismatch("unflatten: function factors have no coordinates");
  }
  if (x.dim() != product.dim()) throw DimensionMismatch("unflatten: dimension mismatch");
  ProductElement out;
  for (std::size_t i = 0; i < product.factors().size(); ++i) {
    auto [b, e] = factor_range(product, i);
    out.factors.emplace_back(Element(std::vector<Rational>(x.coords().begin() + static_cast<std::ptrdiff_t>(b),
                                                           x.coords().begin() + static_cast<std::ptrdiff_t>(e))));
  }
  return out;
}

Rational norm(const FactorValue& x, const SpaceTag& tag) {
  if (!factor_conforms(x, tag)) throw DimensionMismatch("element does not belong to " + tag.name());
  switch (tag.kind()) {
    case SpaceKind::SeqL1: {
      Rational s = 0;
      for (const auto& c : std::get<Element>(x).coords()) s += ::abs(c);
      return s;
    }
    case SpaceKind::SeqLInf: {
      Rational s = 0;
      for (const auto& c : std::get<Element>(x).coords()) s = max(s, Rational(::abs(c)));
      return s;
    }
    case SpaceKind::WeightedL1: {
      Rational s = 0;
      const auto& e = std::get<Element>(x);
      for (std::size_t i = 0; i < e.dim(); ++i) s += tag.weights()[i] * ::abs(e[i]);
      return s;
    }
    case SpaceKind::PwlSup: return sup_norm(std::get<PwlFunc>(x));
    case SpaceKind::PwlL1: return l1_norm(std::get<PwlFunc>(x));
    case SpaceKind::Product: break;
  }
  throw PreconditionError("product spaces have no single norm; use is_bounded_in");
}

Rational norm(const Point& x, const SpaceTag& tag) {
  if (tag.is_product()) throw PreconditionError("product spaces have no single norm; use is_bounded_in");
  if (std::holds_alternative<ProductElement>(x)) {
    throw DimensionMismatch("element does not belong to " + tag.name());
  }
  return norm(as_factor(x), tag);
}

NeighborhoodSpec NeighborhoodSpec::ball(const Rational& radius) {
  if (sgn(radius) <= 0) throw PreconditionError("neighborhood radius must be positive");
  NeighborhoodSpec u;
  u.radius_ = radius;
  return u;
}

NeighborhoodSpec NeighborhoodSpec::product(std::map<std::size_t, Rational> factor_radii) {
  for (const auto& [i, r] : factor_radii) {
    if (sgn(r) <= 0) throw PreconditionError("neighborhood radius must be positive");
  }
  NeighborhoodSpec u;
  u.is_product_ = true;
  u.constraints_ = std::move(factor_radii);
  return u;
}

const Rational& NeighborhoodSpec::radius() const {
  if (is_product_) throw PreconditionError("product neighborhood has no single radius");
  return radius_;
}

void require_conforms(const NeighborhoodSpec& u, const SpaceTag& tag) {
  if (u.is_ball() == tag.is_product()) {
    throw DimensionMismatch("neighborhood shape does not match " + tag.name());
  }
  if (!u.is_ball()) {
    for (const auto& [i, r] : u.constraints()) {
      if (i >= tag.factors().size()) {
        throw DimensionMismatch("neighborhood constrains missing factor " + std::to_string(i));
      }
    }
  }
}

Rational absorption_scale(const NeighborhoodSpec& u, const SpaceTag& tag, const Point& x) {
  require_conforms(u, tag);
  require_conforms(x, tag);
  if (u.is_ball()) return norm(x, tag) / u.radius();
  const auto& p = std::get<ProductElement>(x);
  Rational lambda = 0;
  for (const auto& [i, r] : u.constraints()) {
    lambda = max(lambda, Rational(norm(p.factors[i], tag.factors()[i]) / r));
  }
  return lambda;
}

bool contains(const NeighborhoodSpec& u, const SpaceTag& tag, const Point& x) {
  return absorption_scale(u, tag, x) <= 1;
}

namespace {

// Scale of a factor-space envelope against that factor's unit ball, and the
// coordinate carrying most of it.
struct FactorGrowth {
  std::vector<std::pair<std::uint64_t, Rational>> curve;
  std::size_t coordinate = 0;
  bool diverging = false;
};

std::size_t dominant_coordinate(const FactorValue& prev, const FactorValue& last) {
  if (const auto* e = std::get_if<Element>(&last)) {
    const auto& p = std::get<Element>(prev);
    std::size_t best = 0;
    Rational best_gain = ::abs((*e)[0]) - ::abs(p[0]);
    for (std::size_t i = 1; i < e->dim(); ++i) {
      Rational gain = ::abs((*e)[i]) - ::abs(p[i]);
      if (gain > best_gain) {
        best_gain = gain;
        best = i;
      }
    }
    return best;
  }
  const auto pts = std::get<PwlFunc>(last).breakpoints();
  std::size_t best = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (::abs(pts[i].v) > ::abs(pts[best].v)) best = i;
  }
  return best;
}

// Diverging: still increasing over the last two doublings, without slowing.
bool looks_diverging(const std::vector<std::pair<std::uint64_t, Rational>>& curve) {
  const std::size_t n = curve.size();
  const Rational& a = curve[n - 3].second;
  const Rational& b = curve[n - 2].second;
  const Rational& c = curve[n - 1].second;
  return a < b && b < c && (c - b) >= (b - a);
}

FactorGrowth factor_growth(const std::function<FactorValue(std::uint64_t)>& env,
                           const SpaceTag& tag, const Rational& radius) {
  FactorGrowth g;
  FactorValue prev = env(1);
  FactorValue last = prev;
  for (int j = 0; j <= kCheckpointExponent; ++j) {
    const std::uint64_t k = std::uint64_t{1} << j;
    prev = last;
    last = env(k);
    g.curve.emplace_back(k, norm(last, tag) / radius);
  }
  g.diverging = looks_diverging(g.curve);
  g.coordinate = dominant_coordinate(prev, last);
  return g;
}

}  // namespace

BoundednessVerdict is_bounded_in(std::span<const Point> a, const NeighborhoodSpec& u,
                                 const SpaceTag& tag) {
  require_conforms(u, tag);
  BoundednessVerdict v;
  Rational lambda = 0;
  for (const auto& x : a) lambda = max(lambda, absorption_scale(u, tag, x));
  // Every finite set is bounded in each factor as well; only the scale matters.
  v.scale = lambda;
  return v;
}

BoundednessVerdict is_bounded_in(const ParametricFamily& a, const NeighborhoodSpec& u,
                                 const SpaceTag& tag) {
  if (!a.envelope) throw PreconditionError("family \"" + a.name + "\" lacks a computable bound function");
  require_conforms(u, tag);
  BoundednessVerdict v;
  v.checkpoint_limited = true;
  if (u.is_ball()) {
    auto g = factor_growth([&](std::uint64_t k) { return as_factor(a.envelope(k)); }, tag, u.radius());
    if (g.diverging) {
      v.bounded = false;
      v.witness = UnboundedWitness{std::nullopt, g.coordinate, std::move(g.curve)};
    } else {
      v.scale = g.curve.back().second;
    }
    return v;
  }
  // Product: bounded iff every factor projection is bounded (free factors
  // against their own unit ball); the scale comes from constrained factors.
  Rational lambda = 0;
  for (std::size_t i = 0; i < tag.factors().size(); ++i) {
    const auto it = u.constraints().find(i);
    const Rational radius = it == u.constraints().end() ? Rational(1) : it->second;
    auto g = factor_growth(
        [&](std::uint64_t k) {
          const Point env = a.envelope(k);
          require_conforms(env, tag);
          return std::get<ProductElement>(env).factors[i];
        },
        tag.factors()[i], radius);
    if (g.diverging) {
      v.bounded = false;
      v.witness = UnboundedWitness{i, g.coordinate, std::move(g.curve)};
      return v;
    }
    if (it != u.constraints().end()) lambda = max(lambda, g.curve.back().second);
  }
  v.scale = lambda;
  return v;
}

namespace {

SolidityVerdict run_solidity(std::size_t trials, const std::function<std::pair<Point, Point>()>& draw,
                             const std::function<Rational(const Point&)>& measure) {
  SolidityVerdict v;
  for (std::size_t i = 0; i < trials; ++i) {
    auto [x, y] = draw();
    ++v.trials;
    if (measure(x) > measure(y)) {
      v.passed = false;
      v.witness.emplace(std::move(x), std::move(y));
      return v;
    }
  }
  return v;
}

}  // namespace

SolidityVerdict solidity_check(const SpaceTag& tag, std::size_t trials, std::uint64_t seed) {
  if (tag.is_product()) throw PreconditionError("solidity_check needs a norm tag");
  Sampler s(derive_seed(seed, "solidity:" + tag.name()));
  return run_solidity(
      trials, [&] { return s.dominated_pair(tag); },
      [&](const Point& p) { return norm(p, tag); });
}

SolidityVerdict solidity_check(const std::function<Rational(const Element&)>& candidate,
                               std::size_t dim, std::size_t trials, std::uint64_t seed) {
  Sampler s(derive_seed(seed, "solidity:custom"));
  const SpaceTag tag = SpaceTag::seq_linf(dim);
  return run_solidity(
      trials, [&] { return s.dominated_pair(tag); },
      [&](const Point& p) { return candidate(std::get<Element>(p)); });
}

}  // namespace riesz
