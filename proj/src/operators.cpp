#include "riesz/operators.hpp"

#include <algorithm>
#include <bit>

namespace riesz {

namespace {

void require_coordinate_tag(const SpaceTag& tag) {
  if (tag.is_function()) throw PreconditionError("matrix operators act on coordinate lattices only");
  if (tag.is_product()) {
    for (const auto& f : tag.factors()) {
      if (!f.is_sequence()) throw PreconditionError("matrix operators act on coordinate lattices only");
    }
  }
}

// Norm on the range: the tag's norm, or the max of factor norms for products
// (the gauge of the neighborhood constraining every factor with radius 1).
Rational range_norm(const Element& y, const SpaceTag& tag) {
  if (!tag.is_product()) return norm(Point(y), tag);
  Rational best = 0;
  const ProductElement p = unflatten(y, tag);
  for (std::size_t i = 0; i < p.factors.size(); ++i) {
    best = max(best, norm(p.factors[i], tag.factors()[i]));
  }
  return best;
}

}  // namespace

MatrixOp::MatrixOp(std::size_t rows, std::size_t cols, std::vector<Rational> entries,
                   SpaceTag domain, SpaceTag range)
    : rows_(rows), cols_(cols), entries_(std::move(entries)), domain_(std::move(domain)),
      range_(std::move(range)) {
  require_coordinate_tag(domain_);
  require_coordinate_tag(range_);
  if (rows_ == 0 || cols_ == 0) throw PreconditionError("operators between zero-dimensional spaces");
  if (domain_.dim() != cols_ || range_.dim() != rows_) {
    throw DimensionMismatch("matrix shape " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                            " does not match " + domain_.name() + " -> " + range_.name());
  }
}

MatrixOp::Flat MatrixOp::flatten_rows(std::vector<std::vector<Rational>> rows) {
  if (rows.empty() || rows.front().empty()) throw PreconditionError("empty matrix");
  Flat f;
  f.rows = rows.size();
  f.cols = rows.front().size();
  f.entries.reserve(f.rows * f.cols);
  for (auto& r : rows) {
    if (r.size() != f.cols) throw DimensionMismatch("ragged matrix rows");
    for (auto& v : r) f.entries.push_back(std::move(v));
  }
  return f;
}

MatrixOp::MatrixOp(Flat flat, SpaceTag domain, SpaceTag range)
    : MatrixOp(flat.rows, flat.cols, std::move(flat.entries), std::move(domain), std::move(range)) {}

MatrixOp::MatrixOp(std::vector<std::vector<Rational>> rows)
    : MatrixOp(flatten_rows(std::move(rows)), std::nullopt) {}

MatrixOp::MatrixOp(Flat flat, std::nullopt_t)
    : MatrixOp(flat.rows, flat.cols, std::move(flat.entries), SpaceTag::seq_linf(flat.cols),
               SpaceTag::seq_linf(flat.rows)) {}

MatrixOp::MatrixOp(std::vector<std::vector<Rational>> rows, SpaceTag domain, SpaceTag range)
    : MatrixOp(flatten_rows(std::move(rows)), std::move(domain), std::move(range)) {}

MatrixOp MatrixOp::identity(const SpaceTag& tag) {
  const std::size_t n = tag.dim();
  std::vector<Rational> e(n * n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1;
  return MatrixOp(n, n, std::move(e), tag, tag);
}

MatrixOp MatrixOp::zero(const SpaceTag& domain, const SpaceTag& range) {
  return MatrixOp(range.dim(), domain.dim(), std::vector<Rational>(range.dim() * domain.dim(), Rational(0)),
                  domain, range);
}

std::vector<std::vector<Rational>> MatrixOp::to_rows() const {
  std::vector<std::vector<Rational>> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    out[i].assign(entries_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                  entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  return out;
}

Element MatrixOp::column(std::size_t j) const {
  std::vector<Rational> c;
  c.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
  return Element(std::move(c));
}

template <class F>
MatrixOp MatrixOp::map_entries(F f) const {
  MatrixOp r = *this;
  for (auto& e : r.entries_) e = f(e);
  return r;
}

MatrixOp MatrixOp::operator-() const {
  return map_entries([](const Rational& e) { return Rational(-e); });
}

void require_same_shape(const MatrixOp& a, const MatrixOp& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("operator shapes differ: " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
  }
}

MatrixOp operator+(const MatrixOp& a, const MatrixOp& b) {
  require_same_shape(a, b);
  MatrixOp r = a;
  for (std::size_t k = 0; k < r.entries_.size(); ++k) r.entries_[k] += b.entries_[k];
  return r;
}

MatrixOp operator-(const MatrixOp& a, const MatrixOp& b) { return a + (-b); }

MatrixOp operator*(const Rational& s, const MatrixOp& a) {
  return a.map_entries([&](const Rational& e) { return Rational(s * e); });
}

RankOneOp::RankOneOp(std::vector<Rational> functional, Element target)
    : functional_(std::move(functional)), target_(std::move(target)) {
  if (functional_.empty()) throw PreconditionError("zero-dimensional spaces are not allowed");
}

MatrixOp RankOneOp::to_matrix() const {
  return to_matrix(SpaceTag::seq_linf(functional_.size()), SpaceTag::seq_linf(target_.dim()));
}

MatrixOp RankOneOp::to_matrix(const SpaceTag& domain, const SpaceTag& range) const {
  std::vector<std::vector<Rational>> rows(target_.dim());
  for (std::size_t i = 0; i < target_.dim(); ++i) {
    for (const auto& f : functional_) rows[i].push_back(target_[i] * f);
  }
  return MatrixOp(std::move(rows), domain, range);
}

Element apply(const MatrixOp& t, const Element& x) {
  if (x.dim() != t.cols()) {
    throw DimensionMismatch("operator expects dim " + std::to_string(t.cols()) + ", got " +
                            std::to_string(x.dim()));
  }
  std::vector<Rational> y(t.rows(), Rational(0));
  for (std::size_t i = 0; i < t.rows(); ++i) {
    for (std::size_t j = 0; j < t.cols(); ++j) y[i] += t(i, j) * x[j];
  }
  return Element(std::move(y));
}

Element apply(const RankOneOp& t, const Element& x) {
  if (x.dim() != t.domain_dim()) throw DimensionMismatch("rank-one operator: domain dimension mismatch");
  Rational fx = 0;
  for (std::size_t i = 0; i < x.dim(); ++i) fx += t.functional()[i] * x[i];
  return fx * t.target();
}

ProductElement apply(const MatrixOp& t, const ProductElement& x) {
  if (!t.range().is_product()) throw PreconditionError("apply: range is not a product tag");
  return unflatten(apply(t, flatten(x)), t.range());
}

PositivityVerdict is_positive(const MatrixOp& t) {
  for (std::size_t j = 0; j < t.cols(); ++j) {
    for (std::size_t i = 0; i < t.rows(); ++i) {
      if (sgn(t(i, j)) < 0) return {false, j};
    }
  }
  return {};
}

PositivityVerdict is_positive(const RankOneOp& t) { return is_positive(t.to_matrix()); }

bool operator_leq(const MatrixOp& s, const MatrixOp& t) {
  require_same_shape(s, t);
  for (std::size_t i = 0; i < s.rows(); ++i) {
    for (std::size_t j = 0; j < s.cols(); ++j) {
      if (s(i, j) > t(i, j)) return false;
    }
  }
  return true;
}

Element modulus_rk(const MatrixOp& t, const Element& x) {
  if (x.dim() != t.cols()) throw DimensionMismatch("modulus_rk: dimension mismatch");
  if (!is_positive(x)) throw PreconditionError("modulus_rk: x must be positive");
  const std::size_t n = x.dim();
  if (n > kModulusOracleMaxDim) {
    throw PreconditionError("modulus_rk: dimension " + std::to_string(n) + " exceeds oracle guard " +
                            std::to_string(kModulusOracleMaxDim));
  }
  std::vector<int> sign(n, 1);
  const Element start = apply(t, x);
  std::vector<Rational> tu(start.coords().begin(), start.coords().end());
  std::vector<Rational> best(t.rows());
  for (std::size_t i = 0; i < t.rows(); ++i) best[i] = ::abs(tu[i]);
  const std::uint64_t patterns = std::uint64_t{1} << n;
  for (std::uint64_t g = 1; g < patterns; ++g) {
    const auto j = static_cast<std::size_t>(std::countr_zero(g));
    // Flipping u_j from s x_j to -s x_j moves T u by -2 s x_j T e_j.
    const Rational step = Rational(-2 * sign[j]) * x[j];
    sign[j] = -sign[j];
    if (sgn(step) == 0) continue;
    for (std::size_t i = 0; i < t.rows(); ++i) {
      tu[i] += step * t(i, j);
      if (::abs(tu[i]) > best[i]) best[i] = ::abs(tu[i]);
    }
  }
  return Element(std::move(best));
}

MatrixOp modulus_matrix(const MatrixOp& t) {
  std::vector<std::vector<Rational>> rows = t.to_rows();
  for (auto& r : rows) {
    for (auto& e : r) e = ::abs(e);
  }
  return MatrixOp(std::move(rows), t.domain(), t.range());
}

DominationVerdict dominates(const MatrixOp& s, const MatrixOp& t) {
  require_same_shape(s, t);
  for (std::size_t i = 0; i < s.rows(); ++i) {
    for (std::size_t j = 0; j < s.cols(); ++j) {
      if (::abs(t(i, j)) > ::abs(s(i, j))) return {false, std::pair{i, j}};
    }
  }
  return {};
}

Rational induced_norm(const MatrixOp& t) {
  const SpaceKind d = t.domain().kind();
  const SpaceKind r = t.range().kind();
  if (d != r || (d != SpaceKind::SeqL1 && d != SpaceKind::SeqLInf)) {
    throw PreconditionError("induced_norm supports SeqL1 -> SeqL1 and SeqLInf -> SeqLInf, not " +
                            t.domain().name() + " -> " + t.range().name());
  }
  Rational best = 0;
  if (d == SpaceKind::SeqL1) {
    for (std::size_t j = 0; j < t.cols(); ++j) {
      Rational s = 0;
      for (std::size_t i = 0; i < t.rows(); ++i) s += ::abs(t(i, j));
      best = max(best, s);
    }
  } else {
    for (std::size_t i = 0; i < t.rows(); ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < t.cols(); ++j) s += ::abs(t(i, j));
      best = max(best, s);
    }
  }
  return best;
}

Rational ball_image_norm(const MatrixOp& t) {
  const SpaceTag& dom = t.domain();
  if (dom.is_product()) throw PreconditionError("ball_image_norm: domain must be a plain norm tag");
  Rational best = 0;
  switch (dom.kind()) {
    case SpaceKind::SeqL1:
    case SpaceKind::WeightedL1: {
      // Extreme points of the unit ball: +-e_j / w_j.
      for (std::size_t j = 0; j < t.cols(); ++j) {
        Rational v = range_norm(t.column(j), t.range());
        if (dom.kind() == SpaceKind::WeightedL1) v /= dom.weights()[j];
        best = max(best, v);
      }
      return best;
    }
    case SpaceKind::SeqLInf: {
      if (t.range().kind() == SpaceKind::SeqLInf) return induced_norm(t);
      if (t.cols() > kModulusOracleMaxDim) {
        throw PreconditionError("ball_image_norm: sign enumeration guard exceeded");
      }
      const std::uint64_t patterns = std::uint64_t{1} << t.cols();
      for (std::uint64_t g = 0; g < patterns; ++g) {
        std::vector<Rational> s(t.cols());
        for (std::size_t j = 0; j < t.cols(); ++j) s[j] = ((g >> j) & 1U) ? -1 : 1;
        best = max(best, range_norm(apply(t, Element(std::move(s))), t.range()));
      }
      return best;
    }
    default: break;
  }
  throw PreconditionError("ball_image_norm: unsupported domain " + dom.name());
}

OrderInterval order_bounded_image(const MatrixOp& t, const Element& u) {
  if (!is_positive(u)) throw PreconditionError("order_bounded_image: u must be positive");
  Element hi = apply(modulus_matrix(t), u);
  Element lo = -hi;
  return {std::move(lo), std::move(hi)};
}

MatrixOp basis_projection(std::size_t n, std::size_t dim, SpaceKind kind) {
  if (n < 1 || n > dim) {
    throw PreconditionError("basis_projection: need 1 <= n <= dim, got n=" + std::to_string(n) +
                            ", dim=" + std::to_string(dim));
  }
  const SpaceTag tag = SpaceTag::sequence(kind, dim);
  std::vector<std::vector<Rational>> rows(dim, std::vector<Rational>(dim, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) rows[i][i] = 1;
  return MatrixOp(std::move(rows), tag, tag);
}

NbVerdict nb_bounded_check(const MatrixOp& t, const NeighborhoodSpec& u) {
  require_conforms(u, t.domain());
  NbVerdict v;
  if (u.is_ball()) {
    v.scale = ball_image_norm(t) * u.radius();
    return v;
  }
  const SpaceTag& dom = t.domain();
  // A free factor lets every multiple of its basis vectors into U, so any
  // nonzero image along it is unbounded.
  for (std::size_t f = 0; f < dom.factors().size(); ++f) {
    if (u.constraints().count(f)) continue;
    auto [b, e] = factor_range(dom, f);
    for (std::size_t j = b; j < e; ++j) {
      Element image = t.column(j);
      if (image != Element::zero(image.dim())) {
        v.bounded = false;
        v.witness_factor = f;
        v.witness_coordinate = j - b;
        v.witness_image = std::move(image);
        return v;
      }
    }
  }
  Rational lambda = 0;
  for (const auto& [f, radius] : u.constraints()) {
    auto [b, e] = factor_range(dom, f);
    std::vector<std::vector<Rational>> sub(t.rows());
    for (std::size_t i = 0; i < t.rows(); ++i) {
      for (std::size_t j = b; j < e; ++j) sub[i].push_back(t(i, j));
    }
    lambda += radius * ball_image_norm(MatrixOp(std::move(sub), dom.factors()[f], t.range()));
  }
  v.scale = lambda;
  return v;
}

MonotoneVerdict operator_seq_monotone_check(const OperatorSeq& seq, std::uint64_t k_max) {
  if (k_max < 2) throw PreconditionError("operator_seq_monotone_check: K must be >= 2");
  if (!seq.generator) throw PreconditionError("operator sequence has no generator");
  MonotoneVerdict v;
  if (seq.claim == Monotonicity::None) return v;
  MatrixOp prev = seq.generator(1);
  for (std::uint64_t k = 2; k <= k_max; ++k) {
    MatrixOp cur = seq.generator(k);
    const bool ok = seq.claim == Monotonicity::Increasing ? operator_leq(prev, cur) : operator_leq(cur, prev);
    if (!ok) {
      v.holds = false;
      v.first_violation = k;
      return v;
    }
    prev = std::move(cur);
  }
  return v;
}

}  // namespace riesz
