#pragma once

#include "riesz/space.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace riesz {

/// Linear operator between coordinate lattices, stored row-major. The
/// domain and range tags fix the dimensions (a product of sequence spaces
/// counts with its total dimension) and the norms used by induced_norm.
class MatrixOp {
 public:
  /// Tags default to SeqLInf of matching dimension.
  explicit MatrixOp(std::vector<std::vector<Rational>> rows);
  MatrixOp(std::vector<std::vector<Rational>> rows, SpaceTag domain, SpaceTag range);

  static MatrixOp identity(const SpaceTag& tag);
  static MatrixOp zero(const SpaceTag& domain, const SpaceTag& range);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  const SpaceTag& domain() const noexcept { return domain_; }
  const SpaceTag& range() const noexcept { return range_; }
  std::vector<std::vector<Rational>> to_rows() const;
  Element column(std::size_t j) const;

  friend bool operator==(const MatrixOp&, const MatrixOp&) = default;

  MatrixOp operator-() const;
  friend MatrixOp operator+(const MatrixOp& a, const MatrixOp& b);
  friend MatrixOp operator-(const MatrixOp& a, const MatrixOp& b);
  friend MatrixOp operator*(const Rational& s, const MatrixOp& a);

 private:
  struct Flat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Rational> entries;
  };
  static Flat flatten_rows(std::vector<std::vector<Rational>> rows);
  MatrixOp(Flat flat, SpaceTag domain, SpaceTag range);
  MatrixOp(Flat flat, std::nullopt_t);
  MatrixOp(std::size_t rows, std::size_t cols, std::vector<Rational> entries, SpaceTag domain,
           SpaceTag range);
  template <class F>
  MatrixOp map_entries(F f) const;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
  SpaceTag domain_;
  SpaceTag range_;
};

void require_same_shape(const MatrixOp& a, const MatrixOp& b);

/// x -> f(x) y.
class RankOneOp {
 public:
  RankOneOp(std::vector<Rational> functional, Element target);

  const std::vector<Rational>& functional() const noexcept { return functional_; }
  const Element& target() const noexcept { return target_; }
  std::size_t domain_dim() const noexcept { return functional_.size(); }

  /// y f^T with SeqLInf tags unless given.
  MatrixOp to_matrix() const;
  MatrixOp to_matrix(const SpaceTag& domain, const SpaceTag& range) const;

 private:
  std::vector<Rational> functional_;
  Element target_;
};

enum class Monotonicity { Increasing, Decreasing, None };

struct OperatorSeq {
  std::function<MatrixOp(std::uint64_t)> generator;  // defined on k >= 1
  Monotonicity claim = Monotonicity::None;
};

Element apply(const MatrixOp& t, const Element& x);
Element apply(const RankOneOp& t, const Element& x);
/// Product-tagged operators act on flattened product elements.
ProductElement apply(const MatrixOp& t, const ProductElement& x);

struct PositivityVerdict {
  bool positive = true;
  /// 0-based j with some coordinate of T e_j negative.
  std::optional<std::size_t> witness_basis;
};

PositivityVerdict is_positive(const MatrixOp& t);
PositivityVerdict is_positive(const RankOneOp& t);

/// S <= T in the operator order, i.e. T - S is positive.
bool operator_leq(const MatrixOp& s, const MatrixOp& t);

inline constexpr std::size_t kModulusOracleMaxDim = 20;

/// sup{ |T u| : |u| <= x } for x >= 0, by enumerating the 2^n extreme
/// points u_i = +-x_i of the order interval [-x, x] (Gray-code order, one
/// column update per step).
Element modulus_rk(const MatrixOp& t, const Element& x);

/// Entrywise absolute value, the closed form of the modulus on coordinate
/// lattices.
MatrixOp modulus_matrix(const MatrixOp& t);

struct DominationVerdict {
  bool dominates = true;
  /// First (row, col), 0-based, where |T| exceeds |S|.
  std::optional<std::pair<std::size_t, std::size_t>> witness_entry;
};

/// |T| <= |S|.
DominationVerdict dominates(const MatrixOp& s, const MatrixOp& t);

/// Operator norm for SeqL1 -> SeqL1 (max column sum) or SeqLInf -> SeqLInf
/// (max row sum). Other tag pairs throw PreconditionError.
Rational induced_norm(const MatrixOp& t);

/// sup of norm(T x) over the closed unit ball of a plain sequence domain,
/// for any plain sequence range. Exact; enumerates sign vectors for SeqLInf
/// domains with non-SeqLInf range (dim <= kModulusOracleMaxDim).
Rational ball_image_norm(const MatrixOp& t);

struct OrderInterval {
  Element lo;
  Element hi;
};

/// T maps [-u, u] into [-|T|u, |T|u], the smallest symmetric interval.
OrderInterval order_bounded_image(const MatrixOp& t, const Element& u);

/// Keeps the first n coordinates (1 <= n <= dim).
MatrixOp basis_projection(std::size_t n, std::size_t dim, SpaceKind kind = SpaceKind::SeqLInf);

struct NbVerdict {
  bool bounded = true;
  /// Upper bound lambda with T(U) inside lambda * (unit neighborhood of the
  /// range); exact (operator norm times radius) for plain balls.
  std::optional<Rational> scale;
  /// Unconstrained input direction with nonzero image, 0-based.
  std::optional<std::size_t> witness_factor;
  std::optional<std::size_t> witness_coordinate;
  std::optional<Element> witness_image;
};

NbVerdict nb_bounded_check(const MatrixOp& t, const NeighborhoodSpec& u);

struct MonotoneVerdict {
  bool holds = true;
  /// 1-based index k where T_{k-1} -> T_k breaks the claim.
  std::optional<std::uint64_t> first_violation;
};

MonotoneVerdict operator_seq_monotone_check(const OperatorSeq& seq, std::uint64_t k_max);

}  // namespace riesz
