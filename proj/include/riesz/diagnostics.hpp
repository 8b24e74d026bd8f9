#pragma once

#include "riesz/json_io.hpp"
#include "riesz/operators.hpp"
#include "riesz/sampling.hpp"
#include "riesz/space.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace riesz {

enum class Verdict { Holds, Fails, Inconclusive };

std::string to_string(Verdict v);

struct CurvePoint {
  std::int64_t parameter = 0;
  Rational value;
  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

using Curve = std::vector<CurvePoint>;

struct Witness {
  std::string label;
  Json value;
};

/// Outcome of one probe. Infinite-dimensional statements are carried by
/// parameter-indexed exact curves; verdicts describe the curves only.
struct ProbeReport {
  std::string probe_name;
  Verdict verdict = Verdict::Inconclusive;
  std::vector<Witness> witnesses;
  std::optional<Curve> curve;
  /// Secondary exact curves, keyed by name (e.g. "sup_norm", "order_unit_side").
  std::map<std::string, Curve> series;
  std::vector<std::string> notes;
  std::uint64_t seed = 0;
  std::string config_hash;
};

/// Throws if a "fails" verdict carries no witness.
void check_report(const ProbeReport& r);

Json to_json(const ProbeReport& r);
/// Markdown section; curves become tables. With `approx`, a decimal column
/// marked non-authoritative is appended.
std::string to_markdown(const ProbeReport& r, bool approx = false);

enum class FamilyKind { Tents, Ramps, C0Tails, Custom };

std::string to_string(FamilyKind k);

/// A sequence k -> u_k (k >= 1) with a claimed order direction.
struct SequenceFamily {
  FamilyKind kind = FamilyKind::Custom;
  std::string name;
  std::function<Point(std::uint64_t)> generator;
  Monotonicity order_claim = Monotonicity::None;
  SpaceTag space;
  /// Declared uniform norm bound (Levi premise); observed maximum if absent.
  std::optional<Rational> norm_bound;
  /// Limit known in closed form, if any; only echoed into reports.
  std::optional<Point> declared_limit;

  /// Tents decreasing to 0 pointwise on (0,1], in PwlSup.
  static SequenceFamily tents();
  /// Ramps min(1, kt) increasing, in PwlSup, norm bound 1.
  static SequenceFamily ramps();
  /// u_k keeps coordinates i >= k of x_i = 2^-i (1-based), in SeqLInf(dim).
  static SequenceFamily c0_tails(std::size_t dim);
  static SequenceFamily constant(Point value, SpaceTag space, Monotonicity claim);
  /// u_k = min(k, steps)/steps * target; increasing for target >= 0.
  static SequenceFamily stabilizing(Element target, std::uint64_t steps, SpaceKind kind = SpaceKind::SeqLInf);
  /// u_k = (1 - 2^-k) * target, declared limit target.
  static SequenceFamily geometric(Element target, SpaceKind kind = SpaceKind::SeqLInf);
};

/// norm(x v y) / max(norm x, norm y) for positive x, y, not both zero.
Rational am_ratio(const Point& x, const Point& y, const SpaceTag& tag);

/// Max norm over the join closure of a finite set; uses the full join when
/// every member is positive (it dominates the whole closure).
Rational closure_max_norm(std::span<const Point> set, const SpaceTag& tag,
                          std::size_t cap = kDefaultClosureCap);

/// defect(n) = max over sampled unit-ball sets B (plus the canonical
/// disjoint set: basis vectors, or n disjoint unit bumps for Pwl kinds) of
/// the max norm over the join closure of B.
ProbeReport am_defect_curve(SpaceKind kind, std::span<const std::size_t> dims,
                            const SamplingSpec& sampling = {});

/// Samples positive pairs (the canonical disjoint pair first) and checks
/// am_ratio == 1 exactly.
ProbeReport am_identity_check(const SpaceTag& tag, std::size_t trials, std::uint64_t seed);

/// Decreasing family: holds if norm(u_K) <= threshold, fails on a constant
/// norm curve, inconclusive otherwise.
ProbeReport lebesgue_probe(const SequenceFamily& fam, std::uint64_t k_max, const Rational& threshold);

/// Increasing bounded family: exact supremum on coordinate lattices; slope
/// blow-up certificate on pwl families.
ProbeReport levi_probe(const SequenceFamily& fam, std::uint64_t k_max);

/// gap(n) = induced_norm(I - P_n), n = 1..dim-1, plus the pointwise
/// contrast norm((I - P_n) x) for x_i = 2^-i.
ProbeReport projection_gap(std::size_t dim, SpaceKind kind);

enum class PreservationProbe { Am, Levi };

struct PreservationParams {
  SamplingSpec sampling;
  /// One increasing family per factor (Levi only).
  std::vector<SequenceFamily> families;
  std::uint64_t k_max = 16;
};

ProbeReport product_preservation_check(const std::vector<SpaceTag>& tags, PreservationProbe probe,
                                       const PreservationParams& params);

/// Rank-one operators T_k = f (x) y_k with f(x0) = 1 built from a strictly
/// positive coordinate of x0; checks T_k increasing and sup T_k (x0) = sup y_k.
ProbeReport operator_levi_demo(const SequenceFamily& y_family, const Element& x0, std::uint64_t k_max);

/// Decreasing positive operators with entrywise infimum 0: curve of
/// induced_norm(T_k) next to the order-unit side of the same identity.
ProbeReport operator_lebesgue_demo(const OperatorSeq& family, const SpaceTag& tag, std::uint64_t k_max,
                                   const Rational& threshold);

/// T_k = 2^-k I.
OperatorSeq geometric_identity_seq(std::size_t dim, SpaceKind kind = SpaceKind::SeqLInf);
/// T_k = diag(2^-k on the first ceil(dim/2) coordinates, 4^-k after).
OperatorSeq geometric_diagonal_seq(std::size_t dim, SpaceKind kind = SpaceKind::SeqLInf);

/// Identity on a product of `factor_count` SeqLInf(factor_dim) factors
/// against the neighborhood constraining `constrained` (0-based, radius 1).
ProbeReport nb_boundedness_probe(std::size_t factor_count, std::size_t factor_dim,
                                 const std::vector<std::size_t>& constrained);

}  // namespace riesz
