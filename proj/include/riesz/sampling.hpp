#pragma once

#include "riesz/space.hpp"

#include <cstdint>
#include <random>
#include <string_view>

namespace riesz {

inline constexpr std::uint64_t kDefaultSeed = 0xA11CE;

/// Grid and sizes for randomized probes. Coordinates are drawn from
/// {k / denominator : -half_range <= k <= half_range}.
struct SamplingSpec {
  std::size_t trials = 200;
  std::size_t set_size = 4;
  int half_range = 16;
  int denominator = 8;
  std::uint64_t seed = kDefaultSeed;
};

/// Independent, reproducible seed stream for a named job.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream);

/// Deterministic exact-rational sampler. Draws use raw engine output (no
/// std distributions) so streams agree across standard libraries.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed, int half_range = 16, int denominator = 8);
  Sampler(const SamplingSpec& spec, std::string_view stream);

  std::uint64_t below(std::uint64_t n);
  Rational grid_value();
  Rational nonnegative_grid_value();
  /// Uniform on {j / denominator : |j| <= denominator}, i.e. inside [-1, 1].
  Rational unit_scalar();

  Element element(std::size_t dim);
  Element positive_element(std::size_t dim);
  /// Random pwl function with up to `max_interior` interior breakpoints on
  /// the grid {j/16}.
  PwlFunc pwl(std::size_t max_interior = 3);
  PwlFunc positive_pwl(std::size_t max_interior = 3);

  Point point(const SpaceTag& tag);
  Point positive_point(const SpaceTag& tag);
  /// A point y and an x with |x| <= |y|.
  std::pair<Point, Point> dominated_pair(const SpaceTag& tag);

 private:
  std::mt19937_64 engine_;
  int half_range_;
  int denominator_;
};

}  // namespace riesz
