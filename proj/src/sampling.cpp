#include "riesz/sampling.hpp"

#include <algorithm>

namespace riesz {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : stream) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return splitmix64(seed ^ splitmix64(h));
}

Sampler::Sampler(std::uint64_t seed, int half_range, int denominator)
    : engine_(seed), half_range_(half_range), denominator_(denominator) {
  if (half_range <= 0 || denominator <= 0) throw PreconditionError("sampler grid must be nonempty");
}

Sampler::Sampler(const SamplingSpec& spec, std::string_view stream)
    : Sampler(derive_seed(spec.seed, stream), spec.half_range, spec.denominator) {}

std::uint64_t Sampler::below(std::uint64_t n) { return engine_() % n; }

Rational Sampler::grid_value() {
  const auto k = static_cast<std::int64_t>(below(2 * static_cast<std::uint64_t>(half_range_) + 1)) -
                 half_range_;
  return ratio(k, denominator_);
}

Rational Sampler::nonnegative_grid_value() {
  const auto k = static_cast<std::int64_t>(below(static_cast<std::uint64_t>(half_range_) + 1));
  return ratio(k, denominator_);
}

Rational Sampler::unit_scalar() {
  const auto k = static_cast<std::int64_t>(below(2 * static_cast<std::uint64_t>(denominator_) + 1)) -
                 denominator_;
  return ratio(k, denominator_);
}

Element Sampler::element(std::size_t dim) {
  std::vector<Rational> c;
  c.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) c.push_back(grid_value());
  return Element(std::move(c));
}

Element Sampler::positive_element(std::size_t dim) {
  std::vector<Rational> c;
  c.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) c.push_back(nonnegative_grid_value());
  return Element(std::move(c));
}

PwlFunc Sampler::pwl(std::size_t max_interior) {
  const std::size_t interior = static_cast<std::size_t>(below(max_interior + 1));
  std::vector<std::int64_t> ticks;
  while (ticks.size() < interior) {
    const auto j = static_cast<std::int64_t>(below(15)) + 1;  // 1..15
    if (std::find(ticks.begin(), ticks.end(), j) == ticks.end()) ticks.push_back(j);
  }
  std::sort(ticks.begin(), ticks.end());
  std::vector<Breakpoint> pts;
  pts.push_back({0, grid_value()});
  for (auto j : ticks) pts.push_back({ratio(j, 16), grid_value()});
  pts.push_back({1, grid_value()});
  return PwlFunc(std::move(pts));
}

PwlFunc Sampler::positive_pwl(std::size_t max_interior) { return abs(pwl(max_interior)); }

Point Sampler::point(const SpaceTag& tag) {
  if (tag.is_function()) return pwl();
  if (tag.is_sequence()) return element(tag.dim());
  ProductElement p;
  for (const auto& f : tag.factors()) {
    if (f.is_function()) {
      p.factors.emplace_back(pwl());
    } else {
      p.factors.emplace_back(element(f.dim()));
    }
  }
  return p;
}

Point Sampler::positive_point(const SpaceTag& tag) { return abs(point(tag)); }

std::pair<Point, Point> Sampler::dominated_pair(const SpaceTag& tag) {
  if (tag.is_function()) {
    PwlFunc y = pwl();
    PwlFunc ay = abs(y);
    // Clamp a random function into the band [-|y|, |y|].
    PwlFunc x = meet(join(pwl(), -ay), ay);
    return {Point(std::move(x)), Point(std::move(y))};
  }
  if (!tag.is_sequence()) throw PreconditionError("dominated_pair: product tags are not sampled");
  Element y = element(tag.dim());
  std::vector<Rational> c;
  for (std::size_t i = 0; i < y.dim(); ++i) c.push_back(unit_scalar() * y[i]);
  return {Point(Element(std::move(c))), Point(std::move(y))};
}

}  // namespace riesz
