#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace riesz {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 0xA11CE;
  /// Randomized checks per law.
  std::size_t trials = 1000;
};

/// Library self-check: lattice laws, modulus oracle, closure identities and
/// the canonical certificates. Used by `riesz_lab verify`.
std::vector<CheckResult> run_invariant_suite(const VerifyOptions& options = {});

}  // namespace riesz
