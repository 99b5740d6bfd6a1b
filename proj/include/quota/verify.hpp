#pragma once
// Cross-oracle verification suites behind the CLI's verify subcommand:
// counting theorem vs homology ranks, closed form vs exhaustive enumeration,
// quotient identities, root identities, sandwich bounds.

#include <string>
#include <vector>

#include "quota/quota_core.hpp"
#include "quota/splitmix64.hpp"

namespace quota {

enum class VerifyLevel { Quick, Full };

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;  // cases run, or the first counterexample
};

struct VerifyReport {
  std::vector<SuiteResult> suites;

  bool ok() const noexcept;
  // Empty string when everything passed.
  std::string first_failure() const;
};

VerifyReport run_verification(VerifyLevel level);

// Random system with integer weights in [1, max_weight] and an integer quota
// in [2, max_quota]; vertex count uniform in [1, max_vertices].
QuotaSystem random_quota_system(SplitMix64& rng, int max_vertices, int max_weight,
                                long long max_quota);

}  // namespace quota
