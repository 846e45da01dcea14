#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lab {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;  // worst observed value or the failure message
};

/// Fast randomized invariant suite over every module; a few seconds at most.
std::vector<CheckResult> run_selftest(std::uint64_t seed, unsigned workers = 1);

}  // namespace lab
