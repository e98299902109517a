#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "artifact/harness/table.hpp"

namespace artifact::harness {

struct CheckResult {
  std::string name;
  bool ok = false;
  std::string detail;  // measured value / tolerance
};

// Invariant suite behind the `validate` subcommand: special-function
// identities, sampler goodness-of-fit, closed-form edge cases, determinism.
std::vector<CheckResult> run_validation(std::uint64_t base_seed);

ResultTable validation_table(const std::vector<CheckResult>& checks);

}  // namespace artifact::harness
