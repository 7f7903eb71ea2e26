#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace misolab {

struct SuiteResult {
  std::string name;
  std::uint64_t seed = 0;
  std::size_t checks = 0;
  std::vector<std::string> violations;

  bool passed() const { return violations.empty(); }
};

/// jordan-orders, newton-roundtrip, defect-consistency, shift-factory,
/// decomposition, perturbation, float-robustness, degree-density,
/// worked-examples.
const std::vector<std::string>& suite_names();

/// Runs one invariant suite with a deterministic seed. Unknown names throw
/// PreconditionError.
SuiteResult run_suite(const std::string& name, std::uint64_t seed);

}  // namespace misolab
