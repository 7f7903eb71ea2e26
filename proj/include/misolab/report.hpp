#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "misolab/spec_file.hpp"

namespace misolab {

/// Result of one CLI command: machine-readable JSON, a human summary and the
/// process exit code.
struct AnalysisReport {
  nlohmann::json json;
  std::string human;
  int exit_code = 0;
};

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kParse = 2;
inline constexpr int kPrecondition = 3;
inline constexpr int kSuiteViolation = 4;
}  // namespace exit_code

struct AnalysisFlags {
  std::optional<unsigned> m_max;
  std::optional<double> tol;
  std::optional<std::size_t> window;
};

struct ShiftFlags {
  AnalysisFlags common;
  unsigned m = 1;
  std::size_t basis_count = 4;
};

struct OrthoFlags {
  AnalysisFlags common;
  std::string h1;
  std::string h2;
  std::string z1;
  std::string z2;
  std::optional<std::string> eps;
  std::uint64_t seed = 0;
};

AnalysisReport cmd_order(const OperatorSpec& spec, const AnalysisFlags& flags);
AnalysisReport cmd_decompose(const OperatorSpec& spec, const AnalysisFlags& flags);
AnalysisReport cmd_shift(const OperatorSpec& spec, const ShiftFlags& flags);
AnalysisReport cmd_ortho(const OperatorSpec& spec, const OrthoFlags& flags);
AnalysisReport cmd_perturb(const OperatorSpec& a, const OperatorSpec& n,
                           const AnalysisFlags& flags);
AnalysisReport cmd_verify(const std::string& suite, std::uint64_t seed);

}  // namespace misolab
