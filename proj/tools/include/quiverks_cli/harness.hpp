#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace qks::cli {

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::size_t cases = 20;
  std::size_t max_dim = 8;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CaseReport {
  std::size_t index = 0;
  std::string summary;
  std::vector<CheckResult> checks;

  bool passed() const;
};

struct VerifyReport {
  VerifyOptions options;
  std::vector<CaseReport> cases;

  std::size_t failures() const;
};

/// Randomized property sweep over F_101. Case i draws everything from
/// derive_seed(seed, "verify", i), so reports are reproducible.
VerifyReport run_verify(const VerifyOptions& options);

std::string format_text(const VerifyReport& report);
std::string format_json(const VerifyReport& report);

}  // namespace qks::cli
