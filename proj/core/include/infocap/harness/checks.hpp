#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace infocap::harness {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Deterministic analytic suite: gradient checks, value-function zeros,
/// oracle-ratio enumeration, permuted optimum, metric identities, channel and
/// decoder invariants. Exceptions inside a check count as failures.
std::vector<CheckResult> run_checks(std::uint64_t seed);

/// One line per check plus a final tally; returns true when all passed.
bool write_check_report(const std::filesystem::path& path, const std::vector<CheckResult>& results);

}  // namespace infocap::harness
