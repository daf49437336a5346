#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace divzeta {

struct PropertyResult {
  std::string suite;
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 42;
  /// Also load this table file and check it against the factorization oracle.
  std::optional<std::filesystem::path> table;
};

/// ramanujan, fejer, dispersion, laurent, zeta
const std::vector<std::string>& verify_suite_names();

/// `suite` is one of verify_suite_names() or "all". Never throws for a
/// failing property; the failure is reported in the result list instead.
std::vector<PropertyResult> run_verify(const std::string& suite, const VerifyOptions& options = {});

} // namespace divzeta
