#pragma once

#include <string>
#include <vector>

namespace zb::cli {

/// One numeric check: passes when value <= bound (or the predicate held).
struct Check {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  std::string suite;
  std::vector<Check> checks;
  bool passed() const;
  std::string render() const;
};

std::vector<std::string> suite_names();

/// Runs identities, equivalence, sumrules, operator or oracle; throws ConfigError on other names.
VerifyReport run_verify(const std::string& suite);

}  // namespace zb::cli
