#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qtm {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CriterionResult {
  std::string id;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0.0;
  double limit_seconds = 0.0;

  /// All checks pass and the runtime stays under the limit.
  bool passed() const;
};

struct ValidationReport {
  std::vector<CriterionResult> criteria;

  bool passed() const;
};

/// Suite names accepted by validate: one per acceptance criterion plus "all".
std::vector<std::string> validation_suites();

/// Runs a named suite. Throws InvalidArgument for unknown names.
ValidationReport validate(const std::string& suite);

/// One PASS/FAIL line per criterion, optionally followed by its checks.
void print_report(std::ostream& os, const ValidationReport& report, bool verbose);

}  // namespace qtm
