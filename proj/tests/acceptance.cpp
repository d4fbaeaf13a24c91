#include <iostream>

#include "qtm/validate.hpp"

int main() {
  const qtm::ValidationReport report = qtm::validate("all");
  qtm::print_report(std::cout, report, false);
  return report.passed() ? 0 : 1;
}
