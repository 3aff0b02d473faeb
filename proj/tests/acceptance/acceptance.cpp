#include <iostream>

#include "verify.hpp"

int main() {
  using namespace nlslab::verify;
  const auto results = run_suite(Instrument{}, {}, [](const CriterionResult& r) {
    std::cout << format_line(r) << std::endl;
  });
  const bool ok = suite_passed(results);
  std::cout << (ok ? "acceptance: all required criteria passed" : "acceptance: FAILED") << std::endl;
  return ok ? 0 : 1;
}
