#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace nlslab::verify {

/// Grid and potential the acceptance checks run on.
struct Instrument {
  double depth = 2.0;  ///< Poschl-Teller depth, V = -depth sech^2 x
  std::size_t n = 1024;
  double half_width = 20.0;
  std::size_t ny = 64;
  /// The 2D branch and the direct omega'' evaluation use dense solves on the
  /// symmetric grid, so they get their own smaller one.
  std::size_t branch_n = 256;
  std::size_t branch_ny = 16;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  bool stretch = false;  ///< reported, but a failure does not fail the suite
  std::string detail;
  double seconds = 0.0;
};

inline constexpr int kCriterionCount = 10;

CriterionResult run_criterion(int id, const Instrument& instrument = {});

/// Runs `ids` (all criteria if empty) in order.
std::vector<CriterionResult> run_suite(const Instrument& instrument, std::span<const int> ids = {},
                                       const std::function<void(const CriterionResult&)>& on_done = {});

/// "PASS [3] title (1.2 s): detail"
std::string format_line(const CriterionResult& result);

/// True when every non-stretch criterion passed.
bool suite_passed(std::span<const CriterionResult> results);

}  // namespace nlslab::verify
