#pragma once

// The reproduction suite: ten numbered checks, each run at fixed tolerances.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace imd::verify {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string summary;             // one line
  std::vector<std::string> lines;  // per-case detail
  double seconds = 0.0;
  double time_limit = 0.0;
};

enum class Suite { Thermo, Exact, Laplace, Limits, All };

std::optional<Suite> parse_suite(std::string_view name);
std::string to_string(Suite suite);

/// Criterion ids belonging to a suite, ascending.
std::vector<int> criteria_in(Suite suite);

/// Runs criterion id in 1..10. Library errors are caught and reported as a
/// failure. The wall-clock limit is part of the check.
CriterionResult run_criterion(int id);

std::vector<CriterionResult> run_suite(Suite suite);

/// "PASS  3  name  (0.12 s)  summary"
std::string format_line(const CriterionResult& result);

}  // namespace imd::verify
