#pragma once

#include <functional>
#include <string>
#include <vector>

namespace kempner::verify {

enum class Level { Quick, Full };

struct CriterionResult {
  int id = 0;
  std::string title;
  bool quick = false;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

/// Criterion ids run at `level`: the quick subset or all of 1..13.
std::vector<int> criteria(Level level);

/// Runs one criterion. Exceptions thrown by the computation are reported
/// as a failure with the message in `detail`.
CriterionResult run_criterion(int id);

/// Runs every criterion of the level in id order, calling `onResult` after
/// each one.
std::vector<CriterionResult> run(Level level,
                                 const std::function<void(const CriterionResult&)>& onResult = {});

/// "PASS [ 1] title (0.12 s): detail"
std::string format_line(const CriterionResult& r);

}  // namespace kempner::verify
