#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sptlab/report.hpp"

namespace sptlab {

struct CheckOptions {
  std::vector<std::int64_t> ells;   // empty: the check's default list
  int t = 0;                        // 0: every level the check covers
  Index nmax = -1;                  // -1: the check's default
  Index prec = -1;                  // exponent parameter (a, b, c) where it applies
  std::optional<Modulus> modulus;   // 0 means exact
};

/// One independent unit of work. Reports come back in a fixed order.
struct CheckTask {
  std::string label;
  std::function<std::vector<CongruenceReport>()> run;
};

struct CheckSpec {
  std::string name;
  std::string summary;
  Status expected = Status::pass;
  /// Expands options into tasks; throws std::invalid_argument on a bad
  /// parameter combination.
  std::function<std::vector<CheckTask>(const CheckOptions&)> plan;
};

const std::vector<CheckSpec>& registry();
const CheckSpec* find_check(const std::string& name);

/// Runs tasks on up to `jobs` threads. The output order follows the task
/// order regardless of scheduling. std::invalid_argument from a task is
/// rethrown; other exceptions become failed reports.
std::vector<CongruenceReport> run_tasks(const std::vector<CheckTask>& tasks, int jobs);

}  // namespace sptlab
