#pragma once

#include <functional>
#include <string>
#include <vector>

#include "report.hpp"

namespace permpoly::app {

inline constexpr int kCriterionCount = 12;

struct CriterionResult {
  int id = 0;
  std::string title;
  bool exact = false;      // every exact check held
  double elapsed_ms = 0;
  double budget_ms = 0;
  std::string summary;
  std::vector<std::string> notes;  // informational lines, never affect the verdict
  json records = json::array();    // per-instance evidence

  bool in_budget() const { return elapsed_ms <= budget_ms; }
  bool pass() const { return exact && in_budget(); }
};

struct ReproduceOptions {
  unsigned parallelism = 1;
  /// Test hook: "F3-s" builds F3 with s + 1 while checking the true s.
  std::string mutation;
  /// Criteria to run; empty means all.
  std::vector<int> only;
};

/// Runs the regression suite in criterion order. Criterion 12 re-examines the
/// instances verified by criteria 1-8 and runs those first when they were
/// not selected.
std::vector<CriterionResult> reproduce(const ReproduceOptions& options,
                                       const std::function<void(const CriterionResult&)>& on_result = {});

json to_json(const CriterionResult& result);

}  // namespace permpoly::app
