#pragma once

#include <string>
#include <vector>

namespace hsc {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  // Subset of criterion ids to run; empty runs all of 1..9.
  std::vector<int> criteria;
  // Fault-injection fixture: perturbs the oracle multiplier l_n by this
  // relative amount so the failure-reporting path can be exercised. Leave at
  // 0 for real verification.
  double inject_l_error = 0.0;
};

// Runs the acceptance checks and returns one result per criterion, in id
// order. Exceptions inside a criterion are caught and reported as failures.
std::vector<CriterionResult> run_acceptance_suite(const VerifyOptions& opt);

}  // namespace hsc
