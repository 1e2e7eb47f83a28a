#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fracgreedy {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  // When nonempty, run only the named check.
  std::string only;
  // Negative-control hook for the test suite: perturbs the recursion output
  // inside the gl-closed-form check so it must fail.
  bool corrupt_gl_recursion = false;
};

std::vector<std::string> verification_check_names();

// Runs the built-in verification suite (the same checks `fracgreedy verify`
// prints). Throws std::invalid_argument for an unknown check name.
std::vector<CheckResult> run_verification(const VerifyOptions& options = {});

bool all_passed(const std::vector<CheckResult>& results);
void print_report(std::ostream& out, const std::vector<CheckResult>& results);

}  // namespace fracgreedy
