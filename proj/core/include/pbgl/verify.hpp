#pragma once

#include <string>
#include <vector>

namespace pbgl {

struct VerifyCheck {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool all_passed() const;
};

struct VerifyOptions {
  // Flips the sign of one coupling on one side of the generator only, which
  // must make the anti-Hermiticity check fail; exists so the failure path of
  // the suite itself is testable.
  bool inject_coupling_sign_fault = false;
};

// Built-in oracle suite: grid identity, closed-form shifts, right-hand-side
// anti-Hermiticity, dense-propagator equivalence and the two-path closed
// form.
VerifyReport run_verification(const VerifyOptions& options = {});

// One "PASS/FAIL name residual (< threshold)" line per check.
std::string format_report(const VerifyReport& report);

}  // namespace pbgl
