#pragma once

// End-to-end acceptance checks. Each criterion runs at fixed tolerances and
// reports one pass/fail line.

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace stokes::acceptance {

struct Outcome {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct Criterion {
  int id;
  std::string title;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria();

/// Runs every criterion, printing "[PASS] ..." / "[FAIL] ..." lines to `log`.
std::vector<Outcome> run_all(std::ostream& log);

std::string format_line(const Outcome& o);

}  // namespace stokes::acceptance
