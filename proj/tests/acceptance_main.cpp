#include <iostream>

#include "stokes/acceptance.hpp"

int main() {
  int failed = 0;
  for (const auto& o : stokes::acceptance::run_all(std::cout)) failed += o.passed ? 0 : 1;
  std::cout << (failed == 0 ? "all criteria passed" : "some criteria failed") << '\n';
  return failed == 0 ? 0 : 1;
}
