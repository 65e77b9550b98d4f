#include "fracvel/acceptance.hpp"

#include <cstdio>

int main() {
  int failed = 0;
  for (const fracvel::CriterionResult& r : fracvel::run_acceptance()) {
    std::printf("[%s] criterion %2d: %s (%.2fs) %s\n", r.passed ? "PASS" : "FAIL", r.id, r.title.c_str(), r.seconds,
                r.detail.c_str());
    failed += r.passed ? 0 : 1;
  }
  std::printf("%d of %d criteria passed\n", fracvel::acceptance_count() - failed, fracvel::acceptance_count());
  return failed == 0 ? 0 : 1;
}
