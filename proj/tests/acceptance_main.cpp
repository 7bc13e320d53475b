#include "toboggan/verify.hpp"

#include <cstdio>

int main() {
  int failures = 0;
  for (const toboggan::CheckResult& result : toboggan::run_acceptance()) {
    std::printf("criterion %2d [%s] %s%s%s\n", result.id,
                result.pass ? "pass" : "FAIL", result.name.c_str(),
                result.detail.empty() ? "" : " -- ", result.detail.c_str());
    std::fflush(stdout);
    if (!result.pass) ++failures;
  }
  if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
