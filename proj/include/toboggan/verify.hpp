#pragma once

#include <string>
#include <vector>

namespace toboggan {

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Runs the ten acceptance checks (all of them when `only` is empty).
/// Failures are reported, never thrown.
std::vector<CheckResult> run_acceptance(const std::vector<int>& only = {});

}  // namespace toboggan
