#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sgn {

struct SelfTestResult {
  std::string name;
  double value = 0.0;      // measured defect
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

// Invariance suite: reparametrization, conformal scaling, multiplicity,
// partition of unity and positive definiteness of derived metrics.
std::vector<SelfTestResult> invariance_suite(std::uint64_t seed = 1);

}  // namespace sgn
