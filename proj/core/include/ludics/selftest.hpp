#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace ludics {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

// Runs the acceptance criteria; one result per criterion, printed as it
// completes. Deterministic for a fixed seed.
std::vector<CriterionResult> run_acceptance(uint64_t seed, std::ostream& out);

}  // namespace ludics
