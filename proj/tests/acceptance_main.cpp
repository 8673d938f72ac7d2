#include <iostream>

#include "ludics/selftest.hpp"

int main() {
  auto results = ludics::run_acceptance(0, std::cout);
  bool all = true;
  for (const auto& r : results) all = all && r.pass;
  return all ? 0 : 1;
}
