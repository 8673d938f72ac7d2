#pragma once

#include <random>

#include "ludics/design.hpp"

namespace ludics {

// Seeded generator for finite linear designs over a signature.
class DesignGen {
 public:
  DesignGen(const Signature& sig, uint64_t seed) : sig_(sig), eng_(seed) {}

  // Atomic positive design (free variables within {x0}).
  DesignPtr positive(int depth, bool allow_cut = false);
  // Atomic negative design.
  DesignPtr negative(int depth, bool allow_cut = false);

  // Positive design over the given free-variable budget; uses each variable
  // at most once (linearity).
  DesignPtr positive_over(std::vector<Var> avail, int depth, bool allow_cut);
  DesignPtr negative_over(std::vector<Var> avail, int depth, bool allow_cut);

  int pick(int n) { return (int)(eng_() % (uint64_t)n); }
  bool coin(double p) { return std::uniform_real_distribution<double>(0, 1)(eng_) < p; }

  // Keeps generated sums narrow so enumeration stays tractable.
  int max_branches = 2;

 private:
  const Signature& sig_;
  std::mt19937_64 eng_;
  int fresh_ = 0;
  Var fresh() { return "r" + std::to_string(fresh_++); }
};

}  // namespace ludics
