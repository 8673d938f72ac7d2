#pragma once

#include <functional>

#include "ludics/action.hpp"
#include "ludics/design.hpp"

namespace ludics {

// Prunes the positive subtrees of d never visited in an interaction with any
// of the tests (all of which must converge against d).
DesignPtr prune_unvisited(const DesignPtr& d, const std::vector<DesignPtr>& tests, long fuel);

// Enumerates the negative designs assembled from the views of V (receptive at
// every reachable negative action, one positive response or Daimon per
// branch), keeps those orthogonal to every test, pruned and deduplicated.
// The candidate space can be astronomically large (every exploration
// schedule is a distinct design); beyond `cap` the enumeration truncates to
// a sample and reports it through `truncated`.
std::vector<DesignPtr> enumerate_strategies(const PathSet& V,
                                            const std::vector<DesignPtr>& tests,
                                            long fuel, size_t cap = 20000,
                                            bool* truncated = nullptr);

struct EnumOptions {
  int depth = 3;        // proper positive actions along any chain
  int budget = 4;       // proper positive actions in total
  int max_branches = 2; // branches per sum
};

// Streams the canonical linear atomic cut-free designs over the given names
// within the bounds; stops early when the callback returns false.
void enumerate_designs(const Signature& sig, const std::vector<Name>& names,
                       Polarity pol, const EnumOptions& opts,
                       const std::function<bool(const DesignPtr&)>& cb);

}  // namespace ludics
