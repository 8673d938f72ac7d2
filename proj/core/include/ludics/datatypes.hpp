#pragma once

#include "ludics/behaviour.hpp"
#include "ludics/pattern.hpp"

namespace ludics {

using Env = std::map<Var, BehaviourPtr>;

// Interpretation of data patterns; mu nodes become level-indexed Kleene
// iterates at the given level (nested fixed points share it).
BehaviourPtr interpret_pattern(const PatternPtr& a, const Env& env, int level);

struct MonotoneReport {
  bool holds = false;
  int levels = 0;
  std::string detail;
  std::vector<size_t> incarnation_sizes;  // per level 0..K
};

// Incarnation and visitable-path inclusion across Kleene levels 0..K.
MonotoneReport kleene_monotone_report(BehaviourContext& ctx, const PatternPtr& a,
                                      const Env& env, int levels, const Bounds& bounds);

// Basis of a steady data pattern (structural recursion from the proof of the
// basis lemma). Throws on non-steady patterns.
BehaviourPtr basis(const PatternPtr& a);

// Canonical inhabitants (names b, n, l as in the stock patterns).
DesignPtr encode_bool(bool v);
DesignPtr encode_nat(int k);
DesignPtr encode_list(const std::vector<DesignPtr>& elems);
std::optional<int> decode_nat(const DesignPtr& d);

PatternPtr bool_pattern();                  // b (+) b
PatternPtr nat_pattern();                   // mu X. n (+) X
PatternPtr list_pattern(const Name& elem);  // mu X. l (+) (elem (*) X)
PatternPtr tree_pattern(const Name& elem);  // mu X. t (+) (elem (*) List_X)

// Declares the constant names a pattern mentions (arity 0) in the signature.
void declare_pattern_names(Signature& sig, const PatternPtr& p);

}  // namespace ludics
