#pragma once

#include <optional>

#include "ludics/action.hpp"
#include "ludics/design.hpp"
#include "ludics/reduction.hpp"

namespace ludics {

// A set of variable-indexed negative designs plus at most one positive design.
struct MultiDesign {
  std::map<Var, DesignPtr> negatives;
  std::optional<DesignPtr> positive;

  Polarity polarity() const {
    return positive ? Polarity::Positive : Polarity::Negative;
  }
  bool empty() const { return negatives.empty() && !positive; }

  static MultiDesign of_positive(DesignPtr p) { return MultiDesign{{}, std::move(p)}; }
  static MultiDesign of_negative(DesignPtr n, const Var& at = kX0) {
    return MultiDesign{{{at, std::move(n)}}, std::nullopt};
  }
};

VarSet fv(const MultiDesign& d);
VarSet np(const MultiDesign& d);

// Pairwise-disjoint free variables and the fv/np separation of Def. 17.
void check_multidesign(const MultiDesign& d);

enum class Compat { Incompatible, Compatible, ClosedCompatible };
Compat compatible(const MultiDesign& d, const MultiDesign& e);

// The 4-case Cut construction; requires compatibility.
MultiDesign cut(const MultiDesign& d, const MultiDesign& e);

MultiDesign normalize_multi(const MultiDesign& d, long fuel = kDefaultFuel);

struct InteractionResult {
  AjSeq seq;        // actions on the side of D
  bool converged;   // a daimon was reached on either side
  bool fuel_out = false;
};

// Interaction sequence of D with E (Def. 23); D and E of opposite polarity,
// compatible, with fv(D) <= np(E) and fv(E) <= np(D).
InteractionResult interaction_sequence(const MultiDesign& d, const MultiDesign& e,
                                       long fuel = kDefaultFuel);

// Longest subsequence of s that is a path of the sub-multi-design E.
AjSeq restrict_path(const AjSeq& s, const MultiDesign& d, const MultiDesign& e);

// Unique interaction path between orthogonal cut-free atomic designs, via the
// interaction sequence; nullopt when they are not orthogonal.
std::optional<Path> interaction_path(const DesignPtr& d, const DesignPtr& e,
                                     long fuel = kDefaultFuel);

// .mlud format: lines "VAR := <neg design>" plus optional "pos := <pos design>".
MultiDesign parse_multidesign(const std::string& text, const Signature& sig);

std::string render_multidesign(const MultiDesign& d);

}  // namespace ludics
