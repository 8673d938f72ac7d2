#pragma once

#include "ludics/behaviour.hpp"
#include "ludics/datatypes.hpp"

namespace ludics {

// Functional types over data behaviours: data | P (+) Q | P (*) Q | P -o Q.
struct FuncType;
using FuncPtr = std::shared_ptr<const FuncType>;

struct FData { PatternPtr pattern; };  // closed steady data pattern
struct FPlus { FuncPtr left, right; };
struct FTensor { FuncPtr left, right; };
struct FLimp { FuncPtr left, right; };

struct FuncType {
  std::variant<FData, FPlus, FTensor, FLimp> node;
};

FuncPtr fdata(PatternPtr p);  // requires a closed steady pattern
FuncPtr fplus(FuncPtr l, FuncPtr r);
FuncPtr ftensor(FuncPtr l, FuncPtr r);
FuncPtr flimp(FuncPtr l, FuncPtr r);

std::string render_functype(const FuncPtr& f);

// T ::= DATA | T "(+)" T | T "(*)" T | T "-o" T, "-o" right-associative.
// Data leaves: "1" (the constant over u), "Bool", "Nat", "List", "Tree",
// or a bare constant name.
FuncPtr parse_functype(const std::string& text);

// R in Const means a bare constant behaviour.
bool func_is_const(const FuncPtr& f);

BehaviourPtr compile_functype(BehaviourContext& ctx, const FuncPtr& f, int level);

// One context step, with the operand that fills the non-hole side.
enum class CtxStep { PlusL, PlusR, TensorL, TensorR, LimpR };
struct CtxFrame {
  CtxStep step;
  FuncPtr other;
};

struct Decomposition {
  std::vector<CtxFrame> c1, c2;  // outermost frame first
  FuncPtr q1, q2, r;
};

std::string render_context(const std::vector<CtxFrame>& frames);

// The impurity criterion: P is impure iff P = C1[ C2[Q1 -o+ Q2] -o+ R ] with
// R not a constant. Returns the least decomposition or nullopt when pure.
std::optional<Decomposition> impurity_criterion(const FuncPtr& f);

struct ImpurityWitness {
  DesignPtr p;  // member of P, pruned to its incarnation
  DesignPtr n;  // member of the orthogonal
  Path s;       // daimon-ended maximal interaction path, not well-bracketed
  Decomposition decomposition;
};

// Constructs the witness path following the impurity proof (case analysis on
// C2, then lifting through C1), and validates every invariant before
// returning: s is a visitable path, maximal under one-action extension, not
// well-bracketed, and equals the interaction path of p with n. With
// minimize_p set the returned p is pruned to its incarnation, the design the
// path visits in full.
ImpurityWitness impurity_witness(BehaviourContext& ctx, const FuncPtr& f, const Bounds& bounds,
                                 bool minimize_p = false);

struct FunctionalReport {
  CheckReport regular;
  CheckReport quasi_pure;
  CheckReport pure;
  bool criterion_impure = false;
  bool consistent = false;  // criterion verdict agrees with the bounded check
};

FunctionalReport check_functional(BehaviourContext& ctx, const FuncPtr& f, const Bounds& bounds);

}  // namespace ludics
