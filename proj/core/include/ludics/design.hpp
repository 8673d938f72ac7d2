#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace ludics {

using Var = std::string;
using Name = std::string;

// The distinguished variable that can never be bound.
inline const Var kX0 = "x0";

struct ludics_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Signature: name -> arity. The four connective names are always present.
class Signature {
public:
  Signature();

  void declare(const Name& name, int arity);
  bool declared(const Name& name) const;
  int arity(const Name& name) const;  // throws on undeclared names

  static bool reserved(const Name& name);

  const std::map<Name, int>& names() const { return names_; }

private:
  std::map<Name, int> names_;
};

// Reserved connective names (val = the shift pair, p1/p2 = plus, pr = tensor).
inline const Name kShiftName = "val";
inline const Name kPlus1Name = "p1";
inline const Name kPlus2Name = "p2";
inline const Name kTensorName = "pr";

enum class Polarity { Positive, Negative };
inline Polarity flip(Polarity p) {
  return p == Polarity::Positive ? Polarity::Negative : Polarity::Positive;
}

struct Design;
using DesignPtr = std::shared_ptr<const Design>;

// Positive leaves
struct Daimon {};
struct OmegaNode {};

// x | a<n1, ..., nk>
struct PosApp {
  Var head;
  Name name;
  std::vector<DesignPtr> args;
};

// [n0] | a<n1, ..., nk>
struct CutApp {
  DesignPtr head;  // negative
  Name name;
  std::vector<DesignPtr> args;
};

// Finite branch sum; names absent from the map stand for Omega bodies.
struct Branch {
  std::vector<Var> binders;
  DesignPtr body;  // positive
};
struct NegSum {
  std::map<Name, Branch> branches;
};

struct Design {
  std::variant<Daimon, OmegaNode, PosApp, CutApp, NegSum> node;
  Polarity polarity() const {
    return std::holds_alternative<NegSum>(node) ? Polarity::Negative
                                                : Polarity::Positive;
  }
};

// Constructors
DesignPtr daimon();
DesignPtr omega();
DesignPtr pos_app(Var head, Name name, std::vector<DesignPtr> args);
DesignPtr cut_app(DesignPtr head, Name name, std::vector<DesignPtr> args);
DesignPtr neg_sum(std::map<Name, Branch> branches);
DesignPtr omega_neg();  // the all-Omega negative, written {}

inline bool is_daimon(const DesignPtr& d) { return std::holds_alternative<Daimon>(d->node); }
inline bool is_omega(const DesignPtr& d) { return std::holds_alternative<OmegaNode>(d->node); }
inline bool is_pos_app(const DesignPtr& d) { return std::holds_alternative<PosApp>(d->node); }
inline bool is_cut(const DesignPtr& d) { return std::holds_alternative<CutApp>(d->node); }
inline bool is_neg(const DesignPtr& d) { return std::holds_alternative<NegSum>(d->node); }

using VarSet = std::set<Var>;

VarSet free_vars(const DesignPtr& d);
VarSet bound_vars(const DesignPtr& d);
bool has_cut(const DesignPtr& d);
bool is_linear(const DesignPtr& d);

struct Classification {
  Polarity polarity;
  bool atomic;
  bool cut_free;
};
Classification classify(const DesignPtr& d);

// Capture-free simultaneous substitution of negative designs for free
// variables. Binding a bound variable is an error.
DesignPtr substitute(const DesignPtr& d, const std::map<Var, DesignPtr>& bindings);

bool alpha_eq(const DesignPtr& a, const DesignPtr& b);

// Renames every bound variable to b0, b1, ... in a fixed traversal order, so
// alpha-equal designs get identical trees.
DesignPtr canonical(const DesignPtr& d);

// Renames bound variables so they avoid `avoid` and are pairwise distinct
// (Barendregt convention); deterministic counter-based freshening.
DesignPtr barendregt(const DesignPtr& d, const VarSet& avoid);

// d1 obtainable from d2... orderings over designs of equal polarity:
// stable_leq: d2 is d1 with some Omegas replaced by positive designs.
bool stable_leq(const DesignPtr& d1, const DesignPtr& d2);
// obs_leq: additionally allows replacing positive subdesigns of d1 by Daimon.
bool obs_leq(const DesignPtr& d1, const DesignPtr& d2);

std::string render_design(const DesignPtr& d);

// Total order on canonical designs (render comparison), for deterministic sets.
struct DesignLess {
  bool operator()(const DesignPtr& a, const DesignPtr& b) const;
};
using DesignSet = std::set<DesignPtr, DesignLess>;

// Validates arities and the x0-never-bound rule against a signature.
void check_design(const DesignPtr& d, const Signature& sig, bool strict_linear);

// Number of located actions in the tree of a cut-free design: one per proper
// positive action, one per named branch, one per Daimon leaf.
std::size_t action_count(const DesignPtr& d);

}  // namespace ludics
