#pragma once

#include <memory>
#include <mutex>
#include <unordered_map>

#include "ludics/action.hpp"
#include "ludics/design.hpp"
#include "ludics/pattern.hpp"

namespace ludics {

// Symbolic behaviour expressions. The infinite bi-orthogonal sets are never
// materialized; level-indexed incarnations are the finite handles.
struct BehaviourExpr;
using BehaviourPtr = std::shared_ptr<const BehaviourExpr>;

struct BConst { Name name; };                    // C_a, positive
struct BDaimonBeh {};                            // {daimon}, positive
struct BUp { BehaviourPtr body; };               // up(N), positive
struct BDown { BehaviourPtr body; };             // down(P), negative
struct BInj { int side; BehaviourPtr body; };    // i-th injection of N, positive
struct BPlus { BehaviourPtr left, right; };      // M (+) N, positive
struct BTensor { BehaviourPtr left, right; };    // M (x) N, positive
struct BLimp { BehaviourPtr left, right; };      // N -o P, negative
struct BMuLevel {                                // n-th Kleene iterate of mu X. A
  Var var;
  PatternPtr body;
  std::map<Var, BehaviourPtr> env;
  int level;
};
struct BDeloc { BehaviourPtr body; Var at; };    // B^x

struct BehaviourExpr {
  std::variant<BConst, BDaimonBeh, BUp, BDown, BInj, BPlus, BTensor, BLimp,
               BMuLevel, BDeloc>
      node;
};

BehaviourPtr const_behaviour(const Name& a);  // rejects reserved names
BehaviourPtr daimon_behaviour();
BehaviourPtr up(BehaviourPtr n);
BehaviourPtr down(BehaviourPtr p);
BehaviourPtr inj(int side, BehaviourPtr n);
BehaviourPtr plus(BehaviourPtr m, BehaviourPtr n);
BehaviourPtr tensor(BehaviourPtr m, BehaviourPtr n);
BehaviourPtr limp(BehaviourPtr n, BehaviourPtr p);
BehaviourPtr mu_level(Var var, PatternPtr body, std::map<Var, BehaviourPtr> env, int level);
BehaviourPtr deloc(BehaviourPtr b, const Var& at);

// p (+)+ q = (down p) (+) (down q), p (x)+ q likewise, p -o+ q = up(down p -o q).
BehaviourPtr plus_pos(BehaviourPtr p, BehaviourPtr q);
BehaviourPtr tensor_pos(BehaviourPtr p, BehaviourPtr q);
BehaviourPtr limp_pos(BehaviourPtr p, BehaviourPtr q);

Polarity beh_polarity(const BehaviourPtr& b);
std::string render_behaviour(const BehaviourPtr& b);

struct Bounds {
  int level = 3;
  size_t max_len = 16;
  long fuel = 10000;
};

struct IncarnationSet {
  std::vector<DesignPtr> designs;  // canonical, sorted
  BehaviourPtr behaviour;
  int level;
};

struct CheckReport {
  bool holds = false;
  std::optional<AjSeq> witness;
  Bounds bounds;
  std::string detail;
};

// Shared caches (incarnations, visitable paths) keyed by rendered expression;
// synchronized so concurrent queries are safe.
class BehaviourContext {
 public:
  explicit BehaviourContext(Signature sig) : sig_(std::move(sig)) {}
  const Signature& sig() const { return sig_; }
  Signature& sig() { return sig_; }

  // internal caches
  std::mutex mutex;
  std::unordered_map<std::string, std::vector<DesignPtr>> inc_cache;
  std::unordered_map<std::string, std::vector<DesignPtr>> co_inc_cache;
  std::unordered_map<std::string, PathSet> visit_cache;
  // keys whose strategy enumeration was truncated to a sample
  std::set<std::string> truncated;
  size_t strategy_cap = 20000;

 private:
  Signature sig_;
};

// Level-indexed incarnation |B| via the internal-completeness equations;
// linear-map behaviours are enumerated as strategies over their visitable
// paths and validated against the orthogonal incarnation.
IncarnationSet incarnation(BehaviourContext& ctx, const BehaviourPtr& b, const Bounds& bounds);

// |B orthogonal|.
std::vector<DesignPtr> co_incarnation(BehaviourContext& ctx, const BehaviourPtr& b, const Bounds& bounds);

// Membership via the incarnation: some incarnated design lies below d for
// the observational ordering. Exact for designs explored within the bounds.
bool member(BehaviourContext& ctx, const DesignPtr& d, const BehaviourPtr& b, const Bounds& bounds);

// e orthogonal to every incarnated design of B. For the daimon behaviour any
// negative design qualifies.
bool ortho_member(BehaviourContext& ctx, const DesignPtr& e, const BehaviourPtr& b, const Bounds& bounds);

// Closed-form visitable paths (valid for the regular behaviours built here).
PathSet visitable_paths(BehaviourContext& ctx, const BehaviourPtr& b, const Bounds& bounds);

// Independent route: paths of incarnated designs accepted iff the completion
// of the dual is an orthogonal member.
PathSet visitable_paths_oracle(BehaviourContext& ctx, const BehaviourPtr& b, const Bounds& bounds);

CheckReport check_regular(BehaviourContext& ctx, const BehaviourPtr& b, const Bounds& bounds);
CheckReport check_pure(BehaviourContext& ctx, const BehaviourPtr& b, const Bounds& bounds);
CheckReport check_quasi_pure(BehaviourContext& ctx, const BehaviourPtr& b, const Bounds& bounds);

// Purity with a separate behaviour supplying the extension candidates. Data
// types are the suprema of their Kleene levels, so their purity check draws
// extensions from one level higher (paths of level K are extensible in the
// limit iff they extend at level K+1).
CheckReport check_pure_against(BehaviourContext& ctx, const BehaviourPtr& paths_of,
                               const BehaviourPtr& extensions_of, const Bounds& bounds,
                               bool well_bracketed_only = false);

// Exact membership of a sequence in the visitable paths, by recursive descent
// on the constructor tree (no materialization).
bool visitable_contains(BehaviourContext& ctx, const BehaviourPtr& b, const AjSeq& s,
                        const Bounds& bounds);

// True iff stem (positive-ended and daimon-free) extended by some proper
// positive action stays visitable.
bool extension_exists(BehaviourContext& ctx, const BehaviourPtr& b, const AjSeq& stem,
                      const Bounds& bounds);

// All visitable paths up to max_len, enumerated by guided search against the
// membership oracle; agrees with visitable_paths.
PathSet enumerate_visitable(BehaviourContext& ctx, const BehaviourPtr& b, const Bounds& bounds);

// Prunes d to its incarnation |d|_B by marking the actions visited across
// interactions with the enumerated orthogonal tests.
DesignPtr incarnate_design(BehaviourContext& ctx, const DesignPtr& d, const BehaviourPtr& b, const Bounds& bounds);

// Helpers shared with the enumeration machinery.
DesignPtr rename_free_var(const DesignPtr& d, const Var& from, const Var& to);
AjSeq readdress(const AjSeq& s, const Var& from, const Var& to, const std::string& binder_prefix);
PathSet dual_paths(const PathSet& v);

// Simple behaviour-expression surface syntax:
//   B ::= 'C'NAME | '#' | up(B) | down(B) | B (+) B | B (x) B | B -o B
//       | mu VAR . B | VAR      (data-pattern operators act positively)
BehaviourPtr parse_behaviour(const std::string& text, BehaviourContext& ctx, int level);

}  // namespace ludics
