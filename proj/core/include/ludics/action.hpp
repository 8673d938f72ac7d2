#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ludics/design.hpp"

namespace ludics {

enum class ActKind { Daimon, Pos, Neg };

// A located action: Daimon, x|a<y...> or a_x(y...).
struct LocAction {
  ActKind kind = ActKind::Daimon;
  Var address;
  Name name;
  std::vector<Var> binders;

  Polarity polarity() const {
    return kind == ActKind::Neg ? Polarity::Negative : Polarity::Positive;
  }
  bool proper() const { return kind != ActKind::Daimon; }
  bool operator==(const LocAction& o) const = default;
};

LocAction daimon_action();
LocAction pos_action(Var address, Name name, std::vector<Var> binders);
LocAction neg_action(Var address, Name name, std::vector<Var> binders);
LocAction bar(const LocAction& a);  // polarity flip of a proper action

std::string render_action(const LocAction& a);

// A finite sequence of located actions; justification is recovered from
// binding (the unique earlier action whose binders contain the address).
struct AjSeq {
  std::vector<LocAction> actions;

  bool empty() const { return actions.empty(); }
  size_t size() const { return actions.size(); }
  const LocAction& operator[](size_t i) const { return actions[i]; }
  AjSeq prefix(size_t n) const;
  void push(LocAction a) { actions.push_back(std::move(a)); }
  bool operator==(const AjSeq& o) const = default;
  bool operator<(const AjSeq& o) const;
};

using Path = AjSeq;
using View = AjSeq;

std::string render_seq(const AjSeq& s);

// Index of the justifier of actions[i], or nullopt when initial/daimon.
std::optional<size_t> justifier(const AjSeq& s, size_t i);

// Alternation, daimon-last, linearity of addresses, plus well-formed binding
// (no variable bound twice, justifier of opposite polarity).
bool is_aj_sequence(const AjSeq& s);

AjSeq dual(const AjSeq& s);

View view_of(const AjSeq& s);
View anti_view_of(const AjSeq& s);
View trivial_view_of(const AjSeq& s);

// Positive-ended aj-sequence satisfying P- and O-visibility.
bool is_path(const AjSeq& s);

bool is_view(const AjSeq& s);          // each non-initial negative justified by predecessor
bool is_trivial_view(const AjSeq& s);  // each proper non-first action justified by predecessor

bool is_well_bracketed(const AjSeq& s);

// Address of the initial action heading the justification chain of action i;
// the daimon is attributed through the view of its prefix (nullopt when that
// view is empty).
std::optional<Var> hereditary_root(const AjSeq& s, size_t i);

// Renames bound variables to a0, a1, ... in order of appearance; free
// addresses are kept. Sequences equal modulo address renaming coincide.
AjSeq canonical_seq(const AjSeq& s);

using PathSet = std::set<AjSeq>;

}  // namespace ludics
