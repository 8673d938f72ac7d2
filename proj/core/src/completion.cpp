#include "ludics/completion.hpp"

#include <algorithm>
#include <map>

namespace ludics {

namespace {

struct Builder {
  const AjSeq& s;
  const Signature& sig;
  bool pad;
  std::vector<int> parent;                      // tree parent by action index
  std::map<int, std::vector<int>> children;     // parent -> children
  int fresh = 0;

  DesignPtr padded_sum(std::map<Name, Branch> branches) {
    if (pad) {
      for (const auto& [name, arity] : sig.names()) {
        if (branches.count(name)) continue;
        std::vector<Var> binders;
        for (int i = 0; i < arity; ++i) binders.push_back("w" + std::to_string(fresh++));
        branches.emplace(name, Branch{std::move(binders), daimon()});
      }
    }
    return neg_sum(std::move(branches));
  }

  // Negative argument slot of a positive action: the sum of the negative
  // child actions addressed at `slot`.
  DesignPtr slot_design(int pos_index, const Var& slot) {
    std::map<Name, Branch> branches;
    for (int c : children[pos_index]) {
      const LocAction& a = s[c];
      if (a.kind != ActKind::Neg || a.address != slot) continue;
      branches.emplace(a.name, Branch{a.binders, body_of(c)});
    }
    return padded_sum(std::move(branches));
  }

  DesignPtr positive_design(int index) {
    const LocAction& a = s[index];
    if (a.kind == ActKind::Daimon) return daimon();
    std::vector<DesignPtr> args;
    args.reserve(a.binders.size());
    for (const auto& slot : a.binders) args.push_back(slot_design(index, slot));
    return pos_app(a.address, a.name, std::move(args));
  }

  DesignPtr body_of(int neg_index) {
    int found = -1;
    for (int c : children[neg_index]) {
      if (s[c].polarity() != Polarity::Positive) continue;
      if (found != -1) throw ludics_error("path is not deterministic at " + render_action(s[c]));
      found = c;
    }
    if (found == -1) return pad ? daimon() : omega();
    return positive_design(found);
  }
};

}  // namespace

namespace {

DesignPtr build(const AjSeq& s, const Signature& sig, bool pad) {
  if (!is_path(s)) throw ludics_error("completion requires a path");
  Builder b{s, sig, pad};
  b.parent.assign(s.size(), -1);
  for (size_t i = 0; i < s.size(); ++i) {
    const LocAction& a = s[i];
    if (a.polarity() == Polarity::Negative) {
      auto j = justifier(s, i);
      b.parent[i] = j ? (int)*j : -1;
    } else {
      View v = view_of(s.prefix(i));
      if (v.empty()) {
        b.parent[i] = -1;
      } else {
        // Index of the last view action in s: the unique occurrence of it.
        const LocAction& pa = v.actions.back();
        int idx = -1;
        for (size_t k = 0; k < i; ++k)
          if (s[k] == pa) idx = (int)k;
        b.parent[i] = idx;
      }
    }
    b.children[b.parent[i]].push_back((int)i);
  }

  if (s[0].polarity() == Polarity::Positive) return b.positive_design(0);

  // Negative root: all initial actions share the root address by linearity.
  std::map<Name, Branch> branches;
  for (int c : b.children[-1]) {
    const LocAction& a = s[c];
    branches.emplace(a.name, Branch{a.binders, b.body_of(c)});
  }
  return b.padded_sum(std::move(branches));
}

}  // namespace

DesignPtr completion(const AjSeq& s, const Signature& sig) {
  if (s.empty()) {
    // Every negative design admits the empty path; the maximal one answers
    // Daimon everywhere.
    Builder b{s, sig, true};
    return b.padded_sum({});
  }
  return build(s, sig, true);
}

DesignPtr skeleton(const AjSeq& s, const Signature& sig) {
  if (s.empty()) return omega_neg();
  return build(s, sig, false);
}

}  // namespace ludics
