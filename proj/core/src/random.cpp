#include "ludics/random.hpp"

#include <algorithm>

namespace ludics {

DesignPtr DesignGen::positive(int depth, bool allow_cut) {
  return positive_over({kX0}, depth, allow_cut);
}

DesignPtr DesignGen::negative(int depth, bool allow_cut) {
  return negative_over({}, depth, allow_cut);
}

DesignPtr DesignGen::positive_over(std::vector<Var> avail, int depth, bool allow_cut) {
  if (depth <= 0 || coin(0.25)) return coin(0.85) ? daimon() : omega();
  std::vector<Name> names;
  for (const auto& [name, arity] : sig_.names()) names.push_back(name);
  const Name name = names[pick((int)names.size())];
  int arity = sig_.arity(name);

  bool use_cut = allow_cut && coin(0.3);
  if (!use_cut && avail.empty()) return coin(0.85) ? daimon() : omega();

  // Split the budget: one slot for the head (variable case), the rest spread
  // over the arguments, some simply dropped.
  Var head;
  if (!use_cut) {
    int h = pick((int)avail.size());
    head = avail[h];
    avail.erase(avail.begin() + h);
  }
  std::vector<std::vector<Var>> parts(arity ? arity : 1);
  for (const auto& v : avail) {
    int slot = pick(arity + 1);
    if (slot < arity) parts[slot].push_back(v);
  }
  std::vector<DesignPtr> args;
  for (int i = 0; i < arity; ++i)
    args.push_back(negative_over(parts[i], depth - 1, allow_cut));
  if (use_cut) {
    DesignPtr h = negative_over({}, depth - 1, allow_cut);
    return cut_app(h, name, std::move(args));
  }
  return pos_app(head, name, std::move(args));
}

DesignPtr DesignGen::negative_over(std::vector<Var> avail, int depth, bool allow_cut) {
  std::map<Name, Branch> branches;
  if (depth <= 0) return omega_neg();
  std::vector<Name> names;
  for (const auto& [name, arity] : sig_.names()) names.push_back(name);
  std::shuffle(names.begin(), names.end(), std::mt19937_64(eng_()));
  int taken = 0;
  for (const auto& name : names) {
    if (taken >= max_branches) break;
    if (!coin(0.5)) continue;
    ++taken;
    int arity = sig_.arity(name);
    std::vector<Var> binders;
    for (int i = 0; i < arity; ++i) binders.push_back(fresh());
    // Branch bodies may share the outer budget: only one branch ever fires.
    std::vector<Var> inner = avail;
    inner.insert(inner.end(), binders.begin(), binders.end());
    branches.emplace(name, Branch{binders, positive_over(inner, depth - 1, allow_cut)});
  }
  return neg_sum(std::move(branches));
}

}  // namespace ludics
