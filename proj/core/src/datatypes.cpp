#include "ludics/datatypes.hpp"

#include <algorithm>

namespace ludics {

BehaviourPtr interpret_pattern(const PatternPtr& a, const Env& env, int level) {
  return std::visit(
      [&](const auto& n) -> BehaviourPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, PVar>) {
          auto it = env.find(n.name);
          if (it == env.end()) throw ludics_error("unbound pattern variable " + n.name);
          return it->second;
        } else if constexpr (std::is_same_v<T, PName>) {
          return const_behaviour(n.name);
        } else if constexpr (std::is_same_v<T, PPlus>) {
          return plus_pos(interpret_pattern(n.left, env, level),
                          interpret_pattern(n.right, env, level));
        } else if constexpr (std::is_same_v<T, PTensor>) {
          return tensor_pos(interpret_pattern(n.left, env, level),
                            interpret_pattern(n.right, env, level));
        } else {
          Env captured;
          auto fvs = pattern_free_vars(n.body);
          for (const auto& v : fvs) {
            if (v == n.var) continue;
            auto it = env.find(v);
            if (it == env.end()) throw ludics_error("unbound pattern variable " + v);
            captured.emplace(v, it->second);
          }
          return mu_level(n.var, n.body, std::move(captured), level);
        }
      },
      a->node);
}

namespace {

BehaviourPtr at_level(const PatternPtr& a, const Env& env, int level) {
  if (const auto* m = std::get_if<PMu>(&a->node)) {
    Env captured;
    for (const auto& v : pattern_free_vars(m->body)) {
      if (v == m->var) continue;
      auto it = env.find(v);
      if (it == env.end()) throw ludics_error("unbound pattern variable " + v);
      captured.emplace(v, it->second);
    }
    return mu_level(m->var, m->body, captured, level);
  }
  return interpret_pattern(a, env, level);
}

}  // namespace

MonotoneReport kleene_monotone_report(BehaviourContext& ctx, const PatternPtr& a,
                                      const Env& env, int levels, const Bounds& bounds) {
  MonotoneReport rep;
  rep.levels = levels;
  std::vector<DesignSet> incs;
  std::vector<PathSet> visits;
  for (int k = 0; k <= levels; ++k) {
    Bounds bk = bounds;
    bk.level = k;
    BehaviourPtr bexp = at_level(a, env, k);
    auto inc = incarnation(ctx, bexp, bk);
    rep.incarnation_sizes.push_back(inc.designs.size());
    incs.emplace_back(inc.designs.begin(), inc.designs.end());
    visits.push_back(visitable_paths(ctx, bexp, bk));
  }
  for (int k = 0; k < levels; ++k) {
    for (const auto& d : incs[k]) {
      if (!incs[k + 1].count(d)) {
        rep.holds = false;
        rep.detail = "incarnation of level " + std::to_string(k) +
                     " not included in level " + std::to_string(k + 1) + ": " +
                     render_design(d);
        return rep;
      }
    }
    for (const auto& s : visits[k]) {
      if (!visits[k + 1].count(s)) {
        rep.holds = false;
        rep.detail = "visitable paths of level " + std::to_string(k) +
                     " not included in level " + std::to_string(k + 1) + ": " +
                     render_seq(s);
        return rep;
      }
    }
  }
  rep.holds = true;
  return rep;
}

BehaviourPtr basis(const PatternPtr& a) {
  if (!is_steady(a)) throw ludics_error("basis requires a steady pattern");
  return std::visit(
      [&](const auto& n) -> BehaviourPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, PName>) {
          return const_behaviour(n.name);
        } else if constexpr (std::is_same_v<T, PPlus>) {
          if (is_steady(n.left)) return inj(1, down(basis(n.left)));
          return inj(2, down(basis(n.right)));
        } else if constexpr (std::is_same_v<T, PTensor>) {
          return tensor_pos(basis(n.left), basis(n.right));
        } else if constexpr (std::is_same_v<T, PMu>) {
          return basis(n.body);
        } else {
          throw ludics_error("basis: pattern variable is not steady");
        }
      },
      a->node);
}

namespace {

// x0|p_i< val(v).(body at v) >
DesignPtr inject(int side, const DesignPtr& value) {
  DesignPtr body = rename_free_var(value, kX0, "v");
  DesignPtr shifted = neg_sum({{kShiftName, Branch{{"v"}, body}}});
  return pos_app(kX0, side == 1 ? kPlus1Name : kPlus2Name, {shifted});
}

DesignPtr pair_pos(const DesignPtr& l, const DesignPtr& r) {
  DesignPtr lb = neg_sum({{kShiftName, Branch{{"v1"}, rename_free_var(l, kX0, "v1")}}});
  DesignPtr rb = neg_sum({{kShiftName, Branch{{"v2"}, rename_free_var(r, kX0, "v2")}}});
  return pos_app(kX0, kTensorName, {lb, rb});
}

}  // namespace

DesignPtr encode_bool(bool v) {
  return inject(v ? 1 : 2, pos_app(kX0, "b", {}));
}

DesignPtr encode_nat(int k) {
  if (k < 0) throw ludics_error("encode_nat expects a non-negative integer");
  DesignPtr d = inject(1, pos_app(kX0, "n", {}));  // zero
  for (int i = 0; i < k; ++i) d = inject(2, d);    // successor
  return canonical(d);
}

DesignPtr encode_list(const std::vector<DesignPtr>& elems) {
  DesignPtr d = inject(1, pos_app(kX0, "l", {}));  // nil
  for (auto it = elems.rbegin(); it != elems.rend(); ++it)
    d = inject(2, pair_pos(*it, d));  // cons
  return canonical(d);
}

namespace {

// Peels x0|p_i< val(v).body >, returning (side, body readdressed to x0).
std::optional<std::pair<int, DesignPtr>> peel(const DesignPtr& d) {
  const auto* app = std::get_if<PosApp>(&d->node);
  if (!app || app->head != kX0) return std::nullopt;
  int side;
  if (app->name == kPlus1Name) side = 1;
  else if (app->name == kPlus2Name) side = 2;
  else return std::nullopt;
  if (app->args.size() != 1) return std::nullopt;
  const auto* sum = std::get_if<NegSum>(&app->args[0]->node);
  if (!sum || sum->branches.size() != 1) return std::nullopt;
  auto it = sum->branches.find(kShiftName);
  if (it == sum->branches.end() || it->second.binders.size() != 1) return std::nullopt;
  return std::make_pair(side, rename_free_var(it->second.body, it->second.binders[0], kX0));
}

}  // namespace

std::optional<int> decode_nat(const DesignPtr& d) {
  int k = 0;
  DesignPtr cur = d;
  for (;;) {
    auto p = peel(cur);
    if (!p) return std::nullopt;
    if (p->first == 1) {
      const auto* app = std::get_if<PosApp>(&p->second->node);
      if (!app || app->head != kX0 || app->name != "n" || !app->args.empty())
        return std::nullopt;
      return k;
    }
    ++k;
    cur = p->second;
  }
}

PatternPtr bool_pattern() { return pplus(pname("b"), pname("b")); }
PatternPtr nat_pattern() { return pmu("X", pplus(pname("n"), pvar("X"))); }
PatternPtr list_pattern(const Name& elem) {
  return pmu("X", pplus(pname("l"), ptensor(pname(elem), pvar("X"))));
}
PatternPtr tree_pattern(const Name& elem) {
  PatternPtr inner = pmu("Y", pplus(pname("l"), ptensor(pvar("X"), pvar("Y"))));
  return pmu("X", pplus(pname("t"), ptensor(pname(elem), inner)));
}

void declare_pattern_names(Signature& sig, const PatternPtr& p) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, PName>) {
          if (!sig.declared(n.name)) sig.declare(n.name, 0);
        } else if constexpr (std::is_same_v<T, PPlus> || std::is_same_v<T, PTensor>) {
          declare_pattern_names(sig, n.left);
          declare_pattern_names(sig, n.right);
        } else if constexpr (std::is_same_v<T, PMu>) {
          declare_pattern_names(sig, n.body);
        }
      },
      p->node);
}

}  // namespace ludics
