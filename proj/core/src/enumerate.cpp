#include "ludics/enumerate.hpp"

#include <algorithm>
#include <functional>

#include "ludics/locate.hpp"
#include "ludics/multidesign.hpp"
#include "ludics/reduction.hpp"

namespace ludics {

namespace {

// Rebuilds the design from its located forest, dropping unkept nodes.
DesignPtr forest_positive(const LocForest& f, int node, const std::set<int>& keep);

DesignPtr forest_negative_at(const LocForest& f, const std::vector<int>& candidates,
                             const Var& slot, const std::set<int>& keep) {
  std::map<Name, Branch> branches;
  for (int c : candidates) {
    const LocAction& a = f.nodes[c].act;
    if (a.kind != ActKind::Neg || a.address != slot || !keep.count(c)) continue;
    DesignPtr body = omega();
    for (int cc : f.nodes[c].children)
      if (keep.count(cc)) body = forest_positive(f, cc, keep);
    branches.emplace(a.name, Branch{a.binders, body});
  }
  return neg_sum(std::move(branches));
}

DesignPtr forest_positive(const LocForest& f, int node, const std::set<int>& keep) {
  const LocAction& a = f.nodes[node].act;
  if (a.kind == ActKind::Daimon) return daimon();
  std::vector<DesignPtr> args;
  for (const auto& slot : a.binders)
    args.push_back(forest_negative_at(f, f.nodes[node].children, slot, keep));
  return pos_app(a.address, a.name, args);
}

DesignPtr forest_to_design(const LocForest& f, Polarity pol, const std::set<int>& keep) {
  if (pol == Polarity::Positive) {
    for (int r : f.roots)
      if (keep.count(r)) return forest_positive(f, r, keep);
    return omega();
  }
  return forest_negative_at(f, f.roots, f.roots.empty() ? kX0 : f.nodes[f.roots[0]].act.address,
                            keep);
}

}  // namespace

DesignPtr prune_unvisited(const DesignPtr& d, const std::vector<DesignPtr>& tests, long fuel) {
  LocForest f = locate(d);
  DesignPtr located = forest_to_design(f, d->polarity(), [&] {
    std::set<int> all;
    for (size_t i = 0; i < f.nodes.size(); ++i) all.insert((int)i);
    return all;
  }());
  std::set<int> keep;
  for (const auto& t : tests) {
    MultiDesign D = d->polarity() == Polarity::Positive
                        ? MultiDesign::of_positive(located)
                        : MultiDesign::of_negative(located);
    MultiDesign E = t->polarity() == Polarity::Positive
                        ? MultiDesign::of_positive(t)
                        : MultiDesign::of_negative(t);
    InteractionResult r = interaction_sequence(D, E, fuel);
    if (!r.converged)
      throw ludics_error("prune_unvisited: design is not orthogonal to a test");
    auto ids = embed_path(r.seq, f);
    if (!ids)
      throw ludics_error("prune_unvisited: interaction path escapes the design");
    keep.insert(ids->begin(), ids->end());
  }
  return canonical(forest_to_design(f, d->polarity(), keep));
}

namespace {

struct ViewTree {
  // Prefix tree over the canonical views of the visitable paths.
  struct Node {
    LocAction act;
    std::vector<int> children;
  };
  std::vector<Node> nodes;
  std::vector<int> roots;

  int find_child(const std::vector<int>& ids, const LocAction& a) const {
    for (int i : ids)
      if (nodes[i].act == a) return i;
    return -1;
  }

  void insert(const AjSeq& view) {
    const std::vector<int>* level = &roots;
    int parent = -1;
    for (const auto& a : view.actions) {
      int id = find_child(*level, a);
      if (id == -1) {
        id = (int)nodes.size();
        nodes.push_back(Node{a, {}});
        if (parent == -1)
          roots.push_back(id);
        else
          nodes[parent].children.push_back(id);
      }
      parent = id;
      level = &nodes[id].children;
    }
  }
};

struct StrategyBuilder {
  const ViewTree& vt;
  size_t cap;
  std::vector<DesignPtr> out;
  bool overflow = false;  // intermediate product truncated to the cap

  // All positive bodies available under a negative view node.
  std::vector<DesignPtr> bodies(int neg_node) {
    std::vector<DesignPtr> res;
    res.push_back(daimon());
    for (int c : vt.nodes[neg_node].children) {
      for (const auto& d : positives(c)) res.push_back(d);
    }
    return res;
  }

  // All designs rooted at a positive view node.
  std::vector<DesignPtr> positives(int pos_node) {
    const LocAction& a = vt.nodes[pos_node].act;
    if (a.kind == ActKind::Daimon) return {};  // Daimon is added by bodies()
    // Group negative children by slot.
    std::vector<std::vector<DesignPtr>> arg_choices;
    for (const auto& slot : a.binders) {
      std::vector<int> kids;
      for (int c : vt.nodes[pos_node].children)
        if (vt.nodes[c].act.kind == ActKind::Neg && vt.nodes[c].act.address == slot)
          kids.push_back(c);
      arg_choices.push_back(sums(kids));
    }
    std::vector<DesignPtr> res;
    std::vector<size_t> idx(arg_choices.size(), 0);
    for (;;) {
      std::vector<DesignPtr> args;
      for (size_t i = 0; i < arg_choices.size(); ++i) args.push_back(arg_choices[i][idx[i]]);
      res.push_back(pos_app(a.address, a.name, args));
      if (res.size() > cap) {
        overflow = true;
        return res;
      }
      size_t i = 0;
      for (; i < idx.size(); ++i) {
        if (++idx[i] < arg_choices[i].size()) break;
        idx[i] = 0;
      }
      if (i == idx.size()) break;
    }
    return res;
  }

  // All sums over the given sibling negative nodes: every branch present
  // (receptivity), each with any available body.
  std::vector<DesignPtr> sums(const std::vector<int>& neg_nodes) {
    std::vector<std::vector<DesignPtr>> per_branch;
    for (int n : neg_nodes) per_branch.push_back(bodies(n));
    std::vector<DesignPtr> res;
    std::vector<size_t> idx(per_branch.size(), 0);
    for (;;) {
      std::map<Name, Branch> branches;
      for (size_t i = 0; i < per_branch.size(); ++i) {
        const LocAction& a = vt.nodes[neg_nodes[i]].act;
        branches.emplace(a.name, Branch{a.binders, per_branch[i][idx[i]]});
      }
      res.push_back(neg_sum(std::move(branches)));
      if (res.size() > cap) {
        overflow = true;
        return res;
      }
      size_t i = 0;
      for (; i < idx.size(); ++i) {
        if (++idx[i] < per_branch[i].size()) break;
        idx[i] = 0;
      }
      if (i == idx.size() || per_branch.empty()) break;
    }
    return res;
  }
};

}  // namespace

std::vector<DesignPtr> enumerate_strategies(const PathSet& V,
                                            const std::vector<DesignPtr>& tests,
                                            long fuel, size_t cap, bool* truncated) {
  ViewTree vt;
  for (const auto& s : V)
    for (size_t i = 1; i <= s.size(); ++i) vt.insert(canonical_seq(view_of(s.prefix(i))));

  StrategyBuilder sb{vt, cap};
  std::vector<DesignPtr> candidates = sb.sums(vt.roots);
  if (truncated) *truncated = sb.overflow;

  DesignSet seen;
  std::vector<DesignPtr> out;
  for (const auto& c : candidates) {
    // The view product can route one answer slot into several subtrees;
    // only the linear recombinations are designs.
    if (!is_linear(c)) continue;
    bool ok = true;
    for (const auto& t : tests) {
      if (!is_orthogonal(t, c, fuel)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    DesignPtr pruned;
    try {
      pruned = tests.empty() ? c : prune_unvisited(c, tests, fuel);
    } catch (const ludics_error& e) {
      throw ludics_error(std::string(e.what()) + " while pruning " + render_design(c));
    }
    if (seen.insert(pruned).second) out.push_back(pruned);
  }
  std::sort(out.begin(), out.end(), DesignLess{});
  return out;
}

namespace {

// Streaming enumerator over canonical candidate designs. `depth` bounds the
// proper positive actions along any chain, `budget` bounds them in total
// (arguments of one application share it), sums carry at most `max_branches`
// branches.
struct DesignEnum {
  const Signature& sig;
  const std::vector<Name>& names;
  EnumOptions opts;
  const std::function<bool(const DesignPtr&)>& cb;
  int fresh = 0;
  bool stopped = false;

  void emit(const DesignPtr& d) {
    if (stopped) return;
    if (!is_linear(d)) return;
    if (!cb(canonical(d))) stopped = true;
  }

  // All positive designs within (depth, budget); calls k for each.
  void positives(int depth, int budget, const std::vector<Var>& avail,
                 const std::function<void(const DesignPtr&)>& k) {
    if (stopped) return;
    k(daimon());
    if (depth <= 0 || budget <= 0) return;
    for (const auto& head : avail) {
      std::vector<Var> rest;
      for (const auto& v : avail)
        if (v != head) rest.push_back(v);
      for (const auto& name : names) {
        int arity = sig.arity(name);
        arg_tuples(depth - 1, budget - 1, rest, arity, {},
                   [&](const std::vector<DesignPtr>& args) {
                     k(pos_app(head, name, args));
                   });
        if (stopped) return;
      }
    }
  }

  // Splits the budget across the argument slots.
  void arg_tuples(int depth, int budget, const std::vector<Var>& avail, int slots,
                  std::vector<DesignPtr> acc,
                  const std::function<void(const std::vector<DesignPtr>&)>& k) {
    if (stopped) return;
    if (slots == 0) {
      k(acc);
      return;
    }
    // The final slot receives whatever budget remains.
    int lo = slots == 1 ? budget : 0;
    for (int give = lo; give <= budget; ++give) {
      negatives(depth, give, avail, [&](const DesignPtr& n) {
        auto acc2 = acc;
        acc2.push_back(n);
        arg_tuples(depth, budget - give, avail, slots - 1, std::move(acc2), k);
      });
      if (stopped) return;
    }
  }

  // All sums within bounds: one branch with an arbitrary body, any further
  // branches answering Daimon (padding shapes).
  void negatives(int depth, int budget, const std::vector<Var>& avail,
                 const std::function<void(const DesignPtr&)>& k) {
    if (stopped) return;
    std::vector<Name> pool = names;
    // Padding combinations over a chosen subset of names.
    std::function<void(size_t, int, std::map<Name, Branch>,
                       const std::function<void(const std::map<Name, Branch>&)>&)>
        pads = [&](size_t idx, int left, std::map<Name, Branch> acc,
                   const std::function<void(const std::map<Name, Branch>&)>& out) {
          out(acc);
          if (left == 0) return;
          for (size_t i = idx; i < pool.size(); ++i) {
            if (acc.count(pool[i])) continue;
            int arity = sig.arity(pool[i]);
            std::vector<Var> binders;
            for (int j = 0; j < arity; ++j) binders.push_back("c" + std::to_string(fresh++));
            auto acc2 = acc;
            acc2.emplace(pool[i], Branch{binders, daimon()});
            pads(i + 1, left - 1, acc2, out);
          }
        };

    // No live branch at all: the empty sum plus pure padding sums.
    pads(0, opts.max_branches, {}, [&](const std::map<Name, Branch>& sum) {
      if (!stopped) k(neg_sum(sum));
    });

    // One live branch plus padding.
    for (const auto& name : pool) {
      int arity = sig.arity(name);
      std::vector<Var> binders;
      for (int j = 0; j < arity; ++j) binders.push_back("c" + std::to_string(fresh++));
      std::vector<Var> inner = avail;
      inner.insert(inner.end(), binders.begin(), binders.end());
      positives(depth, budget, inner, [&](const DesignPtr& body) {
        if (is_omega(body) || is_daimon(body)) return;  // daimon covered by pads
        std::map<Name, Branch> base;
        base.emplace(name, Branch{binders, body});
        pads(0, opts.max_branches - 1, base, [&](const std::map<Name, Branch>& sum) {
          if (!stopped) k(neg_sum(sum));
        });
      });
      if (stopped) return;
    }
  }
};

}  // namespace

void enumerate_designs(const Signature& sig, const std::vector<Name>& names,
                       Polarity pol, const EnumOptions& opts,
                       const std::function<bool(const DesignPtr&)>& cb) {
  DesignEnum de{sig, names, opts, cb};
  if (pol == Polarity::Positive) {
    de.positives(opts.depth, opts.budget, {kX0},
                 [&](const DesignPtr& d) { de.emit(d); });
  } else {
    de.negatives(opts.depth, opts.budget, {},
                 [&](const DesignPtr& d) { de.emit(d); });
  }
}

}  // namespace ludics
