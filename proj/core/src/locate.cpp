#include "ludics/locate.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace ludics {

AjSeq LocForest::chain(int node) const {
  std::vector<int> up;
  for (int k = node; k != -1; k = nodes[k].parent) up.push_back(k);
  AjSeq s;
  for (auto it = up.rbegin(); it != up.rend(); ++it) s.push(nodes[*it].act);
  return s;
}

namespace {

struct Locator {
  LocForest forest;
  int counter = 0;

  Var fresh() { return "z" + std::to_string(counter++); }

  int add_node(LocAction act, int parent) {
    int id = (int)forest.nodes.size();
    forest.nodes.push_back(LocNode{std::move(act), parent, {}});
    if (parent >= 0)
      forest.nodes[parent].children.push_back(id);
    else
      forest.roots.push_back(id);
    return id;
  }

  void positive(const DesignPtr& d, int parent) {
    if (is_omega(d)) return;
    if (is_daimon(d)) {
      add_node(daimon_action(), parent);
      return;
    }
    const auto& app = std::get<PosApp>(d->node);
    std::vector<Var> addrs;
    addrs.reserve(app.args.size());
    for (size_t i = 0; i < app.args.size(); ++i) addrs.push_back(fresh());
    int id = add_node(pos_action(app.head, app.name, addrs), parent);
    for (size_t i = 0; i < app.args.size(); ++i) negative(app.args[i], addrs[i], id);
  }

  void negative(const DesignPtr& d, const Var& address, int parent) {
    const auto& sum = std::get<NegSum>(d->node);
    for (const auto& [name, br] : sum.branches) {
      int id = add_node(neg_action(address, name, br.binders), parent);
      positive(br.body, id);
    }
  }
};

}  // namespace

LocForest locate(const DesignPtr& d, const Var& root_address) {
  if (has_cut(d)) throw ludics_error("locate requires a cut-free design");
  // Barendregt form keeps binder names distinct from each other and from the
  // fresh z-addresses.
  DesignPtr b = barendregt(d, {root_address});
  Locator loc;
  if (b->polarity() == Polarity::Positive)
    loc.positive(b, -1);
  else
    loc.negative(b, root_address, -1);
  return loc.forest;
}

std::vector<AjSeq> views_of_design(const LocForest& f) {
  std::vector<AjSeq> out;
  out.push_back({});
  for (size_t i = 0; i < f.nodes.size(); ++i) out.push_back(f.chain((int)i));
  return out;
}

namespace {

// Distinct sum branches may share free variables, so an (address, name) pair
// can label several forest nodes; matching tries the candidates in turn.
struct Embedder {
  const AjSeq& s;
  const LocForest& f;
  std::vector<int> ids;
  std::vector<bool> used;
  // Precomputed views of every prefix of s.
  std::vector<View> views;

  explicit Embedder(const AjSeq& seq, const LocForest& forest)
      : s(seq), f(forest), used(forest.nodes.size(), false) {
    views.reserve(s.size() + 1);
    for (size_t i = 0; i <= s.size(); ++i) views.push_back(view_of(s.prefix(i)));
  }

  // Checks the chain of `id` against the prefix view under the current
  // correspondence map.
  bool chain_matches(size_t i, int id, const std::map<Var, Var>& to_forest) {
    const View& v = views[i + 1];
    AjSeq chain = f.chain(id);
    if (v.size() != chain.size()) return false;
    for (size_t k = 0; k < v.size(); ++k) {
      LocAction translated = v[k];
      if (translated.proper()) {
        auto it = to_forest.find(translated.address);
        if (it != to_forest.end()) translated.address = it->second;
        for (auto& bvar : translated.binders) {
          auto bit = to_forest.find(bvar);
          if (bit != to_forest.end()) bvar = bit->second;
        }
      }
      if (!(translated == chain[k])) return false;
    }
    return true;
  }

  bool step(size_t i, std::map<Var, Var> to_forest) {
    if (i == s.size()) return true;
    const LocAction& a = s[i];
    if (a.proper()) {
      Var addr = a.address;
      auto it = to_forest.find(addr);
      if (it != to_forest.end()) addr = it->second;
      for (size_t id = 0; id < f.nodes.size(); ++id) {
        const LocAction& fa = f.nodes[id].act;
        if (used[id] || fa.kind != a.kind || fa.name != a.name) continue;
        if (fa.address != addr || fa.binders.size() != a.binders.size()) continue;
        std::map<Var, Var> next = to_forest;
        bool ok = true;
        for (size_t k = 0; k < a.binders.size(); ++k) {
          auto [pos, inserted] = next.emplace(a.binders[k], fa.binders[k]);
          if (!inserted && pos->second != fa.binders[k]) {
            ok = false;
            break;
          }
        }
        if (!ok || !chain_matches(i, (int)id, next)) continue;
        used[id] = true;
        ids.push_back((int)id);
        if (step(i + 1, std::move(next))) return true;
        ids.pop_back();
        used[id] = false;
      }
      return false;
    }
    // Daimon: its parent is the node matched for the last view action.
    const View& v = views[i];
    int parent = -1;
    if (!v.empty()) {
      const LocAction& pa = v.actions.back();
      for (size_t k = 0; k < i; ++k)
        if (s[k] == pa) parent = ids[k];
      if (parent == -1) return false;
    }
    const std::vector<int>& pool = parent == -1 ? f.roots : f.nodes[parent].children;
    for (int c : pool) {
      if (f.nodes[c].act.kind != ActKind::Daimon || used[c]) continue;
      used[c] = true;
      ids.push_back(c);
      if (step(i + 1, to_forest)) return true;
      ids.pop_back();
      used[c] = false;
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<int>> embed_path(const AjSeq& s, const LocForest& f) {
  Embedder e(s, f);
  if (!e.step(0, {})) return std::nullopt;
  return e.ids;
}

bool is_path_of(const AjSeq& s, const DesignPtr& d) {
  if (!is_path(s)) return false;
  if (s.empty()) return d->polarity() == Polarity::Negative;
  LocForest f = locate(d);
  return embed_path(s, f).has_value();
}

PathSet paths_of(const DesignPtr& d, size_t max_len) {
  LocForest f = locate(d);
  PathSet out;
  if (d->polarity() == Polarity::Negative) out.insert(AjSeq{});

  std::vector<bool> used(f.nodes.size(), false);
  AjSeq seq;

  std::function<void()> extend = [&]() {
    if (seq.size() >= max_len) return;
    if (!seq.empty() && seq.actions.back().kind == ActKind::Daimon) return;
    for (size_t id = 0; id < f.nodes.size(); ++id) {
      if (used[id]) continue;
      const LocAction& a = f.nodes[id].act;
      if (!seq.empty() && a.polarity() == seq.actions.back().polarity()) continue;
      if (seq.empty() && a.polarity() != d->polarity()) continue;
      seq.push(a);
      bool ok = is_aj_sequence(seq);
      if (ok && a.proper()) {
        size_t i = seq.size() - 1;
        auto j = justifier(seq, i);
        if (j) {
          const View v = a.polarity() == Polarity::Positive
                             ? view_of(seq.prefix(i))
                             : anti_view_of(seq.prefix(i));
          ok = std::find(v.actions.begin(), v.actions.end(), seq[*j]) != v.actions.end();
        }
      }
      // The view of the extended sequence must be the branch ending at this
      // node; this also rules out actions whose binder was skipped.
      if (ok) ok = view_of(seq) == f.chain((int)id);
      if (ok) {
        used[id] = true;
        if (a.polarity() == Polarity::Positive) out.insert(canonical_seq(seq));
        extend();
        used[id] = false;
      }
      seq.actions.pop_back();
    }
  };
  extend();
  return out;
}

PathSet paths_of_bruteforce(const DesignPtr& d, size_t max_len) {
  LocForest f = locate(d);
  PathSet out;
  if (d->polarity() == Polarity::Negative) out.insert(AjSeq{});
  std::vector<bool> used(f.nodes.size(), false);
  AjSeq seq;
  std::function<void()> extend = [&]() {
    if (seq.size() >= max_len) return;
    for (size_t id = 0; id < f.nodes.size(); ++id) {
      if (used[id]) continue;
      seq.push(f.nodes[id].act);
      if (is_path(seq) && embed_path(seq, f).has_value()) out.insert(canonical_seq(seq));
      // Keep extending any aj-prefix; visibility failures can not recover,
      // but cheap pruning on alternation only keeps this an oracle.
      if (is_aj_sequence(seq)) {
        used[id] = true;
        extend();
        used[id] = false;
      }
      seq.actions.pop_back();
    }
  };
  extend();
  return out;
}

}  // namespace ludics
