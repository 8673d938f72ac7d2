#include "ludics/design.hpp"

#include <algorithm>
#include <sstream>

namespace ludics {

Signature::Signature() {
  names_[kShiftName] = 1;
  names_[kPlus1Name] = 1;
  names_[kPlus2Name] = 1;
  names_[kTensorName] = 2;
}

bool Signature::reserved(const Name& name) {
  return name == kShiftName || name == kPlus1Name || name == kPlus2Name ||
         name == kTensorName;
}

void Signature::declare(const Name& name, int arity) {
  if (arity < 0) throw ludics_error("negative arity for name " + name);
  auto it = names_.find(name);
  if (it != names_.end() && it->second != arity)
    throw ludics_error("conflicting arity for name " + name);
  names_[name] = arity;
}

bool Signature::declared(const Name& name) const { return names_.count(name) > 0; }

int Signature::arity(const Name& name) const {
  auto it = names_.find(name);
  if (it == names_.end()) throw ludics_error("undeclared name " + name);
  return it->second;
}

DesignPtr daimon() {
  static const DesignPtr d = std::make_shared<Design>(Design{Daimon{}});
  return d;
}

DesignPtr omega() {
  static const DesignPtr d = std::make_shared<Design>(Design{OmegaNode{}});
  return d;
}

DesignPtr pos_app(Var head, Name name, std::vector<DesignPtr> args) {
  for (const auto& a : args)
    if (a->polarity() != Polarity::Negative)
      throw ludics_error("application argument must be negative");
  return std::make_shared<Design>(Design{PosApp{std::move(head), std::move(name), std::move(args)}});
}

DesignPtr cut_app(DesignPtr head, Name name, std::vector<DesignPtr> args) {
  if (head->polarity() != Polarity::Negative)
    throw ludics_error("cut head must be negative");
  for (const auto& a : args)
    if (a->polarity() != Polarity::Negative)
      throw ludics_error("application argument must be negative");
  return std::make_shared<Design>(Design{CutApp{std::move(head), std::move(name), std::move(args)}});
}

DesignPtr neg_sum(std::map<Name, Branch> branches) {
  // Drop explicit Omega bodies: absent means Omega.
  for (auto it = branches.begin(); it != branches.end();) {
    if (is_omega(it->second.body))
      it = branches.erase(it);
    else
      ++it;
  }
  for (const auto& [name, br] : branches) {
    if (br.body->polarity() != Polarity::Positive)
      throw ludics_error("branch body must be positive");
    std::set<Var> seen;
    for (const auto& v : br.binders) {
      if (v == kX0) throw ludics_error("x0 cannot be bound");
      if (!seen.insert(v).second)
        throw ludics_error("repeated binder " + v + " in branch " + name);
    }
  }
  return std::make_shared<Design>(Design{NegSum{std::move(branches)}});
}

DesignPtr omega_neg() {
  static const DesignPtr d = std::make_shared<Design>(Design{NegSum{}});
  return d;
}

namespace {

void free_vars_into(const DesignPtr& d, VarSet& out, std::set<Var>& bound) {
  if (const auto* p = std::get_if<PosApp>(&d->node)) {
    if (!bound.count(p->head)) out.insert(p->head);
    for (const auto& a : p->args) free_vars_into(a, out, bound);
  } else if (const auto* c = std::get_if<CutApp>(&d->node)) {
    free_vars_into(c->head, out, bound);
    for (const auto& a : c->args) free_vars_into(a, out, bound);
  } else if (const auto* n = std::get_if<NegSum>(&d->node)) {
    for (const auto& [name, br] : n->branches) {
      std::vector<Var> fresh;
      for (const auto& v : br.binders)
        if (bound.insert(v).second) fresh.push_back(v);
      free_vars_into(br.body, out, bound);
      for (const auto& v : fresh) bound.erase(v);
    }
  }
}

}  // namespace

VarSet free_vars(const DesignPtr& d) {
  VarSet out;
  std::set<Var> bound;
  free_vars_into(d, out, bound);
  return out;
}

namespace {
void bound_vars_into(const DesignPtr& d, VarSet& out) {
  if (const auto* p = std::get_if<PosApp>(&d->node)) {
    for (const auto& a : p->args) bound_vars_into(a, out);
  } else if (const auto* c = std::get_if<CutApp>(&d->node)) {
    bound_vars_into(c->head, out);
    for (const auto& a : c->args) bound_vars_into(a, out);
  } else if (const auto* n = std::get_if<NegSum>(&d->node)) {
    for (const auto& [name, br] : n->branches) {
      out.insert(br.binders.begin(), br.binders.end());
      bound_vars_into(br.body, out);
    }
  }
}
}  // namespace

VarSet bound_vars(const DesignPtr& d) {
  VarSet out;
  bound_vars_into(d, out);
  return out;
}

bool has_cut(const DesignPtr& d) {
  if (is_cut(d)) return true;
  if (const auto* p = std::get_if<PosApp>(&d->node)) {
    return std::any_of(p->args.begin(), p->args.end(), has_cut);
  }
  if (const auto* n = std::get_if<NegSum>(&d->node)) {
    for (const auto& [name, br] : n->branches)
      if (has_cut(br.body)) return true;
  }
  return false;
}

namespace {

bool disjoint_union(VarSet& acc, const VarSet& next) {
  for (const auto& v : next)
    if (!acc.insert(v).second) return false;
  return true;
}

bool linear_rec(const DesignPtr& d) {
  if (const auto* p = std::get_if<PosApp>(&d->node)) {
    VarSet seen{p->head};
    for (const auto& a : p->args) {
      if (!linear_rec(a)) return false;
      if (!disjoint_union(seen, free_vars(a))) return false;
    }
    return true;
  }
  if (const auto* c = std::get_if<CutApp>(&d->node)) {
    if (!linear_rec(c->head)) return false;
    VarSet seen = free_vars(c->head);
    for (const auto& a : c->args) {
      if (!linear_rec(a)) return false;
      if (!disjoint_union(seen, free_vars(a))) return false;
    }
    return true;
  }
  if (const auto* n = std::get_if<NegSum>(&d->node)) {
    for (const auto& [name, br] : n->branches)
      if (!linear_rec(br.body)) return false;
    return true;
  }
  return true;
}

}  // namespace

bool is_linear(const DesignPtr& d) { return linear_rec(d); }

Classification classify(const DesignPtr& d) {
  Classification c;
  c.polarity = d->polarity();
  c.cut_free = !has_cut(d);
  VarSet fv = free_vars(d);
  if (c.polarity == Polarity::Positive) {
    fv.erase(kX0);
    c.atomic = fv.empty();
  } else {
    c.atomic = fv.empty();
  }
  return c;
}

namespace {

struct SubstEnv {
  const std::map<Var, DesignPtr>* bindings;
  // Renaming of bound variables to avoid capture.
  std::map<Var, Var> rename;
  VarSet avoid;
  int counter = 0;

  Var fresh(const Var& base) {
    for (;;) {
      Var cand = base + "'" + std::to_string(counter++);
      if (!avoid.count(cand)) {
        avoid.insert(cand);
        return cand;
      }
    }
  }
};

DesignPtr subst_rec(const DesignPtr& d, SubstEnv& env) {
  if (is_daimon(d) || is_omega(d)) return d;
  if (const auto* p = std::get_if<PosApp>(&d->node)) {
    std::vector<DesignPtr> args;
    args.reserve(p->args.size());
    for (const auto& a : p->args) args.push_back(subst_rec(a, env));
    auto rn = env.rename.find(p->head);
    Var head = rn != env.rename.end() ? rn->second : p->head;
    if (rn == env.rename.end()) {
      auto it = env.bindings->find(p->head);
      if (it != env.bindings->end())
        return cut_app(it->second, p->name, std::move(args));
    }
    return pos_app(head, p->name, std::move(args));
  }
  if (const auto* c = std::get_if<CutApp>(&d->node)) {
    std::vector<DesignPtr> args;
    args.reserve(c->args.size());
    for (const auto& a : c->args) args.push_back(subst_rec(a, env));
    return cut_app(subst_rec(c->head, env), c->name, std::move(args));
  }
  const auto& n = std::get<NegSum>(d->node);
  std::map<Name, Branch> branches;
  for (const auto& [name, br] : n.branches) {
    std::vector<Var> binders;
    std::vector<std::pair<Var, std::optional<Var>>> saved;
    for (const auto& v : br.binders) {
      if (env.bindings->count(v))
        throw ludics_error("substitution binds bound variable " + v);
      std::optional<Var> old;
      auto it = env.rename.find(v);
      if (it != env.rename.end()) old = it->second;
      if (env.avoid.count(v)) {
        Var w = env.fresh(v);
        env.rename[v] = w;
        binders.push_back(w);
      } else {
        env.rename.erase(v);
        binders.push_back(v);
      }
      saved.emplace_back(v, old);
    }
    DesignPtr body = subst_rec(br.body, env);
    for (auto it = saved.rbegin(); it != saved.rend(); ++it) {
      if (it->second)
        env.rename[it->first] = *it->second;
      else
        env.rename.erase(it->first);
    }
    branches.emplace(name, Branch{std::move(binders), std::move(body)});
  }
  return neg_sum(std::move(branches));
}

}  // namespace

DesignPtr substitute(const DesignPtr& d, const std::map<Var, DesignPtr>& bindings) {
  if (bindings.empty()) return d;
  for (const auto& [v, n] : bindings) {
    if (n->polarity() != Polarity::Negative)
      throw ludics_error("substitution image must be negative");
  }
  SubstEnv env;
  env.bindings = &bindings;
  // Avoid capturing free variables of the images and of d itself.
  env.avoid = free_vars(d);
  for (const auto& [v, n] : bindings) {
    VarSet fv = free_vars(n);
    env.avoid.insert(fv.begin(), fv.end());
  }
  return subst_rec(d, env);
}

namespace {

bool alpha_rec(const DesignPtr& a, const DesignPtr& b, std::map<Var, Var>& ab,
               std::map<Var, Var>& ba) {
  if (a->node.index() != b->node.index()) return false;
  if (is_daimon(a) || is_omega(a)) return true;
  auto var_eq = [&](const Var& x, const Var& y) {
    auto i = ab.find(x);
    auto j = ba.find(y);
    if (i == ab.end() && j == ba.end()) return x == y;  // both free
    return i != ab.end() && j != ba.end() && i->second == y && j->second == x;
  };
  if (const auto* pa = std::get_if<PosApp>(&a->node)) {
    const auto& pb = std::get<PosApp>(b->node);
    if (pa->name != pb.name || pa->args.size() != pb.args.size()) return false;
    if (!var_eq(pa->head, pb.head)) return false;
    for (size_t i = 0; i < pa->args.size(); ++i)
      if (!alpha_rec(pa->args[i], pb.args[i], ab, ba)) return false;
    return true;
  }
  if (const auto* ca = std::get_if<CutApp>(&a->node)) {
    const auto& cb = std::get<CutApp>(b->node);
    if (ca->name != cb.name || ca->args.size() != cb.args.size()) return false;
    if (!alpha_rec(ca->head, cb.head, ab, ba)) return false;
    for (size_t i = 0; i < ca->args.size(); ++i)
      if (!alpha_rec(ca->args[i], cb.args[i], ab, ba)) return false;
    return true;
  }
  const auto& na = std::get<NegSum>(a->node);
  const auto& nb = std::get<NegSum>(b->node);
  if (na.branches.size() != nb.branches.size()) return false;
  for (const auto& [name, bra] : na.branches) {
    auto it = nb.branches.find(name);
    if (it == nb.branches.end()) return false;
    const auto& brb = it->second;
    if (bra.binders.size() != brb.binders.size()) return false;
    std::vector<std::pair<Var, std::optional<Var>>> sa, sb;
    for (size_t i = 0; i < bra.binders.size(); ++i) {
      const Var& x = bra.binders[i];
      const Var& y = brb.binders[i];
      auto ia = ab.find(x);
      sa.emplace_back(x, ia != ab.end() ? std::optional<Var>(ia->second) : std::nullopt);
      auto ib = ba.find(y);
      sb.emplace_back(y, ib != ba.end() ? std::optional<Var>(ib->second) : std::nullopt);
      ab[x] = y;
      ba[y] = x;
    }
    bool ok = alpha_rec(bra.body, brb.body, ab, ba);
    for (size_t i = bra.binders.size(); i-- > 0;) {
      if (sa[i].second) ab[sa[i].first] = *sa[i].second; else ab.erase(sa[i].first);
      if (sb[i].second) ba[sb[i].first] = *sb[i].second; else ba.erase(sb[i].first);
    }
    if (!ok) return false;
  }
  return true;
}

DesignPtr rename_bound(const DesignPtr& d, std::map<Var, Var>& rn, int& counter,
                       const std::string& prefix, const VarSet* avoid) {
  if (is_daimon(d) || is_omega(d)) return d;
  if (const auto* p = std::get_if<PosApp>(&d->node)) {
    std::vector<DesignPtr> args;
    for (const auto& a : p->args) args.push_back(rename_bound(a, rn, counter, prefix, avoid));
    auto it = rn.find(p->head);
    return pos_app(it != rn.end() ? it->second : p->head, p->name, std::move(args));
  }
  if (const auto* c = std::get_if<CutApp>(&d->node)) {
    DesignPtr head = rename_bound(c->head, rn, counter, prefix, avoid);
    std::vector<DesignPtr> args;
    for (const auto& a : c->args) args.push_back(rename_bound(a, rn, counter, prefix, avoid));
    return cut_app(std::move(head), c->name, std::move(args));
  }
  const auto& n = std::get<NegSum>(d->node);
  std::map<Name, Branch> branches;
  for (const auto& [name, br] : n.branches) {
    std::vector<Var> binders;
    std::vector<std::pair<Var, std::optional<Var>>> saved;
    for (const auto& v : br.binders) {
      Var w;
      do {
        w = prefix + std::to_string(counter++);
      } while (avoid && avoid->count(w));
      auto it = rn.find(v);
      saved.emplace_back(v, it != rn.end() ? std::optional<Var>(it->second) : std::nullopt);
      rn[v] = w;
      binders.push_back(w);
    }
    DesignPtr body = rename_bound(br.body, rn, counter, prefix, avoid);
    for (auto it = saved.rbegin(); it != saved.rend(); ++it) {
      if (it->second) rn[it->first] = *it->second; else rn.erase(it->first);
    }
    branches.emplace(name, Branch{std::move(binders), std::move(body)});
  }
  return neg_sum(std::move(branches));
}

}  // namespace

bool alpha_eq(const DesignPtr& a, const DesignPtr& b) {
  std::map<Var, Var> ab, ba;
  return alpha_rec(a, b, ab, ba);
}

DesignPtr canonical(const DesignPtr& d) {
  std::map<Var, Var> rn;
  int counter = 0;
  VarSet fv = free_vars(d);
  return rename_bound(d, rn, counter, "b", &fv);
}

DesignPtr barendregt(const DesignPtr& d, const VarSet& avoid) {
  std::map<Var, Var> rn;
  int counter = 0;
  VarSet keep = avoid;
  VarSet fv = free_vars(d);
  keep.insert(fv.begin(), fv.end());
  return rename_bound(d, rn, counter, "v", &keep);
}

namespace {

bool stable_rec(const DesignPtr& a, const DesignPtr& b, std::map<Var, Var>& ab,
                std::map<Var, Var>& ba, bool obs) {
  if (is_omega(a) && b->polarity() == Polarity::Positive) return true;
  if (obs && is_daimon(b) && a->polarity() == Polarity::Positive) return true;
  if (a->node.index() != b->node.index()) return false;
  if (is_daimon(a) || is_omega(a)) return true;
  auto var_eq = [&](const Var& x, const Var& y) {
    auto i = ab.find(x);
    auto j = ba.find(y);
    if (i == ab.end() && j == ba.end()) return x == y;
    return i != ab.end() && j != ba.end() && i->second == y && j->second == x;
  };
  if (const auto* pa = std::get_if<PosApp>(&a->node)) {
    const auto& pb = std::get<PosApp>(b->node);
    if (pa->name != pb.name || pa->args.size() != pb.args.size()) return false;
    if (!var_eq(pa->head, pb.head)) return false;
    for (size_t i = 0; i < pa->args.size(); ++i)
      if (!stable_rec(pa->args[i], pb.args[i], ab, ba, obs)) return false;
    return true;
  }
  if (const auto* ca = std::get_if<CutApp>(&a->node)) {
    const auto& cb = std::get<CutApp>(b->node);
    if (ca->name != cb.name || ca->args.size() != cb.args.size()) return false;
    if (!stable_rec(ca->head, cb.head, ab, ba, obs)) return false;
    for (size_t i = 0; i < ca->args.size(); ++i)
      if (!stable_rec(ca->args[i], cb.args[i], ab, ba, obs)) return false;
    return true;
  }
  const auto& na = std::get<NegSum>(a->node);
  const auto& nb = std::get<NegSum>(b->node);
  std::set<Name> names;
  for (const auto& [name, br] : na.branches) names.insert(name);
  for (const auto& [name, br] : nb.branches) names.insert(name);
  for (const auto& name : names) {
    auto ia = na.branches.find(name);
    auto ib = nb.branches.find(name);
    if (ia == na.branches.end()) continue;  // Omega body on the left
    if (ib == nb.branches.end()) {
      // Left branch must reduce to Omega on the right: impossible for
      // stable_leq, and for obs_leq Omega is only above Omega.
      return false;
    }
    const auto& bra = ia->second;
    const auto& brb = ib->second;
    if (bra.binders.size() != brb.binders.size()) return false;
    std::vector<std::pair<Var, std::optional<Var>>> sa, sb;
    for (size_t i = 0; i < bra.binders.size(); ++i) {
      const Var& x = bra.binders[i];
      const Var& y = brb.binders[i];
      auto iav = ab.find(x);
      sa.emplace_back(x, iav != ab.end() ? std::optional<Var>(iav->second) : std::nullopt);
      auto ibv = ba.find(y);
      sb.emplace_back(y, ibv != ba.end() ? std::optional<Var>(ibv->second) : std::nullopt);
      ab[x] = y;
      ba[y] = x;
    }
    bool ok = stable_rec(bra.body, brb.body, ab, ba, obs);
    for (size_t i = bra.binders.size(); i-- > 0;) {
      if (sa[i].second) ab[sa[i].first] = *sa[i].second; else ab.erase(sa[i].first);
      if (sb[i].second) ba[sb[i].first] = *sb[i].second; else ba.erase(sb[i].first);
    }
    if (!ok) return false;
  }
  return true;
}

}  // namespace

bool stable_leq(const DesignPtr& d1, const DesignPtr& d2) {
  std::map<Var, Var> ab, ba;
  return stable_rec(d1, d2, ab, ba, /*obs=*/false);
}

bool obs_leq(const DesignPtr& d1, const DesignPtr& d2) {
  std::map<Var, Var> ab, ba;
  return stable_rec(d1, d2, ab, ba, /*obs=*/true);
}

namespace {

void render_rec(const DesignPtr& d, std::ostringstream& out) {
  if (is_daimon(d)) {
    out << "#";
    return;
  }
  if (is_omega(d)) {
    out << "_";
    return;
  }
  if (const auto* p = std::get_if<PosApp>(&d->node)) {
    out << p->head << "|" << p->name << "<";
    for (size_t i = 0; i < p->args.size(); ++i) {
      if (i) out << ", ";
      render_rec(p->args[i], out);
    }
    out << ">";
    return;
  }
  if (const auto* c = std::get_if<CutApp>(&d->node)) {
    out << "[";
    render_rec(c->head, out);
    out << "]|" << c->name << "<";
    for (size_t i = 0; i < c->args.size(); ++i) {
      if (i) out << ", ";
      render_rec(c->args[i], out);
    }
    out << ">";
    return;
  }
  const auto& n = std::get<NegSum>(d->node);
  if (n.branches.empty()) {
    out << "{}";
    return;
  }
  bool first = true;
  for (const auto& [name, br] : n.branches) {
    if (!first) out << " + ";
    first = false;
    out << name << "(";
    for (size_t i = 0; i < br.binders.size(); ++i) {
      if (i) out << ",";
      out << br.binders[i];
    }
    out << ").";
    bool paren = is_pos_app(br.body) || is_cut(br.body);
    if (paren) out << "(";
    render_rec(br.body, out);
    if (paren) out << ")";
  }
}

}  // namespace

std::string render_design(const DesignPtr& d) {
  std::ostringstream out;
  render_rec(d, out);
  return out.str();
}

bool DesignLess::operator()(const DesignPtr& a, const DesignPtr& b) const {
  if (a == b) return false;
  return render_design(canonical(a)) < render_design(canonical(b));
}

namespace {

void check_rec(const DesignPtr& d, const Signature& sig, std::set<Var>& bound) {
  if (is_daimon(d) || is_omega(d)) return;
  if (const auto* p = std::get_if<PosApp>(&d->node)) {
    if (!sig.declared(p->name)) throw ludics_error("undeclared name " + p->name);
    if ((int)p->args.size() != sig.arity(p->name))
      throw ludics_error("arity mismatch for name " + p->name);
    for (const auto& a : p->args) check_rec(a, sig, bound);
    return;
  }
  if (const auto* c = std::get_if<CutApp>(&d->node)) {
    if (!sig.declared(c->name)) throw ludics_error("undeclared name " + c->name);
    if ((int)c->args.size() != sig.arity(c->name))
      throw ludics_error("arity mismatch for name " + c->name);
    check_rec(c->head, sig, bound);
    for (const auto& a : c->args) check_rec(a, sig, bound);
    return;
  }
  const auto& n = std::get<NegSum>(d->node);
  for (const auto& [name, br] : n.branches) {
    if (!sig.declared(name)) throw ludics_error("undeclared name " + name);
    if ((int)br.binders.size() != sig.arity(name))
      throw ludics_error("arity mismatch for name " + name);
    for (const auto& v : br.binders) {
      if (v == kX0) throw ludics_error("x0 cannot be bound");
      bound.insert(v);
    }
    check_rec(br.body, sig, bound);
    for (const auto& v : br.binders) bound.erase(v);
  }
}

}  // namespace

void check_design(const DesignPtr& d, const Signature& sig, bool strict_linear) {
  std::set<Var> bound;
  check_rec(d, sig, bound);
  if (strict_linear && !is_linear(d)) throw ludics_error("design is not linear");
}

std::size_t action_count(const DesignPtr& d) {
  if (is_omega(d)) return 0;
  if (is_daimon(d)) return 1;
  if (const auto* p = std::get_if<PosApp>(&d->node)) {
    std::size_t n = 1;
    for (const auto& a : p->args) n += action_count(a);
    return n;
  }
  if (is_cut(d)) throw ludics_error("action_count requires a cut-free design");
  const auto& ns = std::get<NegSum>(d->node);
  std::size_t n = 0;
  for (const auto& [name, br] : ns.branches) n += 1 + action_count(br.body);
  return n;
}

}  // namespace ludics
