#include "ludics/multidesign.hpp"

#include <algorithm>
#include <sstream>

#include "ludics/parser.hpp"

namespace ludics {

VarSet fv(const MultiDesign& d) {
  VarSet out;
  for (const auto& [x, n] : d.negatives) {
    VarSet f = free_vars(n);
    out.insert(f.begin(), f.end());
  }
  if (d.positive) {
    VarSet f = free_vars(*d.positive);
    out.insert(f.begin(), f.end());
  }
  return out;
}

VarSet np(const MultiDesign& d) {
  VarSet out;
  for (const auto& [x, n] : d.negatives) out.insert(x);
  return out;
}

void check_multidesign(const MultiDesign& d) {
  VarSet places = np(d);
  VarSet seen;
  auto check_one = [&](const DesignPtr& dd) {
    VarSet f = free_vars(dd);
    for (const auto& v : f) {
      if (places.count(v)) throw ludics_error("multi-design: fv meets np at " + v);
      if (!seen.insert(v).second)
        throw ludics_error("multi-design: shared free variable " + v);
    }
  };
  for (const auto& [x, n] : d.negatives) {
    if (n->polarity() != Polarity::Negative)
      throw ludics_error("multi-design: " + x + " must map to a negative design");
    check_one(n);
  }
  if (d.positive) {
    if ((*d.positive)->polarity() != Polarity::Positive)
      throw ludics_error("multi-design: positive component must be positive");
    check_one(*d.positive);
  }
}

Compat compatible(const MultiDesign& d, const MultiDesign& e) {
  VarSet fd = fv(d), fe = fv(e), nd = np(d), ne = np(e);
  for (const auto& v : fd)
    if (fe.count(v)) return Compat::Incompatible;
  for (const auto& v : nd)
    if (ne.count(v)) return Compat::Incompatible;
  if (d.polarity() == e.polarity()) {
    if (d.polarity() == Polarity::Positive) return Compat::Incompatible;
    // Both negative: some place must stay free.
    for (const auto& v : nd)
      if (!fd.count(v) && !fe.count(v)) return Compat::Compatible;
    for (const auto& v : ne)
      if (!fd.count(v) && !fe.count(v)) return Compat::Compatible;
    return Compat::Incompatible;
  }
  if (fd == ne && fe == nd) return Compat::ClosedCompatible;
  return Compat::Compatible;
}

namespace {

// Designs of D whose place is free in `f`.
std::map<Var, DesignPtr> select(const MultiDesign& d, const VarSet& f) {
  std::map<Var, DesignPtr> s;
  for (const auto& [y, m] : d.negatives)
    if (f.count(y)) s.emplace(y, m);
  return s;
}

}  // namespace

MultiDesign cut(const MultiDesign& d, const MultiDesign& e) {
  if (compatible(d, e) == Compat::Incompatible)
    throw ludics_error("cut requires compatible multi-designs");
  MultiDesign acc = d;
  MultiDesign rest = e;

  // Consume E: positive design first, then negatives in place order.
  while (!rest.empty()) {
    if (rest.positive) {
      DesignPtr p = *rest.positive;
      rest.positive.reset();
      auto s = select(acc, free_vars(p));
      for (const auto& [y, m] : s) acc.negatives.erase(y);
      acc.positive = substitute(p, s);
      continue;
    }
    auto it = rest.negatives.begin();
    Var x = it->first;
    DesignPtr n = it->second;
    rest.negatives.erase(it);
    auto s = select(acc, free_vars(n));
    for (const auto& [y, m] : s) acc.negatives.erase(y);
    DesignPtr nn = substitute(n, s);
    VarSet facc = fv(acc);
    if (!facc.count(x)) {
      acc.negatives.emplace(x, nn);
    } else {
      std::map<Var, DesignPtr> binding{{x, nn}};
      MultiDesign next;
      for (const auto& [y, m] : acc.negatives) next.negatives.emplace(y, substitute(m, binding));
      if (acc.positive) next.positive = substitute(*acc.positive, binding);
      acc = std::move(next);
    }
  }
  return acc;
}

MultiDesign normalize_multi(const MultiDesign& d, long fuel) {
  MultiDesign out;
  for (const auto& [x, n] : d.negatives)
    out.negatives.emplace(x, normalize(n, fuel).result);
  if (d.positive) out.positive = normalize(*d.positive, fuel).result;
  // Bindings whose place is no longer reachable from the positive component
  // are dead and dropped, as in the one-step reduction of cut nets.
  if (out.positive) {
    VarSet live = free_vars(*out.positive);
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& [x, n] : out.negatives) {
        if (!live.count(x)) continue;
        for (const auto& v : free_vars(n))
          if (live.insert(v).second) changed = true;
      }
    }
    for (auto it = out.negatives.begin(); it != out.negatives.end();) {
      if (!live.count(it->first))
        it = out.negatives.erase(it);
      else
        ++it;
    }
  }
  return out;
}

namespace {

struct Side {
  std::map<Var, DesignPtr> negatives;
  std::optional<DesignPtr> positive;
};

Side to_side(const MultiDesign& d) { return Side{d.negatives, d.positive}; }

// Renames bound variables of every component apart, keeping free variables.
void barendregt_sides(Side& d, Side& e) {
  VarSet avoid;
  auto collect = [&](const DesignPtr& x) {
    VarSet f = free_vars(x);
    avoid.insert(f.begin(), f.end());
  };
  for (auto& [x, n] : d.negatives) { collect(n); avoid.insert(x); }
  for (auto& [x, n] : e.negatives) { collect(n); avoid.insert(x); }
  if (d.positive) collect(*d.positive);
  if (e.positive) collect(*e.positive);
  auto rename_one = [&](DesignPtr& dd) {
    dd = barendregt(dd, avoid);
    VarSet b = bound_vars(dd);
    avoid.insert(b.begin(), b.end());
  };
  for (auto& [x, n] : d.negatives) rename_one(n);
  if (d.positive) rename_one(*d.positive);
  for (auto& [x, n] : e.negatives) rename_one(n);
  if (e.positive) rename_one(*e.positive);
}

}  // namespace

InteractionResult interaction_sequence(const MultiDesign& d0, const MultiDesign& e0, long fuel) {
  if (d0.polarity() == e0.polarity())
    throw ludics_error("interaction sequence requires opposite polarities");
  if (compatible(d0, e0) == Compat::Incompatible)
    throw ludics_error("interaction sequence requires compatible multi-designs");
  VarSet fd = fv(d0), fe = fv(e0), nd = np(d0), ne = np(e0);
  for (const auto& v : fd)
    if (!ne.count(v)) throw ludics_error("interaction sequence: fv(D) must lie in np(E)");
  for (const auto& v : fe)
    if (!nd.count(v)) throw ludics_error("interaction sequence: fv(E) must lie in np(D)");

  Side d = to_side(d0), e = to_side(e0);
  barendregt_sides(d, e);

  InteractionResult out;
  out.converged = false;
  bool p_in_d = d.positive.has_value();

  for (;;) {
    if (fuel-- <= 0) {
      out.fuel_out = true;
      return out;
    }
    Side& owner = p_in_d ? d : e;
    Side& other = p_in_d ? e : d;
    DesignPtr p = *owner.positive;
    if (is_daimon(p)) {
      if (p_in_d) out.seq.push(daimon_action());
      out.converged = true;
      return out;
    }
    if (is_omega(p)) return out;  // divergence
    if (is_cut(p)) throw ludics_error("interaction sequence requires cut-free designs");
    const auto& app = std::get<PosApp>(p->node);
    auto nit = other.negatives.find(app.head);
    if (nit == other.negatives.end())
      throw ludics_error("interaction sequence: unmatched head variable " + app.head);
    DesignPtr n = nit->second;
    const auto& sum = std::get<NegSum>(n->node);
    auto bit = sum.branches.find(app.name);
    std::vector<Var> binders;
    DesignPtr body;
    if (bit == sum.branches.end()) {
      // Omega branch: mint binder names so the action is well formed, then
      // diverge on the next round.
      for (size_t i = 0; i < app.args.size(); ++i)
        binders.push_back("o" + std::to_string(i) + "_" + app.head);
      body = omega();
    } else {
      binders = bit->second.binders;
      body = bit->second.body;
    }
    LocAction kappa = p_in_d ? pos_action(app.head, app.name, binders)
                             : neg_action(app.head, app.name, binders);
    out.seq.push(kappa);

    owner.positive.reset();
    for (size_t i = 0; i < app.args.size(); ++i)
      owner.negatives.emplace(binders[i], app.args[i]);
    other.negatives.erase(app.head);
    other.positive = body;
    p_in_d = !p_in_d;
  }
}

AjSeq restrict_path(const AjSeq& s, const MultiDesign& d, const MultiDesign& e) {
  // E must be a sub-multi-design of D.
  if (e.positive && (!d.positive || !alpha_eq(*e.positive, *d.positive)))
    throw ludics_error("restrict: E is not a sub-multi-design of D");
  for (const auto& [x, n] : e.negatives) {
    auto it = d.negatives.find(x);
    if (it == d.negatives.end() || !alpha_eq(it->second, n))
      throw ludics_error("restrict: E is not a sub-multi-design of D");
  }

  // Root of an action: the place (or positive component) whose design tree
  // contains it, found through hereditary justification.
  auto root_of = [&](size_t i) -> std::optional<Var> {
    size_t k = i;
    for (;;) {
      auto j = justifier(s, k);
      if (!j) break;
      k = *j;
    }
    if (!s[k].proper()) return std::nullopt;
    const Var& addr = s[k].address;
    if (d.negatives.count(addr)) return addr;
    return std::nullopt;  // rooted in the positive component
  };

  AjSeq kept;
  for (size_t i = 0; i < s.size(); ++i) {
    std::optional<Var> root;
    if (s[i].proper()) {
      root = root_of(i);
    } else {
      View v = view_of(s.prefix(i));
      if (!v.empty()) {
        // Find the view's last action in s to root the daimon.
        for (size_t k = 0; k < i; ++k)
          if (s[k] == v.actions.back()) root = root_of(k);
      }
    }
    bool in_e = root ? e.negatives.count(*root) > 0 : e.positive.has_value();
    if (in_e) kept.push(s[i]);
  }
  while (!kept.empty() && !is_path(kept)) kept.actions.pop_back();
  return kept;
}

std::optional<Path> interaction_path(const DesignPtr& d, const DesignPtr& e, long fuel) {
  Classification cd = classify(d), ce = classify(e);
  if (!cd.cut_free || !ce.cut_free)
    throw ludics_error("interaction_path requires cut-free designs");
  if (!cd.atomic || !ce.atomic)
    throw ludics_error("interaction_path requires atomic designs");
  if (cd.polarity == ce.polarity)
    throw ludics_error("interaction_path requires opposite polarities");
  MultiDesign D = cd.polarity == Polarity::Positive ? MultiDesign::of_positive(d)
                                                    : MultiDesign::of_negative(d);
  MultiDesign E = ce.polarity == Polarity::Positive ? MultiDesign::of_positive(e)
                                                    : MultiDesign::of_negative(e);
  InteractionResult r = interaction_sequence(D, E, fuel);
  if (!r.converged) return std::nullopt;
  return r.seq;
}

MultiDesign parse_multidesign(const std::string& text, const Signature& sig) {
  MultiDesign out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto comment = line.find("--");
    if (comment != std::string::npos) line = line.substr(0, comment);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto sep = line.find(":=");
    if (sep == std::string::npos) throw ludics_error("mlud line missing ':=': " + line);
    std::string var = line.substr(0, sep);
    var.erase(0, var.find_first_not_of(" \t"));
    var.erase(var.find_last_not_of(" \t") + 1);
    DesignPtr dsg = parse_design(line.substr(sep + 2), sig);
    if (var == "pos") {
      if (out.positive) throw ludics_error("mlud: multiple positive components");
      out.positive = dsg;
    } else {
      if (!out.negatives.emplace(var, dsg).second)
        throw ludics_error("mlud: duplicate place " + var);
    }
  }
  check_multidesign(out);
  return out;
}

std::string render_multidesign(const MultiDesign& d) {
  std::ostringstream out;
  for (const auto& [x, n] : d.negatives)
    out << x << " := " << render_design(n) << "\n";
  if (d.positive) out << "pos := " << render_design(*d.positive) << "\n";
  return out.str();
}

}  // namespace ludics
