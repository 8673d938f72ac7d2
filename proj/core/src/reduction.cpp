#include "ludics/reduction.hpp"

namespace ludics {

std::optional<DesignPtr> step(const DesignPtr& p) {
  const auto* c = std::get_if<CutApp>(&p->node);
  if (!c) return std::nullopt;
  const auto& sum = std::get<NegSum>(c->head->node);
  auto it = sum.branches.find(c->name);
  if (it == sum.branches.end()) return omega();  // absent branch: Omega body
  const Branch& br = it->second;
  if (br.binders.size() != c->args.size())
    throw ludics_error("arity mismatch in cut on " + c->name);
  std::map<Var, DesignPtr> bindings;
  for (size_t i = 0; i < br.binders.size(); ++i) bindings[br.binders[i]] = c->args[i];
  return substitute(br.body, bindings);
}

namespace {

struct Budget {
  long fuel;
  long steps = 0;
  bool exhausted = false;
};

// Reduce head cuts until the design is Daimon, Omega or a variable-headed
// application (weak form).
DesignPtr weak_head(DesignPtr p, Budget& b,
                    const std::function<void(const DesignPtr&)>& trace) {
  for (;;) {
    if (!is_cut(p)) return p;
    if (b.fuel <= 0) {
      b.exhausted = true;
      return p;
    }
    if (trace) trace(p);
    --b.fuel;
    ++b.steps;
    p = *step(p);
  }
}

DesignPtr norm_rec(const DesignPtr& d, Budget& b,
                   const std::function<void(const DesignPtr&)>& trace) {
  if (d->polarity() == Polarity::Negative) {
    const auto& sum = std::get<NegSum>(d->node);
    std::map<Name, Branch> branches;
    for (const auto& [name, br] : sum.branches) {
      DesignPtr body = norm_rec(br.body, b, trace);
      if (b.exhausted) return d;
      branches.emplace(name, Branch{br.binders, body});
    }
    return neg_sum(std::move(branches));
  }
  DesignPtr w = weak_head(d, b, trace);
  if (b.exhausted) return w;
  if (is_daimon(w) || is_omega(w)) return w;
  const auto& app = std::get<PosApp>(w->node);
  std::vector<DesignPtr> args;
  args.reserve(app.args.size());
  for (const auto& a : app.args) {
    args.push_back(norm_rec(a, b, trace));
    if (b.exhausted) return w;
  }
  return pos_app(app.head, app.name, std::move(args));
}

}  // namespace

NormalizeOutcome normalize(const DesignPtr& d, long fuel,
                           const std::function<void(const DesignPtr&)>& trace) {
  if (fuel <= 0) throw ludics_error("normalize requires positive fuel");
  Budget b{fuel};
  NormalizeOutcome out;
  if (d->polarity() == Polarity::Positive) {
    DesignPtr w = weak_head(d, b, trace);
    if (b.exhausted) {
      out.result = w;
      out.status = NormStatus::FuelExhausted;
      out.steps = b.steps;
      return out;
    }
    if (is_omega(w)) {
      out.result = omega();
      out.status = NormStatus::DivergedOmega;
      out.steps = b.steps;
      return out;
    }
    DesignPtr r = norm_rec(w, b, trace);
    out.result = r;
    out.status = b.exhausted ? NormStatus::FuelExhausted : NormStatus::Converged;
    out.steps = b.steps;
    return out;
  }
  DesignPtr r = norm_rec(d, b, trace);
  out.result = r;
  out.status = b.exhausted ? NormStatus::FuelExhausted : NormStatus::Converged;
  out.steps = b.steps;
  return out;
}

bool is_orthogonal(const DesignPtr& p, const DesignPtr& n, long fuel) {
  Classification cp = classify(p);
  Classification cn = classify(n);
  if (cp.polarity != Polarity::Positive || !cp.atomic)
    throw ludics_error("is_orthogonal: first argument must be atomic positive");
  if (cn.polarity != Polarity::Negative || !cn.atomic)
    throw ludics_error("is_orthogonal: second argument must be atomic negative");
  DesignPtr closed = substitute(p, {{kX0, n}});
  NormalizeOutcome out = normalize(closed, fuel);
  return out.status == NormStatus::Converged && is_daimon(out.result);
}

}  // namespace ludics
