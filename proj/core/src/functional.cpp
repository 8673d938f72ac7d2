#include "ludics/functional.hpp"

#include <algorithm>
#include <cctype>

#include "ludics/completion.hpp"
#include "ludics/multidesign.hpp"

namespace ludics {

namespace {
template <typename T>
FuncPtr makef(T node) {
  return std::make_shared<FuncType>(FuncType{std::move(node)});
}
}  // namespace

FuncPtr fdata(PatternPtr p) {
  if (!pattern_free_vars(p).empty())
    throw ludics_error("functional data leaf must be a closed pattern");
  if (!is_steady(p))
    throw ludics_error("functional data leaf must be a steady pattern: " + render_pattern(p));
  return makef(FData{std::move(p)});
}
FuncPtr fplus(FuncPtr l, FuncPtr r) { return makef(FPlus{std::move(l), std::move(r)}); }
FuncPtr ftensor(FuncPtr l, FuncPtr r) { return makef(FTensor{std::move(l), std::move(r)}); }
FuncPtr flimp(FuncPtr l, FuncPtr r) { return makef(FLimp{std::move(l), std::move(r)}); }

std::string render_functype(const FuncPtr& f) {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, FData>) return render_pattern(n.pattern);
        else if constexpr (std::is_same_v<T, FPlus>)
          return "(" + render_functype(n.left) + " (+) " + render_functype(n.right) + ")";
        else if constexpr (std::is_same_v<T, FTensor>)
          return "(" + render_functype(n.left) + " (*) " + render_functype(n.right) + ")";
        else
          return "(" + render_functype(n.left) + " -o " + render_functype(n.right) + ")";
      },
      f->node);
}

namespace {

struct FuncParser {
  const std::string& src;
  size_t pos = 0;

  void skip() {
    while (pos < src.size() && std::isspace((unsigned char)src[pos])) ++pos;
  }
  bool try_tok(const std::string& t) {
    skip();
    if (src.compare(pos, t.size(), t) == 0) {
      pos += t.size();
      return true;
    }
    return false;
  }
  std::string ident() {
    skip();
    std::string s;
    while (pos < src.size() &&
           (std::isalnum((unsigned char)src[pos]) || src[pos] == '_' || src[pos] == '\'')) {
      s += src[pos++];
    }
    if (s.empty()) throw ludics_error("functional type: expected identifier");
    return s;
  }

  FuncPtr atom() {
    if (try_tok("(")) {
      FuncPtr f = expr();
      if (!try_tok(")")) throw ludics_error("functional type: expected ')'");
      return f;
    }
    std::string id = ident();
    if (id == "1" || id == "one") return fdata(pname("u"));
    if (id == "Bool") return fdata(bool_pattern());
    if (id == "Nat") return fdata(nat_pattern());
    if (id == "List") return fdata(list_pattern("b"));
    if (id == "Tree") return fdata(tree_pattern("b"));
    if (std::islower((unsigned char)id[0])) return fdata(pname(id));
    throw ludics_error("functional type: unknown leaf " + id);
  }

  FuncPtr sum() {
    FuncPtr left = atom();
    for (;;) {
      if (try_tok("(+)")) left = fplus(left, atom());
      else if (try_tok("(*)") || try_tok("(x)")) left = ftensor(left, atom());
      else return left;
    }
  }

  FuncPtr expr() {
    FuncPtr left = sum();
    if (!try_tok("-o")) return left;
    return flimp(left, expr());
  }
};

}  // namespace

FuncPtr parse_functype(const std::string& text) {
  FuncParser p{text, 0};
  FuncPtr f = p.expr();
  p.skip();
  if (p.pos != text.size()) throw ludics_error("functional type: trailing input");
  return f;
}

bool func_is_const(const FuncPtr& f) {
  const auto* d = std::get_if<FData>(&f->node);
  return d && std::holds_alternative<PName>(d->pattern->node);
}

BehaviourPtr compile_functype(BehaviourContext& ctx, const FuncPtr& f, int level) {
  return std::visit(
      [&](const auto& n) -> BehaviourPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, FData>) {
          declare_pattern_names(ctx.sig(), n.pattern);
          return interpret_pattern(n.pattern, {}, level);
        } else if constexpr (std::is_same_v<T, FPlus>)
          return plus_pos(compile_functype(ctx, n.left, level),
                          compile_functype(ctx, n.right, level));
        else if constexpr (std::is_same_v<T, FTensor>)
          return tensor_pos(compile_functype(ctx, n.left, level),
                            compile_functype(ctx, n.right, level));
        else
          return limp_pos(compile_functype(ctx, n.left, level),
                          compile_functype(ctx, n.right, level));
      },
      f->node);
}

std::string render_context(const std::vector<CtxFrame>& frames) {
  std::string hole = "[]";
  for (auto it = frames.rbegin(); it != frames.rend(); ++it) {
    switch (it->step) {
      case CtxStep::PlusL: hole = "(" + hole + " (+) " + render_functype(it->other) + ")"; break;
      case CtxStep::PlusR: hole = "(" + render_functype(it->other) + " (+) " + hole + ")"; break;
      case CtxStep::TensorL: hole = "(" + hole + " (*) " + render_functype(it->other) + ")"; break;
      case CtxStep::TensorR: hole = "(" + render_functype(it->other) + " (*) " + hole + ")"; break;
      case CtxStep::LimpR: hole = "(" + render_functype(it->other) + " -o " + hole + ")"; break;
    }
  }
  return hole;
}

namespace {

bool has_arrow(const FuncPtr& f);

// Finds a context-2 position whose subterm is an arrow; the hole may not
// move to the left of -o.
bool find_c2(const FuncPtr& f, std::vector<CtxFrame>& frames, FuncPtr& q1, FuncPtr& q2) {
  if (const auto* a = std::get_if<FLimp>(&f->node)) {
    q1 = a->left;
    q2 = a->right;
    return true;
  }
  if (const auto* p = std::get_if<FPlus>(&f->node)) {
    frames.push_back({CtxStep::PlusL, p->right});
    if (find_c2(p->left, frames, q1, q2)) return true;
    frames.back() = {CtxStep::PlusR, p->left};
    if (find_c2(p->right, frames, q1, q2)) return true;
    frames.pop_back();
    return false;
  }
  if (const auto* t = std::get_if<FTensor>(&f->node)) {
    frames.push_back({CtxStep::TensorL, t->right});
    if (find_c2(t->left, frames, q1, q2)) return true;
    frames.back() = {CtxStep::TensorR, t->left};
    if (find_c2(t->right, frames, q1, q2)) return true;
    frames.pop_back();
    return false;
  }
  return false;
}

bool has_arrow(const FuncPtr& f) {
  return std::visit(
      [](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, FData>) return false;
        else if constexpr (std::is_same_v<T, FLimp>) return true;
        else
          return has_arrow(n.left) || has_arrow(n.right);
      },
      f->node);
}

bool find_c1(const FuncPtr& f, std::vector<CtxFrame>& frames, Decomposition& out) {
  if (const auto* a = std::get_if<FLimp>(&f->node)) {
    if (!func_is_const(a->right)) {
      std::vector<CtxFrame> c2;
      FuncPtr q1, q2;
      if (find_c2(a->left, c2, q1, q2)) {
        out.c1 = frames;
        out.c2 = std::move(c2);
        out.q1 = q1;
        out.q2 = q2;
        out.r = a->right;
        return true;
      }
    }
    // The hole may only descend into the right of the arrow.
    frames.push_back({CtxStep::LimpR, a->left});
    if (find_c1(a->right, frames, out)) return true;
    frames.pop_back();
    return false;
  }
  if (const auto* p = std::get_if<FPlus>(&f->node)) {
    frames.push_back({CtxStep::PlusL, p->right});
    if (find_c1(p->left, frames, out)) return true;
    frames.back() = {CtxStep::PlusR, p->left};
    if (find_c1(p->right, frames, out)) return true;
    frames.pop_back();
    return false;
  }
  if (const auto* t = std::get_if<FTensor>(&f->node)) {
    frames.push_back({CtxStep::TensorL, t->right});
    if (find_c1(t->left, frames, out)) return true;
    frames.back() = {CtxStep::TensorR, t->left};
    if (find_c1(t->right, frames, out)) return true;
    frames.pop_back();
    return false;
  }
  return false;
}

}  // namespace

std::optional<Decomposition> impurity_criterion(const FuncPtr& f) {
  Decomposition out;
  std::vector<CtxFrame> frames;
  if (find_c1(f, frames, out)) return out;
  return std::nullopt;
}

namespace {

FuncPtr rebuild(const std::vector<CtxFrame>& frames, FuncPtr hole) {
  for (auto it = frames.rbegin(); it != frames.rend(); ++it) {
    switch (it->step) {
      case CtxStep::PlusL: hole = fplus(hole, it->other); break;
      case CtxStep::PlusR: hole = fplus(it->other, hole); break;
      case CtxStep::TensorL: hole = ftensor(hole, it->other); break;
      case CtxStep::TensorR: hole = ftensor(it->other, hole); break;
      case CtxStep::LimpR: hole = flimp(it->other, hole); break;
    }
  }
  return hole;
}

struct WitnessBuilder {
  BehaviourContext& ctx;
  Bounds bounds;
  int fresh = 0;

  Var fv() { return "f" + std::to_string(fresh++); }
  std::string fprefix() { return "f" + std::to_string(fresh++) + "_"; }

  AjSeq rename_addresses(const AjSeq& s, const std::map<Var, Var>& m) {
    AjSeq out;
    for (const auto& a : s.actions) {
      if (!a.proper()) {
        out.push(a);
        continue;
      }
      LocAction b = a;
      auto it = m.find(b.address);
      if (it != m.end()) b.address = it->second;
      out.push(std::move(b));
    }
    return out;
  }

  PathSet paths_of_type(const FuncPtr& f) {
    BehaviourPtr b = compile_functype(ctx, f, bounds.level);
    return visitable_paths(ctx, b, bounds);
  }

  // Least maximal daimon-free visitable path.
  Path max_daimon_free(const FuncPtr& f) {
    PathSet v = paths_of_type(f);
    std::set<std::string> extended;  // renderings of strict prefixes
    for (const auto& t : v)
      for (size_t i = 1; i < t.size(); ++i) extended.insert(render_seq(t.prefix(i)));
    for (const auto& s : v) {
      if (s.empty()) continue;
      bool daimon_free = s.actions.back().kind != ActKind::Daimon;
      if (!daimon_free) continue;
      if (!extended.count(render_seq(s))) return s;
    }
    throw ludics_error("no maximal daimon-free visitable path for " + render_functype(f) +
                       " within bounds");
  }

  // First two actions of the least visitable path of length >= 2.
  Path first_two(const FuncPtr& f) {
    PathSet v = paths_of_type(f);
    for (const auto& s : v)
      if (s.size() >= 2 && s[1].kind == ActKind::Neg) return s.prefix(2);
    throw ludics_error("no two-action visitable path for " + render_functype(f) +
                       " within bounds");
  }

  void append(AjSeq& out, const AjSeq& s) {
    for (const auto& a : s.actions) out.push(a);
  }

  AjSeq barred(const AjSeq& s) {
    AjSeq out;
    for (const auto& a : s.actions) out.push(bar(a));
    return out;
  }

  // Witness path for C2[Q1 -o+ Q2] -o+ R, daimon included.
  AjSeq inner(const std::vector<CtxFrame>& c2, size_t at, const FuncPtr& q1, const FuncPtr& q2,
              const FuncPtr& r) {
    // An arrow at the hole or a (Q0 -o+ C') frame: the head construction
    // applies with the whole subtype as the arrow.
    if (at == c2.size() || c2[at].step == CtxStep::LimpR) {
      FuncPtr arrow = rebuild(std::vector<CtxFrame>(c2.begin() + at, c2.end()), flimp(q1, q2));
      const auto& a = std::get<FLimp>(arrow->node);
      return base_arrow(a.left, a.right, r);
    }
    AjSeq w = inner(c2, at + 1, q1, q2, r);
    // w = [val] [pr] [ask-Q] [tail...]; rebind the tail under the new frame.
    const Var qi_old = w[2].binders[0];
    const Var rv_old = w[1].binders[1];
    AjSeq tail;
    for (size_t i = 3; i < w.size(); ++i) tail.push(w[i]);

    Var p1v = fv(), qv = fv(), rv = fv(), qi = fv();
    AjSeq out;
    out.push(pos_action(kX0, kShiftName, {p1v}));
    out.push(neg_action(p1v, kTensorName, {qv, rv}));
    out.push(pos_action(qv, kShiftName, {qi}));

    const CtxFrame& frame = c2[at];
    if (frame.step == CtxStep::TensorL || frame.step == CtxStep::TensorR) {
      Var c0 = fv(), c1 = fv(), t0i = fv(), si = fv();
      out.push(neg_action(qi, kTensorName, {c0, c1}));
      Var hole_side = frame.step == CtxStep::TensorL ? c0 : c1;
      Var other_side = frame.step == CtxStep::TensorL ? c1 : c0;
      Path t0 = max_daimon_free(frame.other);
      out.push(pos_action(other_side, kShiftName, {t0i}));
      append(out, barred(readdress(t0, kX0, t0i, fprefix())));
      out.push(pos_action(hole_side, kShiftName, {si}));
      append(out, rename_addresses(tail, {{qi_old, si}, {rv_old, rv}}));
      return out;
    }
    // Plus frames: inject on the hole side.
    Var iv = fv(), si = fv();
    const Name nm = frame.step == CtxStep::PlusL ? kPlus1Name : kPlus2Name;
    out.push(neg_action(qi, nm, {iv}));
    out.push(pos_action(iv, kShiftName, {si}));
    append(out, rename_addresses(tail, {{qi_old, si}, {rv_old, rv}}));
    return out;
  }

  // The head case: P = (Qa -o+ Qr) -o+ R.
  AjSeq base_arrow(const FuncPtr& qa, const FuncPtr& qr, const FuncPtr& r) {
    Path t1 = max_daimon_free(qa);
    Path t2 = max_daimon_free(qr);
    Path r2 = first_two(r);

    Var p1v = fv(), qv = fv(), rv = fv(), qi = fv(), qf = fv(), av = fv(), bv = fv(), ai = fv();
    AjSeq out;
    out.push(pos_action(kX0, kShiftName, {p1v}));     // shift opening of P
    out.push(neg_action(p1v, kTensorName, {qv, rv})); // the -o pair
    out.push(pos_action(qv, kShiftName, {qi}));       // ask the argument slot
    out.push(neg_action(qi, kShiftName, {qf}));       // the function shows up
    out.push(pos_action(qf, kTensorName, {av, bv}));  // call it
    out.push(neg_action(av, kShiftName, {ai}));       // it asks for its argument
    append(out, rename_addresses(readdress(r2, kX0, rv, fprefix()), {}));  // answer in R starts
    append(out, readdress(t1, kX0, ai, fprefix()));   // feed the argument value
    append(out, barred(readdress(t2, kX0, bv, fprefix())));  // receive the result
    out.push(daimon_action());                        // and give up on R
    return out;
  }

  // Lifts the full witness path through one outer context frame.
  AjSeq lift(const CtxFrame& frame, const AjSeq& u) {
    AjSeq out;
    switch (frame.step) {
      case CtxStep::PlusL:
      case CtxStep::PlusR: {
        Var iv = fv(), wv = fv();
        out.push(pos_action(kX0, frame.step == CtxStep::PlusL ? kPlus1Name : kPlus2Name, {iv}));
        out.push(neg_action(iv, kShiftName, {wv}));
        append(out, readdress(u, kX0, wv, fprefix()));
        return out;
      }
      case CtxStep::TensorL:
      case CtxStep::TensorR: {
        Var c0 = fv(), c1 = fv(), tv = fv(), sv = fv();
        Var hole_side = frame.step == CtxStep::TensorL ? c0 : c1;
        Var other_side = frame.step == CtxStep::TensorL ? c1 : c0;
        Path t = max_daimon_free(frame.other);
        out.push(pos_action(kX0, kTensorName, {c0, c1}));
        out.push(neg_action(other_side, kShiftName, {tv}));
        append(out, readdress(t, kX0, tv, fprefix()));
        out.push(neg_action(hole_side, kShiftName, {sv}));
        append(out, readdress(u, kX0, sv, fprefix()));
        return out;
      }
      case CtxStep::LimpR: {
        Var pv = fv(), c0 = fv(), c1 = fv(), av = fv();
        Path ta = max_daimon_free(frame.other);
        out.push(pos_action(kX0, kShiftName, {pv}));
        out.push(neg_action(pv, kTensorName, {c0, c1}));
        out.push(pos_action(c0, kShiftName, {av}));
        append(out, barred(readdress(ta, kX0, av, fprefix())));
        append(out, readdress(u, kX0, c1, fprefix()));
        return out;
      }
    }
    throw ludics_error("unreachable context frame");
  }
};

}  // namespace

ImpurityWitness impurity_witness(BehaviourContext& ctx, const FuncPtr& f, const Bounds& bounds,
                                 bool minimize_p) {
  auto dec = impurity_criterion(f);
  if (!dec) throw ludics_error("impurity_witness: the type is pure");

  WitnessBuilder wb{ctx, bounds};
  AjSeq w = wb.inner(dec->c2, 0, dec->q1, dec->q2, dec->r);
  for (auto it = dec->c1.rbegin(); it != dec->c1.rend(); ++it) w = wb.lift(*it, w);

  if (!is_path(w))
    throw ludics_error("impurity_witness: constructed sequence is not a path: " + render_seq(w));
  if (w.actions.back().kind != ActKind::Daimon)
    throw ludics_error("impurity_witness: constructed path is not daimon-ended");
  if (is_well_bracketed(w))
    throw ludics_error("impurity_witness: constructed path is well-bracketed");

  BehaviourPtr P = compile_functype(ctx, f, bounds.level);
  Bounds vb = bounds;
  vb.max_len = std::max(bounds.max_len, w.size() + 1);
  if (!visitable_contains(ctx, P, w, vb))
    throw ludics_error("impurity_witness: constructed path is not visitable: " + render_seq(w));
  AjSeq stem = w.prefix(w.size() - 1);
  if (extension_exists(ctx, P, stem, vb))
    throw ludics_error("impurity_witness: constructed path is extensible");

  ImpurityWitness out;
  out.s = canonical_seq(w);
  out.decomposition = *dec;
  out.n = completion(dual(out.s), ctx.sig());
  out.p = completion(out.s, ctx.sig());
  if (minimize_p) out.p = incarnate_design(ctx, out.p, P, vb);
  auto replay = interaction_path(out.p, out.n, bounds.fuel);
  if (!replay || !(canonical_seq(*replay) == out.s))
    throw ludics_error("impurity_witness: interaction replay mismatch");
  return out;
}

FunctionalReport check_functional(BehaviourContext& ctx, const FuncPtr& f, const Bounds& bounds) {
  FunctionalReport rep;
  BehaviourPtr b = compile_functype(ctx, f, bounds.level);
  rep.regular = check_regular(ctx, b, bounds);
  rep.quasi_pure = check_quasi_pure(ctx, b, bounds);
  rep.pure = check_pure(ctx, b, bounds);
  rep.criterion_impure = impurity_criterion(f).has_value();
  rep.consistent = rep.criterion_impure == !rep.pure.holds;
  return rep;
}

}  // namespace ludics
