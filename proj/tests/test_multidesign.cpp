#include <doctest.h>

#include "ludics/multidesign.hpp"
#include "ludics/parser.hpp"
#include "ludics/random.hpp"

using namespace ludics;

namespace {
Signature sig_abcd() {
  Signature sig;
  sig.declare("a", 2);
  sig.declare("b", 0);
  sig.declare("c", 1);
  sig.declare("d", 0);
  return sig;
}
}  // namespace

TEST_CASE("compatibility cases") {
  Signature sig = sig_abcd();
  MultiDesign D = MultiDesign::of_positive(parse_design("x|b<>", sig, false));
  MultiDesign E = MultiDesign::of_negative(parse_design("b().#", sig), "x");
  CHECK(compatible(D, E) == Compat::ClosedCompatible);

  MultiDesign P1 = MultiDesign::of_positive(parse_design("#", sig));
  MultiDesign P2 = MultiDesign::of_positive(parse_design("#", sig));
  CHECK(compatible(P1, P2) == Compat::Incompatible);

  MultiDesign N1 = MultiDesign::of_negative(parse_design("b().#", sig), "x");
  MultiDesign N2 = MultiDesign::of_negative(parse_design("c(z).#", sig), "y");
  CHECK(compatible(N1, N2) == Compat::Compatible);  // both places spare
}

TEST_CASE("cut base cases") {
  Signature sig = sig_abcd();
  MultiDesign D = MultiDesign::of_positive(parse_design("x0|b<>", sig));
  MultiDesign empty;
  MultiDesign r1 = cut(D, empty);
  CHECK(r1.positive.has_value());
  CHECK(alpha_eq(*r1.positive, *D.positive));

  MultiDesign E = MultiDesign::of_negative(parse_design("b().#", sig));
  MultiDesign r2 = cut(D, E);
  REQUIRE(r2.positive.has_value());
  CHECK(r2.negatives.empty());
  CHECK(render_design(*r2.positive) == "[b().#]|b<>");
  CHECK(is_daimon(normalize(*r2.positive).result));
}

TEST_CASE("mlud parsing") {
  Signature sig = sig_abcd();
  MultiDesign m = parse_multidesign("x := b().#\npos := y|b<> -- comment\n", sig);
  CHECK(m.negatives.size() == 1);
  CHECK(m.positive.has_value());
  CHECK_THROWS(parse_multidesign("x := #\n", sig));       // positive at a place
  CHECK_THROWS(parse_multidesign("x := b().#\npos := x|b<>\n", sig));  // fv meets np
}

TEST_CASE("interaction sequence base cases") {
  Signature sig = sig_abcd();
  MultiDesign D = MultiDesign::of_positive(parse_design("#", sig));
  MultiDesign E;
  InteractionResult r = interaction_sequence(D, E);
  CHECK(r.converged);
  REQUIRE(r.seq.size() == 1);
  CHECK(r.seq[0].kind == ActKind::Daimon);

  MultiDesign D2 = MultiDesign::of_positive(parse_design("x0|b<>", sig));
  MultiDesign E2 = MultiDesign::of_negative(parse_design("b().#", sig));
  InteractionResult r2 = interaction_sequence(D2, E2);
  CHECK(r2.converged);
  REQUIRE(r2.seq.size() == 1);  // the daimon lands on E's side
  CHECK(r2.seq[0].kind == ActKind::Pos);
  CHECK(r2.seq[0].name == "b");

  InteractionResult r3 = interaction_sequence(E2, D2);
  CHECK(r3.converged);
  REQUIRE(r3.seq.size() == 2);
  CHECK(r3.seq[1].kind == ActKind::Daimon);
  // the two sides are dual when the daimon is reached
  CHECK(canonical_seq(dual(r3.seq)) == canonical_seq(r2.seq));
}

TEST_CASE("cut commutativity and normalisation associativity on random pairs") {
  Signature sig = sig_abcd();
  DesignGen gen(sig, 51);
  auto same = [](const MultiDesign& x, const MultiDesign& y) {
    if (x.positive.has_value() != y.positive.has_value()) return false;
    if (x.positive && !alpha_eq(*x.positive, *y.positive)) return false;
    if (x.negatives.size() != y.negatives.size()) return false;
    for (const auto& [v, n] : x.negatives) {
      auto it = y.negatives.find(v);
      if (it == y.negatives.end() || !alpha_eq(n, it->second)) return false;
    }
    return true;
  };
  int done = 0;
  for (int i = 0; i < 400 && done < 100; ++i) {
    std::vector<Var> vars = {"v1", "v2", "v3"};
    DesignPtr p = gen.positive_over(vars, 3, true);
    MultiDesign D = MultiDesign::of_positive(p);
    MultiDesign E;
    for (const auto& v : vars)
      if (free_vars(p).count(v)) E.negatives.emplace(v, gen.negative(3, true));
    if (compatible(D, E) == Compat::Incompatible) continue;
    ++done;
    CHECK(same(cut(D, E), cut(E, D)));
    MultiDesign lhs = normalize_multi(cut(D, E));
    MultiDesign rhs = normalize_multi(cut(normalize_multi(D), normalize_multi(E)));
    CHECK(same(lhs, rhs));
  }
  CHECK(done == 100);
}

TEST_CASE("restriction keeps the sub-multi-design actions") {
  Signature sig = sig_abcd();
  MultiDesign D = MultiDesign::of_positive(parse_design("v1|c<{}>", sig, false));
  MultiDesign EF;
  EF.negatives.emplace("v1", parse_design("c(w).#", sig));
  InteractionResult r = interaction_sequence(EF, D);
  CHECK(r.converged);
  AjSeq all = restrict_path(r.seq, EF, EF);
  CHECK(canonical_seq(all) == canonical_seq(r.seq));
  MultiDesign none;
  CHECK(restrict_path(r.seq, EF, none).empty());
}

TEST_CASE("associativity for paths on random triples") {
  Signature sig = sig_abcd();
  DesignGen gen(sig, 77);
  int done = 0;
  for (int guard = 0; guard < 2000 && done < 60; ++guard) {
    std::vector<Var> vars;
    int places = 1 + gen.pick(3);
    for (int i = 0; i < places; ++i)
      vars.push_back("w" + std::to_string(i) + "_" + std::to_string(guard));
    DesignPtr p = gen.positive_over(vars, 3, false);
    VarSet pf = free_vars(p);
    if (pf.count(kX0)) continue;
    if (pf.empty()) continue;
    MultiDesign D = MultiDesign::of_positive(p);
    MultiDesign EF;
    for (const auto& v : pf) EF.negatives.emplace(v, gen.negative_over({}, 3, false));
    if (compatible(D, EF) != Compat::ClosedCompatible) continue;
    InteractionResult full = interaction_sequence(EF, D);
    if (!full.converged) continue;
    MultiDesign E, F;
    for (const auto& [v, n] : EF.negatives) {
      if (gen.coin(0.5)) E.negatives.emplace(v, n);
      else F.negatives.emplace(v, n);
    }
    MultiDesign cutFD = normalize_multi(cut(F, D));
    InteractionResult lhs = interaction_sequence(E, cutFD);
    AjSeq rhs = restrict_path(full.seq, EF, E);
    CHECK(canonical_seq(lhs.seq) == canonical_seq(rhs));
    ++done;
  }
  CHECK(done == 60);
}
