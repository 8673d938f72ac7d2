#include <doctest.h>

#include "ludics/functional.hpp"
#include "ludics/locate.hpp"
#include "ludics/multidesign.hpp"

using namespace ludics;

namespace {
BehaviourContext func_ctx() {
  Signature sig;
  sig.declare("u", 0);
  sig.declare("b", 0);
  sig.declare("n", 0);
  sig.declare("l", 0);
  sig.declare("t", 0);
  return BehaviourContext(sig);
}

FuncPtr one() { return fdata(pname("u")); }
FuncPtr bool_u() { return fplus(one(), one()); }
}  // namespace

TEST_CASE("functional type parsing") {
  FuncPtr f = parse_functype("(Bool -o Bool) -o Bool");
  CHECK(render_functype(f) == "(((b (+) b) -o (b (+) b)) -o (b (+) b))");
  FuncPtr g = parse_functype("1 -o 1 -o 1");  // right associative
  CHECK(render_functype(g) == "(u -o (u -o u))");
  CHECK_THROWS(parse_functype("mu X. X"));
  CHECK_THROWS(fdata(parse_pattern("mu X. (b (*) X)")));  // not steady
}

TEST_CASE("impurity criterion") {
  CHECK_FALSE(impurity_criterion(one()).has_value());
  CHECK_FALSE(impurity_criterion(bool_u()).has_value());
  CHECK_FALSE(impurity_criterion(flimp(bool_u(), bool_u())).has_value());
  // constants on the right keep arrows pure
  CHECK_FALSE(impurity_criterion(flimp(flimp(bool_u(), bool_u()), one())).has_value());

  auto dec = impurity_criterion(flimp(flimp(bool_u(), bool_u()), bool_u()));
  REQUIRE(dec.has_value());
  CHECK(dec->c1.empty());
  CHECK(dec->c2.empty());
  CHECK(render_functype(dec->q1) == render_functype(bool_u()));
  CHECK(render_functype(dec->r) == render_functype(bool_u()));

  // the hole may not cross to the left of an arrow: an impure argument type
  // does not by itself make the whole type impure
  FuncPtr impure_arg = flimp(flimp(flimp(one(), one()), bool_u()), one());
  CHECK_FALSE(impurity_criterion(impure_arg).has_value());

  // lifting through tensor and plus contexts
  CHECK(impurity_criterion(ftensor(bool_u(), flimp(flimp(one(), one()), bool_u()))).has_value());
  CHECK(impurity_criterion(fplus(flimp(flimp(one(), one()), bool_u()), one())).has_value());
  // and through the right of an arrow
  CHECK(impurity_criterion(flimp(one(), flimp(flimp(one(), one()), bool_u()))).has_value());
}

TEST_CASE("functional behaviours are regular and quasi-pure; purity per criterion") {
  BehaviourContext ctx = func_ctx();
  Bounds bounds;
  bounds.max_len = 20;

  FuncPtr simple = flimp(bool_u(), bool_u());
  FunctionalReport rep = check_functional(ctx, simple, bounds);
  CHECK(rep.regular.holds);
  CHECK(rep.quasi_pure.holds);
  CHECK(rep.pure.holds);
  CHECK_FALSE(rep.criterion_impure);
  CHECK(rep.consistent);

  FuncPtr higher = flimp(flimp(one(), one()), bool_u());
  FunctionalReport rep2 = check_functional(ctx, higher, bounds);
  CHECK(rep2.quasi_pure.holds);
  CHECK_FALSE(rep2.pure.holds);
  CHECK(rep2.criterion_impure);
  CHECK(rep2.consistent);

  FuncPtr const_right = flimp(flimp(one(), one()), one());
  FunctionalReport rep3 = check_functional(ctx, const_right, bounds);
  CHECK(rep3.pure.holds);
  CHECK_FALSE(rep3.criterion_impure);
  CHECK(rep3.consistent);
}

TEST_CASE("Nat to Bool is pure") {
  BehaviourContext ctx = func_ctx();
  Bounds bounds;
  bounds.level = 2;
  bounds.max_len = 18;
  FuncPtr f = flimp(fdata(nat_pattern()), fdata(bool_pattern()));
  CHECK_FALSE(impurity_criterion(f).has_value());
  BehaviourPtr b = compile_functype(ctx, f, bounds.level);
  CHECK(check_pure(ctx, b, bounds).holds);
}

TEST_CASE("the eleven-action witness of Example-style impurity") {
  BehaviourContext ctx = func_ctx();
  Bounds bounds;
  bounds.max_len = 20;
  FuncPtr f = flimp(flimp(one(), one()), bool_u());
  ImpurityWitness w = impurity_witness(ctx, f, bounds, /*minimize_p=*/true);
  CHECK(w.s.size() == 11);
  CHECK(w.s.actions.back().kind == ActKind::Daimon);
  CHECK_FALSE(is_well_bracketed(w.s));
  CHECK(action_count(w.p) == 11);
  CHECK(is_path_of(w.s, w.p));
  CHECK(is_path_of(dual(w.s), w.n));
  auto replay = interaction_path(w.p, w.n);
  REQUIRE(replay.has_value());
  CHECK(canonical_seq(*replay) == w.s);
}

TEST_CASE("witnesses survive lifting through contexts") {
  BehaviourContext ctx = func_ctx();
  Bounds bounds;
  bounds.max_len = 26;
  FuncPtr inner = flimp(flimp(one(), one()), bool_u());
  for (const FuncPtr& f : {ftensor(bool_u(), inner), fplus(inner, one()),
                           flimp(one(), inner)}) {
    CAPTURE(render_functype(f));
    ImpurityWitness w = impurity_witness(ctx, f, bounds);
    CHECK(w.s.actions.back().kind == ActKind::Daimon);
    CHECK_FALSE(is_well_bracketed(w.s));
    auto replay = interaction_path(w.p, w.n);
    REQUIRE(replay.has_value());
    CHECK(canonical_seq(*replay) == w.s);
  }
}

TEST_CASE("witness for a context-2 tensor wrapping") {
  BehaviourContext ctx = func_ctx();
  Bounds bounds;
  bounds.max_len = 26;
  // ((1 -o 1) (*) Bool) -o Bool : the arrow sits under a tensor inside the
  // argument of the outer arrow
  FuncPtr f = flimp(ftensor(flimp(one(), one()), bool_u()), bool_u());
  REQUIRE(impurity_criterion(f).has_value());
  ImpurityWitness w = impurity_witness(ctx, f, bounds);
  CHECK_FALSE(is_well_bracketed(w.s));
  auto replay = interaction_path(w.p, w.n);
  REQUIRE(replay.has_value());
  CHECK(canonical_seq(*replay) == w.s);
}
