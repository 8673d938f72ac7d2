#include <doctest.h>

#include "ludics/behaviour.hpp"
#include "ludics/completion.hpp"
#include "ludics/datatypes.hpp"
#include "ludics/parser.hpp"
#include "ludics/reduction.hpp"
#include "ludics/shuffle.hpp"

using namespace ludics;

namespace {
BehaviourContext make_ctx() {
  Signature sig;
  sig.declare("b", 0);
  sig.declare("n", 0);
  sig.declare("u", 0);
  return BehaviourContext(sig);
}
}  // namespace

TEST_CASE("constant behaviour") {
  BehaviourContext ctx = make_ctx();
  Bounds bounds;
  CHECK_THROWS(const_behaviour(kShiftName));
  BehaviourPtr cb = const_behaviour("b");
  auto inc = incarnation(ctx, cb, bounds);
  REQUIRE(inc.designs.size() == 2);
  CHECK(render_design(inc.designs[0]) == "#");
  CHECK(render_design(inc.designs[1]) == "x0|b<>");

  PathSet v = visitable_paths(ctx, cb, bounds);
  CHECK(v.size() == 2);

  // membership is upward closed for the observational order
  CHECK(member(ctx, parse_design("#", ctx.sig()), cb, bounds));
  CHECK(member(ctx, parse_design("x0|b<>", ctx.sig()), cb, bounds));
  CHECK_FALSE(member(ctx, parse_design("x0|n<>", ctx.sig()), cb, bounds));

  CHECK(ortho_member(ctx, parse_design("b().#", ctx.sig()), cb, bounds));
  CHECK_FALSE(ortho_member(ctx, parse_design("b().(_)", ctx.sig()), cb, bounds));
  CHECK(check_regular(ctx, cb, bounds).holds);
  CHECK(check_pure(ctx, cb, bounds).holds);
}

TEST_CASE("daimon behaviour") {
  BehaviourContext ctx = make_ctx();
  Bounds bounds;
  BehaviourPtr dai = daimon_behaviour();
  auto inc = incarnation(ctx, dai, bounds);
  REQUIRE(inc.designs.size() == 1);
  CHECK(is_daimon(inc.designs[0]));
  // any negative design is an orthogonal member
  CHECK(ortho_member(ctx, omega_neg(), dai, bounds));
  // the daimon behaviour is impure: its only daimon path has no extension
  CHECK_FALSE(check_pure(ctx, dai, bounds).holds);
}

TEST_CASE("shift incarnations") {
  BehaviourContext ctx = make_ctx();
  Bounds bounds;
  BehaviourPtr cb = const_behaviour("b");
  auto dn = incarnation(ctx, down(cb), bounds);
  REQUIRE(dn.designs.size() == 2);
  CHECK(render_design(dn.designs[0]) == "val(b0).#");
  CHECK(render_design(dn.designs[1]) == "val(b0).(b0|b<>)");

  auto upd = incarnation(ctx, up(down(cb)), bounds);
  CHECK(upd.designs.size() == 3);  // daimon + the two shifted designs

  // Bool over b: five incarnated designs
  auto boolinc = incarnation(ctx, plus_pos(cb, cb), bounds);
  CHECK(boolinc.designs.size() == 5);
}

TEST_CASE("visitable paths of shifted constants") {
  BehaviourContext ctx = make_ctx();
  Bounds bounds;
  BehaviourPtr cb = const_behaviour("b");
  PathSet v = visitable_paths(ctx, up(down(cb)), bounds);
  for (const auto& s : v) CHECK(is_path(s));
  CHECK(v.count(canonical_seq([&] {
    AjSeq s;
    s.push(pos_action(kX0, kShiftName, {"s0"}));
    s.push(neg_action("s0", kShiftName, {"s1"}));
    s.push(pos_action("s1", "b", {}));
    return s;
  }())));
  // method (ii): completion-of-dual oracle agrees
  CHECK(v == visitable_paths_oracle(ctx, up(down(cb)), bounds));
  // method (iii): guided walk agrees
  CHECK(v == enumerate_visitable(ctx, up(down(cb)), bounds));
}

TEST_CASE("membership by orthogonality sweep agrees with incarnation route") {
  BehaviourContext ctx = make_ctx();
  Bounds bounds;
  BehaviourPtr cb = const_behaviour("b");
  BehaviourPtr boolb = plus_pos(cb, cb);
  // a member with padding beyond the incarnation
  DesignPtr padded = parse_design("x0|p1< val(x).(x|b<>) + p1(y).# >", ctx.sig());
  CHECK(member(ctx, padded, boolb, bounds));
  // daimon is in every positive behaviour
  CHECK(member(ctx, parse_design("#", ctx.sig()), boolb, bounds));
  // wrong head name
  CHECK_FALSE(member(ctx, parse_design("x0|b<>", ctx.sig()), boolb, bounds));

  // every visitable path's dual completion is an orthogonal member
  for (const auto& s : visitable_paths(ctx, boolb, bounds)) {
    if (s.empty()) continue;
    DesignPtr e = completion(dual(s), ctx.sig());
    CHECK(ortho_member(ctx, e, boolb, bounds));
  }
}

TEST_CASE("incarnate_design prunes unvisited branches") {
  BehaviourContext ctx = make_ctx();
  Bounds bounds;
  BehaviourPtr cb = const_behaviour("b");
  BehaviourPtr boolb = plus_pos(cb, cb);
  DesignPtr padded = parse_design("x0|p1< val(x).(x|b<>) + p1(y).# >", ctx.sig());
  DesignPtr pruned = incarnate_design(ctx, padded, boolb, bounds);
  CHECK(render_design(pruned) == "x0|p1<val(b0).(b0|b<>)>");
  // idempotent on incarnated designs, and always below the input
  for (const auto& d : incarnation(ctx, boolb, bounds).designs) {
    CHECK(alpha_eq(incarnate_design(ctx, d, boolb, bounds), d));
    CHECK(stable_leq(incarnate_design(ctx, d, boolb, bounds), d));
  }
  CHECK(stable_leq(pruned, padded));
}

TEST_CASE("tensor visitable paths and regularity") {
  BehaviourContext ctx = make_ctx();
  Bounds bounds;
  BehaviourPtr cb = const_behaviour("b");
  BehaviourPtr tb = tensor_pos(cb, cb);
  auto inc = incarnation(ctx, tb, bounds);
  CHECK(inc.designs.size() == 5);  // daimon + 2x2 component pairs

  PathSet v = visitable_paths(ctx, tb, bounds);
  CHECK(v == visitable_paths_oracle(ctx, tb, bounds));
  CHECK(v == enumerate_visitable(ctx, tb, bounds));
  CHECK(check_regular(ctx, tb, bounds).holds);
  CHECK(check_pure(ctx, tb, bounds).holds);
  CHECK(check_quasi_pure(ctx, tb, bounds).holds);
}

TEST_CASE("linear map incarnation: strategies over the unit") {
  BehaviourContext ctx = make_ctx();
  Bounds bounds;
  BehaviourPtr cu = const_behaviour("u");
  BehaviourPtr arrow = limp(down(cu), cu);
  auto inc = incarnation(ctx, arrow, bounds);
  CHECK(inc.designs.size() >= 3);
  // each strategy is orthogonal to every test of the arrow behaviour
  auto tests = co_incarnation(ctx, arrow, bounds);
  CHECK(!tests.empty());
  for (const auto& d : inc.designs) {
    CHECK(d->polarity() == Polarity::Negative);
    for (const auto& t : tests) CHECK(is_orthogonal(t, d, bounds.fuel));
  }

  CHECK(check_regular(ctx, arrow, bounds).holds);
  PathSet v = visitable_paths(ctx, arrow, bounds);
  CHECK(v == enumerate_visitable(ctx, arrow, bounds));
  CHECK(v == visitable_paths_oracle(ctx, arrow, bounds));
}

TEST_CASE("duals of visitable paths") {
  BehaviourContext ctx = make_ctx();
  Bounds bounds;
  BehaviourPtr cb = const_behaviour("b");
  BehaviourPtr boolb = plus_pos(cb, cb);
  PathSet v = visitable_paths(ctx, boolb, bounds);
  PathSet vd = dual_paths(v);
  for (const auto& s : vd) CHECK(is_path(s));
  CHECK(dual_paths(vd) == v);
}

TEST_CASE("behaviour expression parser") {
  BehaviourContext ctx = make_ctx();
  BehaviourPtr b1 = parse_behaviour("Cb", ctx, 3);
  CHECK(render_behaviour(b1) == "Cb");
  BehaviourPtr b2 = parse_behaviour("b (+) b", ctx, 3);
  CHECK(beh_polarity(b2) == Polarity::Positive);
  BehaviourPtr b3 = parse_behaviour("down(Cb) -o Cb", ctx, 3);
  CHECK(beh_polarity(b3) == Polarity::Negative);
  BehaviourPtr b4 = parse_behaviour("mu X. (n (+) X)", ctx, 2);
  CHECK(beh_polarity(b4) == Polarity::Positive);
  CHECK_THROWS(parse_behaviour("up(Cb)", ctx, 3));  // up needs a negative
}
