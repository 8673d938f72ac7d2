#include <doctest.h>

#include "ludics/behaviour.hpp"
#include "ludics/datatypes.hpp"
#include "ludics/parser.hpp"

using namespace ludics;

namespace {
BehaviourContext data_ctx() {
  Signature sig;
  for (const Name& n : {"b", "n", "l", "t", "u"}) sig.declare(n, 0);
  return BehaviourContext(sig);
}
}  // namespace

TEST_CASE("pattern parsing and printing") {
  PatternPtr boolp = parse_pattern("b (+) b");
  CHECK(render_pattern(boolp) == "(b (+) b)");
  PatternPtr natp = parse_pattern("mu X. (n (+) X)");
  CHECK(render_pattern(natp) == "(mu X. (n (+) X))");
  PatternPtr listp = parse_pattern("mu X. (l (+) (b (*) X))");
  CHECK(render_pattern(listp) == render_pattern(list_pattern("b")));
  CHECK_THROWS(parse_pattern("val"));  // reserved name
  CHECK_THROWS(parse_pattern("(+) b"));
  CHECK(pattern_free_vars(parse_pattern("n (+) X")) == std::set<Var>{"X"});
}

TEST_CASE("steadiness is the syntactic sufficient check") {
  CHECK(is_steady(parse_pattern("b")));
  CHECK(is_steady(nat_pattern()));
  CHECK(is_steady(list_pattern("b")));
  CHECK(is_steady(tree_pattern("b")));
  CHECK(is_steady(parse_pattern("n (+) X")));  // variable on the impure side
  CHECK_FALSE(is_steady(parse_pattern("mu X. (b (*) X)")));  // no base case
  CHECK_FALSE(is_steady(parse_pattern("mu X. X")));
  CHECK_FALSE(is_steady(parse_pattern("X")));
}

TEST_CASE("interpretation of patterns") {
  BehaviourContext ctx = data_ctx();
  Bounds bounds;
  BehaviourPtr b = interpret_pattern(parse_pattern("b"), {}, 3);
  CHECK(render_behaviour(b) == "Cb");
  BehaviourPtr boolb = interpret_pattern(bool_pattern(), {}, 3);
  CHECK(incarnation(ctx, boolb, bounds).designs.size() == 5);
  CHECK_THROWS(interpret_pattern(parse_pattern("X"), {}, 3));
}

TEST_CASE("Nat incarnation sizes follow the 3k plus 1 recurrence") {
  BehaviourContext ctx = data_ctx();
  Bounds bounds;
  for (int k = 0; k <= 3; ++k) {
    BehaviourPtr nk = interpret_pattern(nat_pattern(), {}, k);
    CHECK(incarnation(ctx, nk, bounds).designs.size() == (size_t)(3 * k + 1));
  }
}

TEST_CASE("kleene monotone report") {
  BehaviourContext ctx = data_ctx();
  Bounds bounds;
  MonotoneReport nat = kleene_monotone_report(ctx, nat_pattern(), {}, 3, bounds);
  CHECK(nat.holds);
  CHECK(nat.incarnation_sizes == std::vector<size_t>{1, 4, 7, 10});

  MonotoneReport boolr = kleene_monotone_report(ctx, bool_pattern(), {}, 2, bounds);
  CHECK(boolr.holds);
  CHECK(boolr.incarnation_sizes == std::vector<size_t>{5, 5, 5});

  Bounds tb = bounds;
  tb.max_len = 12;
  MonotoneReport tree = kleene_monotone_report(ctx, tree_pattern("b"), {}, 2, tb);
  CHECK(tree.holds);
}

TEST_CASE("encoders and membership levels") {
  BehaviourContext ctx = data_ctx();
  Bounds bounds;
  CHECK(render_design(encode_nat(0)) == "x0|p1<val(b0).(b0|n<>)>");
  DesignPtr two = encode_nat(2);
  for (int k = 0; k <= 6; ++k) CHECK(decode_nat(encode_nat(k)) == k);
  CHECK_FALSE(decode_nat(encode_bool(true)).has_value());

  BehaviourPtr nat1 = interpret_pattern(nat_pattern(), {}, 1);
  BehaviourPtr nat2 = interpret_pattern(nat_pattern(), {}, 2);
  BehaviourPtr nat3 = interpret_pattern(nat_pattern(), {}, 3);
  Bounds b1 = bounds; b1.level = 1;
  Bounds b2 = bounds; b2.level = 2;
  Bounds b3 = bounds; b3.level = 3;
  CHECK(member(ctx, encode_nat(0), nat1, b1));
  CHECK_FALSE(member(ctx, encode_nat(1), nat1, b1));
  CHECK(member(ctx, encode_nat(1), nat2, b2));
  CHECK_FALSE(member(ctx, encode_nat(2), nat2, b2));
  CHECK(member(ctx, encode_nat(2), nat3, b3));

  CHECK(member(ctx, encode_bool(true), interpret_pattern(bool_pattern(), {}, 1), b1));
  CHECK(member(ctx, encode_list({pos_app(kX0, "b", {})}),
               interpret_pattern(list_pattern("b"), {}, 2), b2));
}

TEST_CASE("basis of steady patterns") {
  BehaviourContext ctx = data_ctx();
  Bounds bounds;
  CHECK(render_behaviour(basis(parse_pattern("b"))) == "Cb");
  CHECK_THROWS(basis(parse_pattern("mu X. X")));

  BehaviourPtr nb = basis(nat_pattern());
  auto inc = incarnation(ctx, nb, bounds);
  REQUIRE(inc.designs.size() == 3);  // daimon, zero with a daimon stub, zero
  CHECK(render_design(inc.designs[0]) == "#");
  CHECK(render_design(inc.designs[1]) == "x0|p1<val(b0).#>");
  CHECK(render_design(inc.designs[2]) == "x0|p1<val(b0).(b0|n<>)>");

  // basis designs are members of every level from one up
  for (int k = 1; k <= 3; ++k) {
    Bounds bk = bounds;
    bk.level = k;
    BehaviourPtr nk = interpret_pattern(nat_pattern(), {}, k);
    for (const auto& d : inc.designs) CHECK(member(ctx, d, nk, bk));
  }

  // maximal daimon-free visitable paths of the basis stay maximal in Nat
  PathSet vb = visitable_paths(ctx, nb, bounds);
  for (const auto& s : vb) {
    if (s.empty() || s.actions.back().kind == ActKind::Daimon) continue;
    bool extended = false;
    for (const auto& t : vb)
      if (t.size() > s.size() && t.prefix(s.size()) == s) extended = true;
    if (extended) continue;
    // s is maximal daimon-free in the basis; it must stay maximal at levels 1..3
    for (int k = 1; k <= 3; ++k) {
      Bounds bk = bounds;
      bk.level = k;
      BehaviourPtr nk = interpret_pattern(nat_pattern(), {}, k);
      CHECK(visitable_contains(ctx, nk, s, bk));
      CHECK_FALSE(extension_exists(ctx, nk, s, bk));
    }
  }
}

TEST_CASE("basis sandwich at each level") {
  BehaviourContext ctx = data_ctx();
  Bounds bounds;
  // |phi^n(daimon)| included in |phi^n(basis)| included in |phi^{n+1}(daimon)|
  PatternPtr body = pplus(pname("n"), pvar("X"));  // Nat body
  BehaviourPtr base = basis(nat_pattern());
  auto inc_set = [&](const BehaviourPtr& b) {
    auto v = incarnation(ctx, b, bounds).designs;
    return DesignSet(v.begin(), v.end());
  };
  BehaviourPtr cur_dai = daimon_behaviour();
  BehaviourPtr cur_bas = base;
  for (int n = 0; n < 2; ++n) {
    cur_dai = interpret_pattern(body, {{"X", cur_dai}}, 3);
    cur_bas = interpret_pattern(body, {{"X", cur_bas}}, 3);
  }
  BehaviourPtr next_dai = interpret_pattern(body, {{"X", cur_dai}}, 3);
  DesignSet d2 = inc_set(cur_dai), b2 = inc_set(cur_bas), d3 = inc_set(next_dai);
  for (const auto& d : d2) CHECK(b2.count(d));
  for (const auto& d : b2) CHECK(d3.count(d));
}

TEST_CASE("interpret commutes with environment extension on closed subpatterns") {
  BehaviourContext ctx = data_ctx();
  Bounds bounds;
  // (b (+) X) with X bound to Bool equals substituting Bool in the tree
  PatternPtr open = pplus(pname("b"), pvar("X"));
  BehaviourPtr boolb = interpret_pattern(bool_pattern(), {}, 2);
  BehaviourPtr via_env = interpret_pattern(open, {{"X", boolb}}, 2);
  BehaviourPtr direct = plus_pos(const_behaviour("b"), boolb);
  CHECK(render_behaviour(via_env) == render_behaviour(direct));
  CHECK(incarnation(ctx, via_env, bounds).designs ==
        incarnation(ctx, direct, bounds).designs);
}
