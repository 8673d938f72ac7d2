#include <doctest.h>

#include "ludics/completion.hpp"
#include "ludics/locate.hpp"
#include "ludics/multidesign.hpp"
#include "ludics/parser.hpp"
#include "ludics/random.hpp"
#include "ludics/reduction.hpp"
#include "ludics/shuffle.hpp"

using namespace ludics;

namespace {

Signature fig1_signature() {
  Signature sig;
  sig.declare("a", 2);
  sig.declare("b", 2);
  sig.declare("c", 1);
  sig.declare("d", 0);
  return sig;
}

// The running example design: a(x1,x2).(x2|b<a(x3,x4).# + c(y1).(y1|d<>), c(y2).(x1|d<>)>)
DesignPtr fig1_design(const Signature& sig) {
  return parse_design("a(x1,x2).(x2|b<a(x3,x4).# + c(y1).(y1|d<>), c(y2).(x1|d<>)>)", sig);
}

}  // namespace

TEST_CASE("locate builds the expected tree") {
  Signature sig = fig1_signature();
  LocForest f = locate(fig1_design(sig));
  REQUIRE(f.roots.size() == 1);
  const LocNode& root = f.nodes[f.roots[0]];
  CHECK(root.act.kind == ActKind::Neg);
  CHECK(root.act.name == "a");
  CHECK(root.act.address == kX0);
  REQUIRE(root.children.size() == 1);
  const LocNode& bnode = f.nodes[root.children[0]];
  CHECK(bnode.act.kind == ActKind::Pos);
  CHECK(bnode.act.name == "b");
  // three negative actions above it: a and c on the first address, c on the second
  CHECK(bnode.children.size() == 3);
  // forests: one tree per non-Omega root branch
  LocForest f2 = locate(parse_design("a(x,y).# + c(z).#", sig));
  CHECK(f2.roots.size() == 2);
  LocForest f3 = locate(parse_design("#", sig));
  CHECK(f3.roots.size() == 1);
  CHECK(f3.nodes[f3.roots[0]].act.kind == ActKind::Daimon);
}

TEST_CASE("views and duals") {
  // dual of daimon strips; dual of a proper-ended path appends the daimon
  AjSeq dai;
  dai.push(daimon_action());
  CHECK(dual(dai).empty());

  AjSeq s;
  s.push(pos_action(kX0, "b", {}));
  AjSeq ds = dual(s);
  REQUIRE(ds.size() == 2);
  CHECK(ds[0].kind == ActKind::Neg);
  CHECK(ds[1].kind == ActKind::Daimon);

  CHECK(view_of(AjSeq{}).empty());
  AjSeq neg;
  neg.push(neg_action(kX0, "c", {"y"}));
  CHECK(view_of(neg) == neg);
}

TEST_CASE("the red path of the example design") {
  Signature sig = fig1_signature();
  DesignPtr d = fig1_design(sig);
  // a_x0(x1,x2) x2|b<z1,z2> c_z1(y1) y1|d<> c_z2(y2) x1|d<>
  AjSeq red;
  red.push(neg_action(kX0, "a", {"x1", "x2"}));
  red.push(pos_action("x2", "b", {"z1", "z2"}));
  red.push(neg_action("z1", "c", {"y1"}));
  red.push(pos_action("y1", "d", {}));
  red.push(neg_action("z2", "c", {"y2"}));
  red.push(pos_action("x1", "d", {}));
  CHECK(is_path(red));
  CHECK(is_path_of(red, d));

  // the view of the path after its last action is the branch to that node:
  // a_x0(x1,x2) x2|b<z1,z2> c_z2(y2) x1|d<>
  View v = view_of(red);
  CHECK(v.size() == 4);
  CHECK(v[0].name == "a");
  CHECK(v[1].name == "b");
  CHECK(v[2].name == "c");
  CHECK(v[2].address == "z2");
  CHECK(v[3].name == "d");

  // a violating interleaving: swapping the justifier order breaks visibility
  AjSeq bad;
  bad.push(neg_action(kX0, "a", {"x1", "x2"}));
  bad.push(pos_action("x1", "d", {}));
  bad.push(neg_action("z1", "c", {"y1"}));
  CHECK_FALSE(is_path(bad));

  // every view of the design is one of its paths
  for (const auto& view : views_of_design(locate(d))) {
    if (view.empty() || view.actions.back().polarity() != Polarity::Positive) continue;
    CHECK(is_path_of(view, d));
  }
}

TEST_CASE("paths_of matches the brute-force oracle") {
  Signature sig = fig1_signature();
  DesignPtr d = fig1_design(sig);
  PathSet fast = paths_of(d, 12);
  PathSet slow = paths_of_bruteforce(d, 12);
  CHECK(fast == slow);
  CHECK(fast.count(canonical_seq([&] {
    AjSeq red;
    red.push(neg_action(kX0, "a", {"x1", "x2"}));
    red.push(pos_action("x2", "b", {"z1", "z2"}));
    red.push(neg_action("z1", "c", {"y1"}));
    red.push(pos_action("y1", "d", {}));
    red.push(neg_action("z2", "c", {"y2"}));
    red.push(pos_action("x1", "d", {}));
    return red;
  }())));

  DesignGen gen(sig, 5);
  int done = 0;
  for (int i = 0; i < 200 && done < 40; ++i) {
    DesignPtr r = gen.coin(0.5) ? gen.positive(3) : gen.negative(3);
    if (action_count(r) > 8) continue;
    ++done;
    CHECK(paths_of(r, 8) == paths_of_bruteforce(r, 8));
  }
  CHECK(done == 40);
}

TEST_CASE("duality is involutive and anti-views match the dual route") {
  Signature sig = fig1_signature();
  DesignGen gen(sig, 9);
  int paths_seen = 0;
  for (int i = 0; i < 60 && paths_seen < 100; ++i) {
    DesignPtr d = gen.coin(0.5) ? gen.positive(4) : gen.negative(4);
    for (const auto& s : paths_of(d, 10)) {
      if (s.empty()) continue;
      ++paths_seen;
      CHECK(dual(dual(s)) == s);
      CHECK(is_path(dual(s)));
      for (size_t k = 1; k <= s.size(); ++k) {
        AjSeq pre = s.prefix(k);
        CHECK(anti_view_of(pre) == dual(view_of(dual(pre))));
      }
    }
  }
  CHECK(paths_seen >= 100);
}

TEST_CASE("interaction path agrees with orthogonality") {
  Signature sig = fig1_signature();
  DesignGen gen(sig, 13);
  int done = 0;
  for (int i = 0; i < 400 && done < 200; ++i) {
    DesignPtr p = gen.positive(3);
    DesignPtr n;
    if (gen.coin(0.5)) {
      PathSet ps = paths_of(p, 10);
      std::vector<AjSeq> candidates;
      for (const auto& s : ps)
        if (!s.empty()) candidates.push_back(s);
      if (candidates.empty()) continue;
      n = completion(dual(candidates[gen.pick((int)candidates.size())]), sig);
    } else {
      n = gen.negative(3);
    }
    ++done;
    bool ortho = is_orthogonal(p, n);
    auto path = interaction_path(p, n);
    CHECK(ortho == path.has_value());
    if (path) {
      CHECK(is_path_of(*path, p));
      CHECK(is_path_of(dual(*path), n));
    }
  }
  CHECK(done == 200);
}

TEST_CASE("trivial views") {
  CHECK(trivial_view_of(AjSeq{}).empty());

  AjSeq s;
  s.push(neg_action(kX0, "a", {"x1", "x2"}));
  s.push(pos_action("x2", "b", {"z1", "z2"}));
  s.push(neg_action("z1", "c", {"y1"}));
  s.push(pos_action("x1", "d", {}));  // justified by the first action
  AjSeq t = trivial_view_of(s);
  REQUIRE(t.size() == 2);  // jumps over b and c straight to a's binder
  CHECK(t[0].name == "a");
  CHECK(t[1].name == "d");

  AjSeq sd = s;
  sd.actions.pop_back();
  sd.push(daimon_action());
  AjSeq td = trivial_view_of(sd);
  CHECK(td.actions.back().kind == ActKind::Daimon);

  // a trivial view is a view whose dual is a view
  Signature sig = fig1_signature();
  DesignGen gen(sig, 21);
  for (int i = 0; i < 30; ++i) {
    DesignPtr d = gen.coin(0.5) ? gen.positive(4) : gen.negative(4);
    for (const auto& p : paths_of(d, 8)) {
      if (p.empty()) continue;
      AjSeq tv = trivial_view_of(p);
      CHECK(is_trivial_view(tv));
      CHECK(is_view(tv));
      CHECK(is_view(dual(tv).actions.back().kind == ActKind::Daimon && !p.actions.back().proper()
                        ? dual(tv)
                        : dual(tv)));
    }
  }
}

TEST_CASE("completion of the worked example") {
  Signature sig;
  sig.declare("a", 2);
  sig.declare("b", 1);
  sig.declare("c", 0);
  sig.declare("e", 0);
  // s = x0|a<x1,x2>  b_x1(y)  y|e<>  c_x2()  daimon
  AjSeq s;
  s.push(pos_action(kX0, "a", {"x1", "x2"}));
  s.push(neg_action("x1", "b", {"y"}));
  s.push(pos_action("y", "e", {}));
  s.push(neg_action("x2", "c", {}));
  s.push(daimon_action());
  REQUIRE(is_path(s));
  DesignPtr comp = completion(s, sig);
  // first argument: b(y).(y|e<>) plus daimon bodies for every other name;
  // second argument: all-daimon sum.
  const auto& app = std::get<PosApp>(comp->node);
  REQUIRE(app.args.size() == 2);
  const auto& left = std::get<NegSum>(app.args[0]->node);
  CHECK(left.branches.size() == sig.names().size());
  CHECK(render_design(left.branches.at("b").body) ==
        std::string(left.branches.at("b").binders[0] + "|e<>"));
  for (const auto& [name, br] : left.branches)
    if (name != "b") CHECK(is_daimon(br.body));
  const auto& right = std::get<NegSum>(app.args[1]->node);
  CHECK(right.branches.size() == sig.names().size());
  for (const auto& [name, br] : right.branches) CHECK(is_daimon(br.body));

  // the path is a path of its completion, and the skeleton is below it
  CHECK(is_path_of(s, comp));
  DesignPtr sk = skeleton(s, sig);
  CHECK(is_path_of(s, sk));
  CHECK(stable_leq(sk, comp));
  CHECK(obs_leq(sk, comp));
}

TEST_CASE("completion simple cases") {
  Signature sig;
  sig.declare("b", 0);
  AjSeq dai;
  dai.push(daimon_action());
  CHECK(is_daimon(completion(dai, sig)));

  AjSeq pb;
  pb.push(pos_action(kX0, "b", {}));
  CHECK(render_design(completion(pb, sig)) == "x0|b<>");
}

TEST_CASE("completion is maximal for the observational order") {
  Signature sig = fig1_signature();
  DesignGen gen(sig, 37);
  int done = 0;
  for (int i = 0; i < 40 && done < 60; ++i) {
    DesignPtr d = gen.coin(0.5) ? gen.positive(3) : gen.negative(3);
    for (const auto& s : paths_of(d, 8)) {
      if (s.empty()) continue;
      ++done;
      DesignPtr comp = completion(s, sig);
      CHECK(is_path_of(s, comp));
      CHECK(obs_leq(d, comp));  // any design admitting s sits below its completion
    }
  }
  CHECK(done >= 60);
}

TEST_CASE("shuffles") {
  // negative paths over disjoint addresses interleave freely modulo paths
  AjSeq s, t;
  s.push(neg_action("x", "a", {"u1", "u2"}));
  s.push(pos_action("u1", "d", {}));
  t.push(neg_action("y", "c", {"w"}));
  t.push(pos_action("w", "d", {}));
  auto r = shuffle(s, t, 10);
  REQUIRE(r.has_value());
  // interleavings keeping alternation: st, ts
  CHECK(r->size() == 2);
  for (const auto& u : *r) {
    CHECK(u.size() == 4);
    CHECK(is_path(u));
  }

  // shuffle with the empty path is the identity on negative paths
  auto rid = shuffle(s, AjSeq{}, 10);
  REQUIRE(rid.has_value());
  CHECK(rid->size() == 1);
  CHECK(*rid->begin() == canonical_seq(s));

  // positive case requires a shared first action
  AjSeq p1, p2;
  p1.push(pos_action(kX0, "d", {}));
  p2.push(pos_action(kX0, "b", {"z1", "z2"}));
  CHECK_FALSE(shuffle(p1, p2, 10).has_value());
  auto same = shuffle(p1, p1, 10);
  REQUIRE(same.has_value());
  CHECK(same->size() == 1);

  // anti-shuffle is the dual operation
  auto as = anti_shuffle(dual(s), dual(t), 12);
  REQUIRE(as.has_value());
  PathSet expect;
  for (const auto& u : *r) expect.insert(canonical_seq(dual(u)));
  CHECK(*as == expect);
}

TEST_CASE("paths lie in the shuffle of views; views in the anti-shuffle of trivial views") {
  Signature sig = fig1_signature();
  DesignGen gen(sig, 41);
  int checked = 0;
  for (int i = 0; i < 30 && checked < 25; ++i) {
    DesignPtr d = gen.coin(0.5) ? gen.positive(3) : gen.negative(3);
    PathSet all = paths_of(d, 8);
    std::vector<AjSeq> views;
    for (const auto& v : views_of_design(locate(d))) {
      if (v.empty() || v.actions.back().polarity() != Polarity::Positive) continue;
      views.push_back(canonical_seq(v));
    }
    for (const auto& s : all) {
      if (s.empty() || s.size() < 3) continue;
      ++checked;
      // find views whose iterated shuffle reaches s
      PathSet acc;
      for (const auto& v : views) acc.insert(v);
      bool found = acc.count(s) > 0;
      for (int round = 0; round < 2 && !found; ++round) {
        PathSet next = set_shuffle(acc, acc, s.size());
        acc.insert(next.begin(), next.end());
        found = acc.count(s) > 0;
      }
      CHECK(found);
    }
  }
  CHECK(checked >= 25);
}

TEST_CASE("well-bracketing") {
  AjSeq dai;
  dai.push(daimon_action());
  CHECK(is_well_bracketed(dai));

  // any view is well-bracketed
  AjSeq v;
  v.push(neg_action(kX0, "a", {"x1", "x2"}));
  v.push(pos_action("x2", "b", {"z1", "z2"}));
  v.push(neg_action("z1", "c", {"y1"}));
  v.push(pos_action("y1", "d", {}));
  CHECK(is_well_bracketed(v));

  // the red path stays hereditarily under the root, so it brackets fine
  AjSeq red;
  red.push(neg_action(kX0, "a", {"x1", "x2"}));
  red.push(pos_action("x2", "b", {"z1", "z2"}));
  red.push(neg_action("z1", "c", {"y1"}));
  red.push(pos_action("y1", "d", {}));
  red.push(neg_action("z2", "c", {"y2"}));
  red.push(pos_action("x1", "d", {}));
  CHECK(is_well_bracketed(red));

  // answering a pending question after starting an unrelated thread breaks
  // the bracketing: action 5 sits between action 7 and its justifier 4 but
  // hangs under action 2.
  AjSeq jump;
  jump.push(pos_action(kX0, kShiftName, {"p"}));
  jump.push(neg_action("p", kTensorName, {"q", "r"}));
  jump.push(pos_action("q", kShiftName, {"s"}));
  jump.push(neg_action("s", kShiftName, {"t"}));
  jump.push(pos_action("r", "d1", {"m"}));
  jump.push(neg_action("m", "g", {}));
  jump.push(pos_action("t", "e", {}));
  REQUIRE(is_path(jump));
  CHECK_FALSE(is_well_bracketed(jump));
}
