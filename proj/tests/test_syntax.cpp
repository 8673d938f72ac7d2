#include <doctest.h>

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

TEST_CASE("parse daimon and omega literals") {
  Signature sig = sig_abcd();
  CHECK(is_daimon(parse_design("#", sig)));
  CHECK(is_omega(parse_design("_", sig)));
  CHECK(is_neg(parse_design("{}", sig)));
  CHECK(std::get<NegSum>(parse_design("{}", sig)->node).branches.empty());
}

TEST_CASE("parse application and sums") {
  Signature sig = sig_abcd();
  DesignPtr d = parse_design("x0 | b<>", sig);
  const auto& app = std::get<PosApp>(d->node);
  CHECK(app.head == "x0");
  CHECK(app.name == "b");
  CHECK(app.args.empty());

  Signature sig2 = sig_abcd();
  sig2.declare("bb", 2);
  DesignPtr e = parse_design("a(x1,x2).(x2 | bb<{}, c(y).(y|d<>)>)", sig2);
  const auto& sum = std::get<NegSum>(e->node);
  REQUIRE(sum.branches.count("a"));
  const auto& body = std::get<PosApp>(sum.branches.at("a").body->node);
  CHECK(body.head == "x2");
  CHECK(body.args.size() == 2);
}

TEST_CASE("signature errors") {
  Signature sig = sig_abcd();
  CHECK_THROWS(parse_design("x0 | e<>", sig));          // undeclared
  CHECK_THROWS(parse_design("x0 | b<{}>", sig));        // arity
  CHECK_THROWS(parse_design("b(x0).#", sig));           // binding x0
  CHECK_THROWS(parse_design("x0|a<c(y).(x0|d<>), {}>", sig));  // non-linear
  CHECK_NOTHROW(parse_design("x0|a<c(y).(x0|d<>), {}>", sig, false));
}

TEST_CASE("free variables") {
  Signature sig = sig_abcd();
  CHECK(free_vars(parse_design("#", sig)).empty());
  CHECK(free_vars(parse_design("x0|b<>", sig)) == VarSet{"x0"});
  CHECK(free_vars(parse_design("c(x).(y|b<>)", sig, false)) == VarSet{"y"});
}

TEST_CASE("substitute daimon and head variable") {
  Signature sig = sig_abcd();
  DesignPtr dai = parse_design("#", sig);
  DesignPtr n = parse_design("b().#", sig);
  CHECK(is_daimon(substitute(dai, {{kX0, n}})));

  DesignPtr p = parse_design("x0|b<>", sig);
  DesignPtr cutd = substitute(p, {{kX0, n}});
  CHECK(is_cut(cutd));
  CHECK(render_design(cutd) == "[b().#]|b<>");

  // substitution into an argument creates a cut at the application head
  DesignPtr q = parse_design("x|c<{}>", sig, false);
  DesignPtr m = parse_design("c(y).(y|d<>)", sig);
  DesignPtr r = substitute(q, {{"x", m}});
  CHECK(is_cut(r));
  CHECK(render_design(r) == "[c(y).(y|d<>)]|c<{}>");
}

TEST_CASE("is_linear catches shared variables") {
  Signature sig = sig_abcd();
  CHECK(is_linear(parse_design("x0|a<{}, {}>", sig)));
  CHECK_FALSE(is_linear(parse_design("x0|a<c(y).(x0|d<>), {}>", sig, false)));
  CHECK_FALSE(is_linear(parse_design("x0|a<c(y).(z|d<>), c(y).(z|d<>)>", sig, false)));
}

TEST_CASE("alpha equality") {
  Signature sig = sig_abcd();
  CHECK(alpha_eq(parse_design("c(x).(x|b<>)", sig), parse_design("c(z).(z|b<>)", sig)));
  CHECK_FALSE(alpha_eq(parse_design("c(x).(x|b<>)", sig), parse_design("c(x).(x|d<>)", sig)));
  DesignPtr ex7 = parse_design(
      "a(x1,x2).(x2|a<a(x3,x4).# + c(y1).(y1|d<>), c(y2).(x1|d<>)>)", sig);
  CHECK(alpha_eq(ex7, ex7));
}

TEST_CASE("classify") {
  Signature sig = sig_abcd();
  auto c1 = classify(parse_design("#", sig));
  CHECK(c1.polarity == Polarity::Positive);
  CHECK(c1.atomic);
  CHECK(c1.cut_free);
  auto c2 = classify(parse_design("[b().#]|b<>", sig));
  CHECK(c2.polarity == Polarity::Positive);
  CHECK(c2.atomic);
  CHECK_FALSE(c2.cut_free);
  auto c3 = classify(parse_design("a(x,y).#", sig));
  CHECK(c3.polarity == Polarity::Negative);
  CHECK(c3.atomic);
  CHECK(c3.cut_free);
}

TEST_CASE("render round-trips generated designs") {
  Signature sig = sig_abcd();
  DesignGen gen(sig, 7);
  for (int i = 0; i < 200; ++i) {
    DesignPtr d = gen.coin(0.5) ? gen.positive(4) : gen.negative(4);
    DesignPtr back = parse_design(render_design(d), sig);
    CHECK(alpha_eq(d, back));
  }
}

TEST_CASE("substitution preserves linearity and free variables") {
  Signature sig = sig_abcd();
  DesignGen gen(sig, 11);
  int done = 0;
  for (int i = 0; i < 400 && done < 100; ++i) {
    DesignPtr d = gen.positive_over({"x0", "y"}, 3, false);
    VarSet fv = free_vars(d);
    if (!fv.count("y")) continue;
    DesignPtr n = gen.negative(3);
    DesignPtr r = substitute(d, {{"y", n}});
    CHECK(is_linear(r));
    VarSet expect = fv;
    expect.erase("y");
    VarSet nf = free_vars(n);
    expect.insert(nf.begin(), nf.end());
    CHECK(free_vars(r) == expect);
    ++done;
  }
  CHECK(done == 100);
}
