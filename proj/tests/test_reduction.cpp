#include <doctest.h>

#include "ludics/parser.hpp"
#include "ludics/random.hpp"
#include "ludics/reduction.hpp"

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

TEST_CASE("single reduction steps") {
  Signature sig = sig_abcd();
  auto s1 = step(parse_design("[b().#]|b<>", sig));
  REQUIRE(s1.has_value());
  CHECK(is_daimon(*s1));

  auto s2 = step(parse_design("[a(x,y).(x|d<>)]|a<d().#, {}>", sig, false));
  REQUIRE(s2.has_value());
  CHECK(render_design(*s2) == "[d().#]|d<>");

  auto s3 = step(parse_design("[b().#]|a<{}, {}>", sig));
  REQUIRE(s3.has_value());
  CHECK(is_omega(*s3));  // absent branch

  CHECK_FALSE(step(parse_design("x0|b<>", sig)).has_value());
}

TEST_CASE("normalize clauses") {
  Signature sig = sig_abcd();
  auto r1 = normalize(parse_design("#", sig));
  CHECK(r1.status == NormStatus::Converged);
  CHECK(is_daimon(r1.result));

  auto r2 = normalize(parse_design("[b().#]|b<>", sig));
  CHECK(r2.status == NormStatus::Converged);
  CHECK(is_daimon(r2.result));
  CHECK(r2.steps == 1);

  auto r3 = normalize(parse_design("[b().(_)]|b<>", sig));
  CHECK(r3.status == NormStatus::DivergedOmega);
  CHECK(is_omega(r3.result));

  // the normal form recurses under arguments and branches
  auto r4 = normalize(parse_design("x0|c< b().([b().#]|b<>) >", sig));
  CHECK(r4.status == NormStatus::Converged);
  CHECK(render_design(r4.result) == "x0|c<b().#>");
  auto r5 = normalize(parse_design("b().([b().#]|b<>)", sig));
  CHECK(r5.status == NormStatus::Converged);
  CHECK(render_design(r5.result) == "b().#");
}

TEST_CASE("orthogonality basics") {
  Signature sig = sig_abcd();
  CHECK(is_orthogonal(parse_design("#", sig), parse_design("{}", sig)));
  CHECK(is_orthogonal(parse_design("x0|b<>", sig), parse_design("b().#", sig)));
  CHECK_FALSE(is_orthogonal(parse_design("x0|b<>", sig), parse_design("c(x).#", sig)));
  CHECK_THROWS(is_orthogonal(parse_design("x0|b<>", sig), parse_design("x0|b<>", sig)));
}

TEST_CASE("stable and observational orderings") {
  Signature sig = sig_abcd();
  auto d = [&](const char* s) { return parse_design(s, sig); };
  CHECK(stable_leq(d("_"), d("#")));
  CHECK(stable_leq(d("c(x).(_)"), d("c(x).(x|b<>)")));
  CHECK_FALSE(stable_leq(d("#"), d("x0|b<>")));

  CHECK(obs_leq(d("x0|b<>"), d("#")));
  CHECK(obs_leq(d("_"), d("x0|b<>")));
  CHECK_FALSE(obs_leq(d("#"), d("x0|b<>")));

  // stable implies observational
  DesignGen gen(sig, 3);
  for (int i = 0; i < 200; ++i) {
    DesignPtr a = gen.positive(3);
    DesignPtr b = gen.positive(3);
    if (stable_leq(a, b)) CHECK(obs_leq(a, b));
  }
}

TEST_CASE("termination: finite linear designs never exhaust fuel") {
  Signature sig = sig_abcd();
  DesignGen gen(sig, 17);
  for (int i = 0; i < 300; ++i) {
    DesignPtr d = gen.coin(0.5) ? gen.positive(5, true) : gen.negative(5, true);
    auto r = normalize(d);
    CHECK(r.status != NormStatus::FuelExhausted);
    if (r.status == NormStatus::Converged) CHECK_FALSE(has_cut(r.result));
  }
}

TEST_CASE("monotonicity of normalisation") {
  Signature sig = sig_abcd();
  DesignGen gen(sig, 23);
  int done = 0;
  for (int i = 0; i < 5000 && done < 150; ++i) {
    DesignPtr a = gen.positive(4, true);
    DesignPtr b = gen.positive(4, true);
    if (!obs_leq(a, b)) continue;
    ++done;
    auto ra = normalize(a);
    auto rb = normalize(b);
    CHECK(obs_leq(ra.result, rb.result));
  }
  CHECK(done == 150);

  // if p orthogonal to n and p below p', then p' orthogonal to n
  DesignGen gen2(sig, 29);
  int hits = 0;
  for (int i = 0; i < 5000 && hits < 80; ++i) {
    DesignPtr p = gen2.positive(3);
    DesignPtr p2 = gen2.positive(3);
    DesignPtr n = gen2.negative(3);
    if (!obs_leq(p, p2) || !is_orthogonal(p, n)) continue;
    ++hits;
    CHECK(is_orthogonal(p2, n));
  }
  CHECK(hits == 80);
}

TEST_CASE("associativity of normalisation and substitution") {
  Signature sig = sig_abcd();
  DesignGen gen(sig, 31);
  int done = 0;
  for (int i = 0; i < 5000 && done < 120; ++i) {
    DesignPtr d = gen.positive_over({"y"}, 4, true);
    if (!free_vars(d).count("y")) continue;
    DesignPtr n = gen.negative(3, true);
    ++done;
    DesignPtr lhs = normalize(substitute(d, {{"y", n}})).result;
    DesignPtr dn = normalize(d).result;
    DesignPtr nn = normalize(n).result;
    DesignPtr rhs = normalize(substitute(dn, {{"y", nn}})).result;
    CHECK(alpha_eq(lhs, rhs));
  }
  CHECK(done == 120);
}
