#include <doctest.h>

#include <algorithm>

#include "../support/gen.hpp"
#include "../support/laws.hpp"
#include "prockit/compose.hpp"
#include "prockit/equiv.hpp"
#include "prockit/error.hpp"
#include "prockit/expr.hpp"
#include "prockit/models.hpp"

using namespace prockit;
namespace m = prockit::models;

namespace {

ExprPtr px(const std::string& s) { return parse_expr(s); }

bool rb(const Lts& a, const Lts& b) { return rooted_branching_bisim(a, b).equivalent; }

Lts sos(const ExprPtr& p, const CommFn& g = {}) {
  auto e = sos_lts(p, g, 100000);
  REQUIRE(e.complete);
  return e.lts;
}

bool basic(const ExprPtr& p) {
  switch (p->kind) {
    case ExprKind::Atom:
    case ExprKind::Tau:
    case ExprKind::Delta:
      return true;
    case ExprKind::Alt:
    case ExprKind::Seq:
      return basic(p->left) && basic(p->right);
    default:
      return false;
  }
}

}  // namespace

TEST_SUITE("expr") {
  TEST_CASE("parser builds the expected trees") {
    auto p = px("(rk(0) + rl(0)) . sm(0)");
    REQUIRE(p->kind == ExprKind::Seq);
    CHECK(p->left->kind == ExprKind::Alt);
    CHECK(p->left->left->name == "rk(0)");
    CHECK(p->right->name == "sm(0)");

    auto q = px("x . z + y . z");
    REQUIRE(q->kind == ExprKind::Alt);
    CHECK(q->left->kind == ExprKind::Seq);
    CHECK(q->right->kind == ExprKind::Seq);

    // Left association within one operator.
    auto r = px("a . b . c");
    CHECK(r->left->kind == ExprKind::Seq);
    CHECK(px("a * b * c")->left->kind == ExprKind::Star);

    CHECK(px("tau")->kind == ExprKind::Tau);
    CHECK(px("delta")->kind == ExprKind::Delta);
    CHECK(px("X . a")->left->kind == ExprKind::Var);
    auto e = px("encap({a, b(1)}, a . c)");
    CHECK(e->labels == std::set<std::string>{"a", "b(1)"});
    CHECK(px("(a . b)^omega")->kind == ExprKind::Omega);
  }

  TEST_CASE("parser errors") {
    CHECK_THROWS_AS(px("a || b * c"), ParseError);
    CHECK_THROWS_AS(px("a +"), ParseError);
    CHECK_THROWS_AS(px("(a . b"), ParseError);
    CHECK_THROWS_AS(px("encap({tau}, a)"), ParseError);
    CHECK_THROWS_AS(px("a ||_ b"), ParseError);
    CHECK_NOTHROW(parse_expr("a ||_ b", {true}));
    try {
      px("a .\n  + b");
      FAIL("expected a parse error");
    } catch (const ParseError& err) {
      CHECK(err.line() == 2);
      CHECK(err.column() == 3);
    }
  }

  TEST_CASE("printing round trips") {
    for (const char* s : {"a . (b + c)", "(a + b) . c", "a || (b * c)", "(a . b)^omega + delta",
                          "hide({a}, encap({b}, a . b)) . tau", "X . a + Y", "(a + b) * (c || d)"}) {
      auto p = px(s);
      CHECK(equal(px(print_expr(p)), p));
    }
    CHECK(print_compact(px("a . b + c")).find(' ') == std::string::npos);
  }

  TEST_CASE("free variables and size") {
    auto p = px("X . a + (Y || b)");
    CHECK(free_vars(p) == std::set<std::string>{"X", "Y"});
    CHECK_FALSE(is_closed(p));
    CHECK(size(p) == 7);
    CHECK(is_closed(substitute(p, {{"X", px("c")}, {"Y", px("d")}})));
    CHECK_THROWS_AS(substitute(p, {{"X", px("c")}}), Error);
  }

  TEST_CASE("normalize flattens and orders sums and right-nests sequences") {
    CHECK(equal(normalize(px("(c + a) + b")), normalize(px("a + (b + c)"))));
    CHECK(equal(normalize(px("(a . b) . c")), px("a . (b . c)")));
  }

  TEST_CASE("single SOS steps") {
    auto a = sos_step(px("a"), {});
    REQUIRE(a.size() == 1);
    CHECK(a[0].label == "a");
    CHECK(a[0].target == nullptr);

    auto ab = sos_step(px("a . b"), {});
    REQUIRE(ab.size() == 1);
    CHECK(equal(ab[0].target, px("b")));

    auto par = sos_step(px("s1(0) || r1(0)"), handshaking({"0"}, {"1"}));
    CHECK(par.size() == 3);
    std::set<std::string> labels;
    for (const auto& mv : par) labels.insert(mv.label);
    CHECK(labels == std::set<std::string>{"s1(0)", "r1(0)", "c1(0)"});
    for (const auto& mv : par) {
      if (mv.label == "c1(0)") CHECK(mv.target == nullptr);
      if (mv.label == "s1(0)") CHECK(equal(mv.target, px("r1(0)")));
    }

    CHECK(sos_step(px("delta"), {}).empty());
    CHECK(sos_step(px("tau"), {})[0].label == kTau);
    CHECK(sos_step(px("hide({a}, a)"), {})[0].label == kTau);
    CHECK(sos_step(px("encap({a}, a)"), {}).empty());
    CHECK_THROWS_AS(sos_step(px("X"), {}), Error);
  }

  TEST_CASE("SOS graphs of the buffer and counter") {
    Lts buf = sos(px("(add(0) . rem(0) + add(1) . rem(1))^omega"));
    CHECK(buf.num_states() == 3);
    CHECK(isomorphic(buf, m::buffer(1, m::bits())));
    Lts cnt = sos(px("(inc . dec)^omega"));
    CHECK(cnt.num_states() == 2);
    CHECK(isomorphic(cnt, m::counter(1)));
    CHECK(isomorphic(sos(px("a")), atomic("a")));
  }

  TEST_CASE("SOS exploration respects the budget") {
    auto e = sos_lts(px("a . b . c . d"), {}, 2);
    CHECK_FALSE(e.complete);
    CHECK(e.lts.num_states() <= 2);
    CHECK_FALSE(e.frontier.empty());
  }

  TEST_CASE("denotational meanings") {
    CHECK(rb(eval_denotational(px("(rk(0) + rl(0)) . sm(0)"), {}),
             eval_denotational(px("rk(0) . sm(0) + rl(0) . sm(0)"), {})));
    CHECK(isomorphic(eval_denotational(px("delta"), {}), delta()));
    Lts sched = eval_denotational(px("(grant(1) . grant(2) . grant(3))^omega"), {});
    CHECK(sched.num_states() == 3);
    CHECK(traces(sched, 4).count({"grant(1)", "grant(2)", "grant(3)", "grant(1)"}) == 1);
    CHECK_THROWS_AS(eval_denotational(parse_expr("a ||_ b", {true}), {}), Error);
    CHECK_THROWS_AS(eval_denotational(px("X"), {}), Error);
  }

  TEST_CASE("expansion to basic terms") {
    auto g = handshaking({"0"}, {"1"});
    CHECK(print_expr(expand_to_basic(px("s1(0) || r1(0)"), g)) ==
          print_expr(px("s1(0) . r1(0) + r1(0) . s1(0) + c1(0)")));
    CHECK(equal(expand_to_basic(px("encap({a}, a . b)"), {}), px("delta")));
    CHECK(equal(expand_to_basic(px("hide({a}, a . b)"), {}), px("tau . b")));
    CHECK_THROWS_AS(expand_to_basic(px("a * b"), {}), Error);
  }

  TEST_CASE("law checks") {
    CHECK(check_law(px("(X + Y) . Z"), px("X . Z + Y . Z"), {{"X", px("a")}, {"Y", px("b")}, {"Z", px("c")}}, {}));
    CHECK(check_law(px("X . tau"), px("X"), {{"X", px("a")}}, {}));
    CHECK_FALSE(check_law(px("X . (Y + Z)"), px("X . Y + X . Z"), {{"X", px("a")}, {"Y", px("b")}, {"Z", px("c")}}, {}));
    CHECK_THROWS_AS(check_law(px("X"), px("Y"), {{"X", px("a")}}, {}), Error);
  }

  TEST_CASE("property: every law holds on random instances") {
    gen::Rng rng(41);
    for (const auto& law : laws::table()) {
      for (int i = 0; i < 10; ++i) {
        auto in = laws::instantiate(rng, law);
        INFO(law.name, ": ", print_expr(substitute(in.lhs, in.bindings)));
        CHECK(check_law(in.lhs, in.rhs, in.bindings, in.g));
      }
    }
  }

  TEST_CASE("property: printing round trips on random terms") {
    gen::Rng rng(42);
    for (int i = 0; i < 300; ++i) {
      auto p = gen::expr(rng, 1 + gen::below(rng, 12));
      CHECK(equal(px(print_expr(p)), p));
      CHECK(size(p) >= 1);
    }
  }

  TEST_CASE("property: SOS and denotational meanings agree") {
    gen::Rng rng(43);
    for (int i = 0; i < 150; ++i) {
      auto p = gen::expr(rng, 1 + gen::below(rng, 12));
      auto g = gen::comm(rng);
      auto e = sos_lts(p, g, 100000);
      REQUIRE(e.complete);
      INFO(print_expr(p));
      CHECK(rb(e.lts, eval_denotational(p, g)));
      auto c = classify(e.lts);
      CHECK(c.regular);
      CHECK(c.finitely_branching);
      auto succ = e.lts.successors();
      for (std::size_t s = 0; s < e.lts.num_states(); ++s) {
        if (e.lts.is_terminating(s)) CHECK(succ[s].empty());
      }
    }
  }

  TEST_CASE("property: expansion yields an equal basic term") {
    gen::Rng rng(44);
    gen::ExprOptions o;
    o.star = false;
    for (int i = 0; i < 150; ++i) {
      auto p = gen::expr(rng, 1 + gen::below(rng, 8), o);
      auto g = gen::comm(rng);
      auto b = expand_to_basic(p, g);
      INFO(print_expr(p), " => ", print_expr(b));
      CHECK(basic(b));
      CHECK(rb(sos(p, g), sos(b, g)));
    }
  }
}
