#include <doctest.h>

#include "../support/gen.hpp"
#include "../support/oracle.hpp"
#include "prockit/compose.hpp"
#include "prockit/equiv.hpp"
#include "prockit/error.hpp"
#include "prockit/models.hpp"

using namespace prockit;
namespace m = prockit::models;

namespace {

Lts r(int port, const std::string& d) { return atomic("r" + std::to_string(port) + "(" + d + ")"); }
Lts s(int port, const std::string& d) { return atomic("s" + std::to_string(port) + "(" + d + ")"); }

bool rb(const Lts& a, const Lts& b) { return rooted_branching_bisim(a, b).equivalent; }

}  // namespace

TEST_SUITE("compose") {
  TEST_CASE("communication functions") {
    CHECK(validate_comm(handshaking({"0", "1"}, {"3", "4", "5", "6"})).ok());
    CommFn one = handshaking({"d"}, {"3"});
    CHECK(one.size() == 1);
    CHECK(one.get("s3(d)", "r3(d)") == "c3(d)");
    CHECK(one.get("r3(d)", "s3(d)") == "c3(d)");
    CHECK_FALSE(one.defined("s3(d)", "s3(d)"));
    CHECK(handshaking({}, {}).empty());
    CHECK(handshaking({"0", "1"}, {"10", "11"}).size() == 4);

    CommFn bad;
    bad.set("a", "b", "c");
    bad.set("c", "d", "e");
    CHECK_FALSE(validate_comm(bad).ok());

    // Ternary communication: two receives merge first, then meet the send.
    CommFn ternary;
    for (const std::string d : {"0", "1"}) {
      ternary.set("r1(" + d + ")", "r1(" + d + ")", "rr1(" + d + ")");
      ternary.set("s1(" + d + ")", "rr1(" + d + ")", "c1(" + d + ")");
      ternary.set("s1(" + d + ")", "r1(" + d + ")", "sr1(" + d + ")");
      ternary.set("sr1(" + d + ")", "r1(" + d + ")", "c1(" + d + ")");
    }
    CHECK(validate_comm(ternary).ok());

    CHECK_THROWS_AS(one.set("s3(d)", "r3(d)", "other"), Error);
    CHECK_THROWS_AS(one.set(kTau, "a", "b"), Error);
  }

  TEST_CASE("comm text format") {
    CommFn g = parse_comm("# table\ncomm a b -> c\ncomm s1(0) r1(0) -> c1(0)\n");
    CHECK(g.get("b", "a") == "c");
    CHECK(parse_comm(print_comm(g)).entries() == g.entries());
    CHECK_THROWS_AS(parse_comm("comm a b c\n"), ParseError);
    CHECK_THROWS_AS(parse_comm("comm a b -> c\ncomm b a -> d\n"), Error);
  }

  TEST_CASE("atomic and delta") {
    Lts a = atomic("inc");
    CHECK(a.num_states() == 2);
    CHECK(a.num_transitions() == 1);
    CHECK(a.terminating_states().size() == 1);
    CHECK(delta().num_states() == 1);
    CHECK_FALSE(isomorphic(a, delta()));
  }

  TEST_CASE("parallel composition of two buffers") {
    auto t = m::two_buffers(1, 1, m::bits());
    Lts par = parallel(m::buffer(1, m::bits(), "add1", "rem1"), m::buffer(1, m::bits(), "add2", "rem2"), t.comm);
    CHECK(par.num_states() == 9);
    CHECK(par.alphabet().count("trf(0)") == 1);
    CHECK(t.composed.num_states() == 9);
    for (const auto& a : t.composed.alphabet()) {
      CHECK((a.rfind("add1", 0) == 0 || a.rfind("rem2", 0) == 0 || a.rfind("trf", 0) == 0));
    }
    for (const auto& tr : t.hidden.transitions()) CHECK(tr.label.rfind("trf", 0) != 0);
    CHECK(t.hidden.alphabet().count("trf(0)") == 0);
  }

  TEST_CASE("parallel with delta blocks termination") {
    Lts p = parallel(atomic("a"), delta(), {});
    CHECK(p.num_transitions() == 1);
    CHECK(p.terminating_states().empty());
  }

  TEST_CASE("parallel synchronisation terminates") {
    Lts p = parallel(atomic("s1(0)"), atomic("r1(0)"), handshaking({"0"}, {"1"}));
    bool found = false;
    for (const auto& t : p.transitions()) {
      if (t.label == "c1(0)") {
        found = true;
        CHECK(p.is_terminating(t.dst));
      }
    }
    CHECK(found);
  }

  TEST_CASE("encapsulation") {
    CHECK(isomorphic(encap({}, m::counter(3)), reduct(m::counter(3))));
    CHECK(isomorphic(encap({"a"}, atomic("a")), delta()));
    CHECK_THROWS_AS(encap({kTau}, atomic("a")), Error);
  }

  TEST_CASE("abstraction") {
    Lts c = m::counter(2);
    CHECK(isomorphic(hide({}, c), c));
    Lts all = hide({"inc", "dec"}, c);
    CHECK(all.alphabet().empty());
    for (const auto& t : all.transitions()) CHECK(t.label == kTau);
    CHECK(all.num_states() == c.num_states());
    CHECK_THROWS_AS(hide({kTau}, c), Error);
  }

  TEST_CASE("alternative composition") {
    Lts a = alt(r(1, "d"), r(2, "d"));
    CHECK(a.num_states() == 3);
    CHECK(a.successors()[a.initial()].size() == 2);
    CHECK(a.terminating_states().size() == 2);
    CHECK(rb(alt(m::counter(2), delta()), m::counter(2)));
    CHECK(rb(alt(atomic("a"), atomic("a")), atomic("a")));
  }

  TEST_CASE("alternative composition keeps a re-entered initial state") {
    Lts a = alt(omega(atomic("a")), atomic("b"));
    CHECK(a.num_states() == 3);
    CHECK(rb(a, alt(seq(atomic("a"), omega(atomic("a"))), atomic("b"))));
  }

  TEST_CASE("sequential composition") {
    Lts sq = seq(alt(r(1, "d"), r(2, "d")), s(3, "d"));
    CHECK(sq.num_states() == 3);
    CHECK(isomorphic(seq(delta(), m::counter(2)), delta()));
    Lts ab = seq(atomic("a"), atomic("b"));
    CHECK(ab.num_states() == 3);
    CHECK(traces(ab, 3) == std::set<Trace>{{}, {"a"}, {"a", "b"}});
  }

  TEST_CASE("iteration") {
    Lts merge_loop = omega(seq(alt(r(1, "d"), r(2, "d")), s(3, "d")));
    CHECK(merge_loop.num_states() == 2);
    Lts a = alt(atomic("a"), atomic("b"));
    Lts b = atomic("c");
    CHECK(rb(star(a, b), alt(seq(a, star(a, b)), b)));
    Lts loop = omega(atomic("a"));
    CHECK(loop.num_states() == 1);
    CHECK(loop.num_transitions() == 1);
  }

  TEST_CASE("outputs are connected and deterministic in naming") {
    Lts x = alt(m::counter(2), seq(atomic("a"), atomic("b")));
    CHECK(classify(x).connected);
    CHECK(print_lts(x) == print_lts(alt(m::counter(2), seq(atomic("a"), atomic("b")))));
  }

  TEST_CASE("property: operators preserve rooted branching bisimilarity") {
    gen::Rng rng(21);
    gen::LtsOptions o;
    o.tau = 0.2;
    o.max_states = 4;
    o.max_transitions = 6;
    for (int i = 0; i < 60; ++i) {
      Lts t1 = gen::lts(rng, o);
      // Different shape, same meaning: x . tau = x.
      Lts t2 = seq(minimize(t1, Reduction::Strong), atomic(kTau));
      REQUIRE(rb(t1, t2));
      Lts u = gen::lts(rng, o);
      CommFn g = gen::comm(rng, 3);
      CHECK(rb(alt(t1, u), alt(t2, u)));
      CHECK(rb(alt(u, t1), alt(u, t2)));
      CHECK(rb(seq(t1, u), seq(t2, u)));
      CHECK(rb(seq(u, t1), seq(u, t2)));
      CHECK(rb(star(t1, u), star(t2, u)));
      CHECK(rb(star(u, t1), star(u, t2)));
      CHECK(rb(omega(t1), omega(t2)));
      CHECK(rb(parallel(t1, u, g), parallel(t2, u, g)));
      CHECK(rb(encap({"a"}, t1), encap({"a"}, t2)));
      CHECK(rb(hide({"b"}, t1), hide({"b"}, t2)));
    }
  }

  TEST_CASE("property: commutativity and associativity modulo rooted branching bisimilarity") {
    gen::Rng rng(22);
    gen::LtsOptions o;
    o.tau = 0.15;
    o.max_states = 4;
    o.max_transitions = 5;
    for (int i = 0; i < 60; ++i) {
      Lts x = gen::lts(rng, o);
      Lts y = gen::lts(rng, o);
      Lts z = gen::lts(rng, o);
      CommFn g = gen::comm(rng, 3);
      CHECK(rb(alt(x, y), alt(y, x)));
      CHECK(rb(alt(alt(x, y), z), alt(x, alt(y, z))));
      CHECK(rb(seq(seq(x, y), z), seq(x, seq(y, z))));
      CHECK(rb(parallel(x, y, g), parallel(y, x, g)));
      CHECK(rb(parallel(parallel(x, y, g), z, g), parallel(x, parallel(y, z, g), g)));
    }
  }

  TEST_CASE("property: parallel, encap and hide preserve strong bisimilarity and trace equivalence") {
    gen::Rng rng(23);
    gen::LtsOptions o;
    o.max_states = 4;
    o.max_transitions = 6;
    for (int i = 0; i < 80; ++i) {
      Lts t1 = gen::lts(rng, o);
      Lts t2 = minimize(t1, Reduction::Strong);
      Lts u = gen::lts(rng, o);
      CommFn g = gen::comm(rng, 3);
      CHECK(strong_bisim(parallel(t1, u, g), parallel(t2, u, g)).equivalent);
      CHECK(strong_bisim(encap({"a", "c"}, t1), encap({"a", "c"}, t2)).equivalent);
      CHECK(strong_bisim(hide({"b"}, t1), hide({"b"}, t2)).equivalent);

      Lts v = gen::lts(rng, o);
      if (trace_eq(t1, v).equivalent) {
        CHECK(trace_eq(encap({"a"}, t1), encap({"a"}, v)).equivalent);
        CHECK(trace_eq(hide({"b"}, t1), hide({"b"}, v)).equivalent);
        CHECK(trace_eq(parallel(t1, u, g), parallel(v, u, g)).equivalent);
      }
    }
  }

  TEST_CASE("property: product termination and connectivity") {
    gen::Rng rng(24);
    for (int i = 0; i < 100; ++i) {
      Lts a = gen::lts(rng);
      Lts b = gen::lts(rng);
      Lts p = parallel(a, b, gen::comm(rng, 3));
      CHECK(classify(p).connected);
      CHECK(classify(alt(a, b)).connected);
      CHECK(classify(seq(a, b)).connected);
      CHECK(classify(star(a, b)).connected);
      auto succ = p.successors();
      for (std::size_t s = 0; s < p.num_states(); ++s) {
        if (p.is_terminating(s)) CHECK(succ[s].empty());
      }
      CHECK(p.terminating_states().size() <= a.terminating_states().size() * b.terminating_states().size());
    }
  }
}
