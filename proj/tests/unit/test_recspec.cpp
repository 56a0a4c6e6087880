#include <doctest.h>

#include "../support/gen.hpp"
#include "../support/oracle.hpp"
#include "prockit/equiv.hpp"
#include "prockit/error.hpp"
#include "prockit/models.hpp"
#include "prockit/petri.hpp"
#include "prockit/recspec.hpp"

using namespace prockit;
namespace m = prockit::models;

namespace {

const char* kMemoryCell =
    "spec memory\n"
    "M = M0;\n"
    "M0 = rtr(0) . M0 + sto(0) . M0 + sto(1) . M1;\n"
    "M1 = rtr(1) . M1 + sto(1) . M1 + sto(0) . M0;\n";

Lts full_unfold(const RecSpec& s) {
  auto e = unfold(s, {}, 100000);
  REQUIRE(e.complete);
  return e.lts;
}

}  // namespace

TEST_SUITE("recspec") {
  TEST_CASE("parsing and printing") {
    RecSpec mc = parse_spec(kMemoryCell);
    CHECK(mc.equations.size() == 3);
    CHECK(mc.root() == "M");
    CHECK(mc.find("M1") != nullptr);
    CHECK(mc.find("Q") == nullptr);
    RecSpec back = parse_spec(print_spec(mc));
    REQUIRE(back.equations.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(back.equations[i].first == mc.equations[i].first);
      CHECK(equal(back.equations[i].second, mc.equations[i].second));
    }
    CHECK(parse_spec("X = X;").equations.size() == 1);
    CHECK_THROWS_AS(parse_spec(""), ParseError);
    CHECK_THROWS_AS(parse_spec("X = a;\nX = b;"), Error);
    CHECK_THROWS_AS(parse_spec("X = a . Y;"), Error);
    CHECK_THROWS_AS(parse_spec("X = a . X"), ParseError);
  }

  TEST_CASE("guardedness") {
    CHECK(is_guarded(parse_spec("Z = a . Z;")));
    CHECK_FALSE(is_guarded(parse_spec("Y = a + Y;")));
    CHECK_FALSE(is_guarded(parse_spec("X = a + X . a;")));
    CHECK_FALSE(is_guarded(parse_spec("X = X;")));
    CHECK_FALSE(is_guarded(parse_spec("X = tau . X;")));
    CHECK(is_guarded(parse_spec(kMemoryCell)));
    CHECK(is_guarded(m::unbounded_counter_spec()));
    CHECK(is_guarded(m::abp_sender_spec(m::data(2))));
    auto deps = unguarded_dependencies(parse_spec("Y = a + Y;"));
    REQUIRE(deps.size() == 1);
    CHECK(deps[0] == std::make_pair(std::string("Y"), std::string("Y")));
  }

  TEST_CASE("linearity") {
    CHECK(is_linear(parse_spec(kMemoryCell)));
    CHECK(is_linear(parse_spec("Z = a . Z;")));
    CHECK(is_linear(parse_spec("Z = delta;")));
    CHECK_FALSE(is_linear(m::abp_sender_spec(m::data(1))));
    CHECK_FALSE(is_linear(m::unbounded_counter_spec()));
    CHECK_FALSE(is_linear(parse_spec("Z = tau . Z;")));
  }

  TEST_CASE("linear specifications and transition systems") {
    Lts mc = linear_to_lts(parse_spec(kMemoryCell));
    CHECK(mc.num_states() == 2);
    CHECK(mc.num_transitions() == 6);
    CHECK(strong_bisim(mc, trsy(m::memory_cell(), 100).lts).equivalent);

    RecSpec c2 = lts_to_linear(m::counter(2));
    REQUIRE(c2.equations.size() == 3);
    CHECK(equal(c2.equations[0].second, parse_expr("inc . " + c2.equations[1].first)));
    CHECK(isomorphic(linear_to_lts(c2), m::counter(2)));

    RecSpec t = lts_to_linear(seq(atomic("a"), atomic("b")));
    CHECK(t.equations.size() == 2);
    CHECK(equal(t.equations[1].second, parse_expr("b")));
    CHECK_THROWS_AS(linear_to_lts(m::abp_sender_spec(m::data(1))), Error);
    CHECK_THROWS_AS(lts_to_linear(atomic(kTau)), Error);
  }

  TEST_CASE("unfolding") {
    auto c = unfold(m::unbounded_counter_spec(), {}, 50);
    CHECK_FALSE(c.complete);
    CHECK(c.lts.num_states() == 50);
    CHECK_FALSE(c.frontier.empty());
    CHECK(strong_bisim(c.lts, m::counter(49)).equivalent);

    auto alt = unfold(m::unbounded_counter_alt_spec(), {}, 50);
    CHECK_FALSE(alt.complete);
    CHECK(traces(alt.lts, 6) == traces(m::counter(6), 6));

    Lts b2 = full_unfold(m::buffer2_spec());
    CHECK(rooted_branching_bisim(b2, m::buffer(2, m::bits())).equivalent);
    CHECK(strong_bisim(full_unfold(m::counter2_spec()), m::counter(2)).equivalent);
    CHECK(strong_bisim(full_unfold(m::buffer1_spec()), m::buffer(1, m::bits())).equivalent);
    CHECK(strong_bisim(full_unfold(m::split_spec()), m::split(m::bits())).equivalent);
    CHECK(strong_bisim(full_unfold(m::merge_spec()), m::merge(m::bits())).equivalent);
    CHECK_THROWS_AS(unfold(parse_spec("Y = a + Y;"), {}, 10), Error);
  }

  TEST_CASE("unfolded protocol components match the hand-built ones") {
    for (std::size_t n : {1u, 2u}) {
      auto d = m::data(n);
      CHECK(rooted_branching_bisim(full_unfold(m::abp_sender_spec(d)), m::abp_sender(d)).equivalent);
      CHECK(rooted_branching_bisim(full_unfold(m::abp_receiver_spec(d)), m::abp_receiver(d)).equivalent);
      CHECK(rooted_branching_bisim(full_unfold(m::abp_channel_k_spec(d)), m::abp_channel_k(d)).equivalent);
      CHECK(rooted_branching_bisim(full_unfold(m::abp_channel_l_spec(d)), m::abp_channel_l(d)).equivalent);
    }
  }

  TEST_CASE("property: linear round trips") {
    gen::Rng rng(51);
    for (int i = 0; i < 100; ++i) {
      RecSpec s = gen::linear_spec(rng);
      Lts l = linear_to_lts(s);
      RecSpec back = lts_to_linear(l);
      CHECK(isomorphic(linear_to_lts(back), l));
      // One variable per reachable non-terminating state, one summand per transition.
      std::size_t live = 0;
      for (auto st : oracle::reachable(l)) live += l.is_terminating(st) ? 0 : 1;
      CHECK(back.equations.size() == live);
      CHECK(isomorphic(full_unfold(s), l));
    }
  }

  TEST_CASE("property: lts to linear and back is the reduct") {
    gen::Rng rng(52);
    gen::LtsOptions o;
    for (int i = 0; i < 100; ++i) {
      Lts l = gen::lts(rng, o);
      // Merge terminating states into one, the shape linear specifications have.
      CHECK(strong_bisim(linear_to_lts(lts_to_linear(l)), reduct(l)).equivalent);
      CHECK(traces(linear_to_lts(lts_to_linear(l)), 5) == traces(l, 5));
    }
  }

  TEST_CASE("property: bounded unfoldings are prefix consistent") {
    for (std::size_t small : {5u, 10u, 20u}) {
      auto a = unfold(m::unbounded_counter_spec(), {}, small);
      auto b = unfold(m::unbounded_counter_spec(), {}, 2 * small);
      std::size_t depth = small / 2;
      CHECK(traces(a.lts, depth) == traces(b.lts, depth));
    }
  }
}
