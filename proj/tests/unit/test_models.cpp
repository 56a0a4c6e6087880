#include <doctest.h>

#include <deque>
#include <tuple>

#include "prockit/compose.hpp"
#include "prockit/equiv.hpp"
#include "prockit/error.hpp"
#include "prockit/models.hpp"
#include "prockit/petri.hpp"
#include "prockit/recspec.hpp"

using namespace prockit;
namespace m = prockit::models;

namespace {

Lts solve(const RecSpec& s) {
  auto e = unfold(s, {}, 100000);
  REQUIRE(e.complete);
  return e.lts;
}

}  // namespace

TEST_SUITE("models") {
  TEST_CASE("sizes of the catalog systems") {
    CHECK(m::counter(3).num_states() == 4);
    CHECK(m::counter_mod(2).num_transitions() == m::counter(2).num_transitions() + 2);
    CHECK(m::buffer(1, m::bits()).num_states() == 3);
    CHECK(m::buffer(2, m::bits()).num_states() == 7);
    CHECK(m::abp_sender(m::data(1)).num_states() == 6);
    CHECK(m::abp_composed(m::data(1)).num_states() == 36);
    CHECK(m::abp_composed(m::data(2)).num_states() == 70);
    CHECK(m::two_buffers(1, 1, m::bits()).composed.num_states() == 9);
    CHECK(m::two_buffers(1, 2, m::bits()).composed.num_states() == 21);
    CHECK(m::two_buffers(2, 2, m::bits()).composed.num_states() == 49);
    CHECK(m::calculator(0, 2).num_states() == 22);
    CHECK(trsy(m::scheduler_net(3), 1000).lts.num_states() == 24);
    CHECK(reach(m::factorial_flow()).size() == 8);
  }

  TEST_CASE("every catalog system is well formed") {
    for (const Lts& l : {m::counter(3), m::unreliable_counter(2), m::buffer(2, m::bits()),
                         m::unreliable_buffer(2, m::bits()), m::split(m::bits()), m::split_like(m::bits()),
                         m::merge(m::bits()), m::merge_alt(m::bits()), m::sink(m::bits()), m::wire(m::bits(), 2),
                         m::tau_inert_first(m::bits()), m::tau_noninert_first(m::bits()), m::factorial_flow(),
                         m::gcd_flow(), m::calculator(0, 1), m::peterson_flow(0), m::peterson_machine(),
                         m::abp_receiver(m::data(2)), m::abp_channel_k(m::data(2)), m::abp_hidden(m::data(1))}) {
      INFO(l.name());
      CHECK(validate(l).ok());
    }
    for (const Net& n : {m::memory_cell(), m::scheduler_net(3), m::counter_net(), m::counter_net_alt()}) {
      CHECK(validate_net(n).ok());
    }
    for (const RecSpec& s : {m::counter2_spec(), m::buffer2_spec(), m::abp_receiver_spec(m::data(2)),
                             m::workcell(2, {"p0"}).transport}) {
      CHECK_NOTHROW(check_spec(s));
      CHECK(is_guarded(s));
    }
  }

  TEST_CASE("connection verdicts") {
    auto d = m::bits();
    CHECK(trace_eq(m::split(d), m::split_like(d)).equivalent);
    CHECK_FALSE(strong_bisim(m::split(d), m::split_like(d)).equivalent);
    CHECK(strong_bisim(m::merge(d), m::merge_alt(d)).equivalent);
  }

  TEST_CASE("silent-step examples") {
    auto d = m::bits();
    CHECK(branching_bisim(m::tau_inert_first(d), m::tau_inert_second(d)).equivalent);
    CHECK_FALSE(branching_bisim(m::tau_noninert_first(d), m::tau_noninert_second(d)).equivalent);
  }

  TEST_CASE("alternating bit protocol") {
    for (std::size_t n : {1u, 2u}) {
      auto p = m::abp_pipeline(m::data(n));
      CHECK(branching_bisim(p.hidden, p.target_buffer).equivalent);
      CHECK(rooted_branching_bisim(p.hidden, p.target_buffer).equivalent);
      CHECK(is_determinate(p.hidden));
    }
  }

  TEST_CASE("component expressions agree with the hand-built systems") {
    auto d = m::data(1);
    auto g = CommFn{};
    CHECK(isomorphic(eval_denotational(m::abp_channel_k_expr(d), g), m::abp_channel_k(d)));
    CHECK(isomorphic(eval_denotational(m::abp_channel_l_expr(d), g), m::abp_channel_l(d)));
    CHECK(rooted_branching_bisim(eval_denotational(m::abp_sender_expr(d), g), m::abp_sender(d)).equivalent);
    CHECK(strong_bisim(eval_denotational(m::abp_receiver_expr(d), g), m::abp_receiver(d)).equivalent);
    CHECK(strong_bisim(eval_denotational(m::memory_cell_expr(), g), trsy(m::memory_cell(), 100).lts).equivalent);
    CHECK(isomorphic(eval_denotational(m::scheduler_ring_expr(3), g), trsy(m::scheduler_ring(3), 100).lts));
    CHECK(strong_bisim(eval_denotational(m::scheduler_process_expr(2), g), trsy(m::scheduler_process(2), 100).lts)
              .equivalent);
  }

  TEST_CASE("unbounded buffer is truncated") {
    auto e = m::unbounded_buffer(m::bits(), 30);
    CHECK_FALSE(e.complete);
    CHECK(e.lts.num_states() == 30);
  }

  TEST_CASE("Peterson's protocol keeps the components apart") {
    CommFn g = m::peterson_comm();
    m::Labels h;
    for (unsigned c : {0u, 1u}) {
      Lts flow = m::peterson_flow(c);
      for (const auto& a : flow.alphabet()) {
        if (a.rfind("enter", 0) == 0 || a.rfind("leave", 0) == 0) continue;
        h.insert(a);
        h.insert(m::machine_label(a));
      }
    }
    Lts sys = encap(h, parallel(parallel(m::peterson_flow(0), m::peterson_flow(1), g), m::peterson_machine(), g));
    CHECK(sys.num_states() > 1);
    // Walk the system while tracking which components are inside.
    auto succ = sys.successors();
    std::set<std::tuple<std::size_t, bool, bool>> seen{{sys.initial(), false, false}};
    std::deque<std::tuple<std::size_t, bool, bool>> todo(seen.begin(), seen.end());
    bool entered[2] = {false, false};
    while (!todo.empty()) {
      auto [s, in0, in1] = todo.front();
      todo.pop_front();
      CHECK_FALSE((in0 && in1));
      for (const auto& [a, t] : succ[s]) {
        bool n0 = a == "enter0" ? true : a == "leave0" ? false : in0;
        bool n1 = a == "enter1" ? true : a == "leave1" ? false : in1;
        if (a == "enter0") entered[0] = true;
        if (a == "enter1") entered[1] = true;
        if (seen.insert({t, n0, n1}).second) todo.emplace_back(t, n0, n1);
      }
    }
    CHECK(entered[0]);
    CHECK(entered[1]);
  }

  TEST_CASE("workcell meets its specification") {
    auto w = m::workcell(1, {"p0"});
    Lts sys = solve(w.controller);
    for (const RecSpec* s : {&w.workstation, &w.transport, &w.checker, &w.supplier}) {
      sys = parallel(sys, solve(*s), w.comm);
    }
    m::Labels blocked = w.blocked;
    blocked.insert(w.supply_blocked.begin(), w.supply_blocked.end());
    m::Labels internal = w.internal;
    internal.insert(w.supply_internal.begin(), w.supply_internal.end());
    Lts hidden = hide(internal, encap(blocked, sys));
    CHECK(branching_bisim(hidden, solve(w.target)).equivalent);
  }

  TEST_CASE("catalog lookup") {
    auto c = m::build("counter", {"3"});
    REQUIRE(std::holds_alternative<Lts>(c));
    CHECK(std::get<Lts>(c).num_states() == 4);
    CHECK(std::holds_alternative<Net>(m::build("scheduler_net", {"3"})));
    CHECK(std::holds_alternative<RecSpec>(m::build("buffer2_spec", {})));
    CHECK_THROWS_AS(m::build("nonesuch", {}), Error);
    CHECK_THROWS_AS(m::build("counter", {}), Error);
    CHECK_THROWS_AS(m::build("counter", {"0"}), Error);
    CHECK_THROWS_AS(m::build("counter", {"x"}), Error);
    CHECK_THROWS_AS(m::workcell(3, {"p0"}), Error);
    CHECK(m::catalog().size() > 40);
  }
}
