#pragma once

// Seeded random generators for property tests.

#include <random>
#include <set>
#include <string>
#include <vector>

#include "prockit/compose.hpp"
#include "prockit/expr.hpp"
#include "prockit/lts.hpp"
#include "prockit/recspec.hpp"

namespace gen {

using Rng = std::mt19937;

inline std::size_t below(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }
inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[below(rng, v.size())];
}

inline const std::vector<std::string>& actions() {
  static const std::vector<std::string> a{"a", "b", "c", "d"};
  return a;
}

struct LtsOptions {
  std::size_t max_states = 6;
  std::size_t max_transitions = 10;
  std::vector<std::string> labels{"a", "b", "c"};
  double tau = 0.0;
  bool terminating = true;
};

// Random system in the library's well-formedness class: terminating states
// have no outgoing transitions and the initial state does not terminate.
inline prockit::Lts lts(Rng& rng, const LtsOptions& o = {}) {
  prockit::Lts l("g");
  std::size_t n = 1 + below(rng, o.max_states);
  for (std::size_t i = 0; i < n; ++i) l.add_state("s" + std::to_string(i));
  l.set_initial(0);
  std::vector<bool> term(n, false);
  if (o.terminating && n > 1) {
    for (std::size_t i = 1; i < n; ++i) term[i] = coin(rng, 0.25);
  }
  std::size_t m = below(rng, o.max_transitions + 1);
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t s = below(rng, n);
    if (term[s]) continue;
    std::string label = coin(rng, o.tau) ? prockit::kTau : pick(rng, o.labels);
    l.add_transition(s, label, below(rng, n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (term[i]) l.set_terminating(i);
  }
  for (const auto& a : o.labels) l.add_action(a);
  return l;
}

// Deterministic, tau-free system: at most one successor per label.
inline prockit::Lts deterministic_lts(Rng& rng, std::size_t max_states = 6) {
  prockit::Lts l("det");
  std::size_t n = 1 + below(rng, max_states);
  for (std::size_t i = 0; i < n; ++i) l.add_state("s" + std::to_string(i));
  l.set_initial(0);
  for (std::size_t s = 0; s < n; ++s) {
    for (const std::string a : {"a", "b"}) {
      if (coin(rng, 0.6)) l.add_transition(s, a, below(rng, n));
    }
  }
  l.add_action("a");
  l.add_action("b");
  return l;
}

// Communication function whose results are fresh labels, so the
// associativity condition holds trivially.
inline prockit::CommFn comm(Rng& rng, std::size_t n_actions = 4) {
  prockit::CommFn g;
  for (std::size_t i = 0; i < n_actions; ++i) {
    for (std::size_t j = i; j < n_actions; ++j) {
      if (coin(rng, 0.3)) g.set(actions()[i], actions()[j], "g" + actions()[i] + actions()[j]);
    }
  }
  return g;
}

struct ExprOptions {
  std::size_t n_actions = 4;
  bool tau = true;
  bool parallel = true;
  bool star = true;
  bool encap_hide = true;
};

// Random closed term with exactly `size` nodes (size >= 1).
inline prockit::ExprPtr expr(Rng& rng, std::size_t size, const ExprOptions& o = {}) {
  using prockit::Expr;
  auto atom = [&]() -> prockit::ExprPtr {
    std::size_t r = below(rng, 10);
    if (r == 0) return Expr::delta();
    if (r == 1 && o.tau) return Expr::tau();
    return Expr::atom(actions()[below(rng, o.n_actions)]);
  };
  if (size <= 1) return atom();
  auto labels = [&]() {
    std::set<std::string> s;
    for (std::size_t i = 0; i < o.n_actions; ++i) {
      if (coin(rng, 0.4)) s.insert(actions()[i]);
    }
    return s;
  };
  std::vector<int> ops{0, 1};
  if (o.parallel) ops.push_back(2);
  if (o.star) ops.push_back(3);
  if (o.star) ops.push_back(4);
  if (o.encap_hide) ops.push_back(5);
  if (o.encap_hide) ops.push_back(6);
  int op = pick(rng, ops);
  if (op >= 4 || size == 2) {
    auto child = expr(rng, size - 1, o);
    if (op == 5) return Expr::encap(labels(), child);
    if (op == 6) return Expr::hide(labels(), child);
    if (op == 4 || !o.encap_hide) return o.star ? Expr::omega(child) : Expr::seq(atom(), child);
    return Expr::hide(labels(), child);
  }
  std::size_t left = 1 + below(rng, size - 2);
  auto l = expr(rng, left, o);
  auto r = expr(rng, size - 1 - left, o);
  switch (op) {
    case 0:
      return Expr::alt(l, r);
    case 1:
      return Expr::seq(l, r);
    case 2:
      return Expr::par(l, r);
    default:
      return Expr::star(l, r);
  }
}

// Random linear specification with up to `max_vars` variables over a, b, c.
inline prockit::RecSpec linear_spec(Rng& rng, std::size_t max_vars = 8) {
  prockit::RecSpec s;
  s.name = "lin";
  std::size_t n = 1 + below(rng, max_vars);
  auto var = [](std::size_t i) { return "X" + std::to_string(i); };
  for (std::size_t i = 0; i < n; ++i) {
    prockit::ExprPtr rhs;
    std::size_t summands = below(rng, 4);
    for (std::size_t k = 0; k < summands; ++k) {
      auto a = prockit::Expr::atom(pick(rng, std::vector<std::string>{"a", "b", "c"}));
      prockit::ExprPtr term = coin(rng, 0.2) ? a : prockit::Expr::seq(a, prockit::Expr::var(var(below(rng, n))));
      rhs = rhs ? prockit::Expr::alt(rhs, term) : term;
    }
    s.add(var(i), rhs ? rhs : prockit::Expr::delta());
  }
  return s;
}

}  // namespace gen
