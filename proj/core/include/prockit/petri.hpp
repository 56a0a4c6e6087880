#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "prockit/compose.hpp"
#include "prockit/equiv.hpp"
#include "prockit/expr.hpp"
#include "prockit/lts.hpp"

namespace prockit {

struct NetTransition {
  std::set<std::string> pre;
  std::string label;
  std::set<std::string> post;

  friend auto operator<=>(const NetTransition&, const NetTransition&) = default;
};

// Token count per place; places with no tokens are absent.
using Marking = std::map<std::string, unsigned>;

// Place/transition net with arc weight 1.
struct Net {
  std::string name;
  std::set<std::string> places;
  std::set<std::string> alphabet;
  std::set<NetTransition> transitions;
  Marking initial;

  void add_place(const std::string& p);
  // Adds the transition and its places; a visible label joins the alphabet.
  void add_transition(std::set<std::string> pre, const std::string& label, std::set<std::string> post);
  void mark(const std::string& p, unsigned count = 1);
};

ValidationReport validate_net(const Net& n);

bool firable(const NetTransition& t, const Marking& m);
std::vector<NetTransition> enabled(const Net& n, const Marking& m);
// Throws if `t` is not firable in `m`.
Marking fire(const Marking& m, const NetTransition& t);

// `{p,q:2}` with places in lexicographic order.
std::string marking_name(const Marking& m);

// Transition system of reachable markings, at most `bound` of them.
Exploration trsy(const Net& n, std::size_t bound);

Net par_nets(const Net& a, const Net& b, const CommFn& g);
Net encap_net(const std::set<std::string>& h, const Net& n, std::size_t bound = 100000);
Net hide_net(const std::set<std::string>& i, const Net& n);

// Refuses (throws) when either token game exceeds the budget.
EquivResult net_branching_eq(const Net& a, const Net& b, std::size_t bound);

// Bijection on places preserving the initial marking, the alphabet and the transitions.
bool net_isomorphic(const Net& a, const Net& b);

Net parse_net(std::string_view text);
std::string print_net(const Net& n);
std::string net_to_dot(const Net& n);

}  // namespace prockit
