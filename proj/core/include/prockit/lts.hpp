#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace prockit {

// The silent step. It labels transitions but never belongs to an alphabet.
inline const std::string kTau = "tau";
// Reserved name of the inactive constant in the expression syntax.
inline const std::string kDelta = "delta";

inline bool is_tau(const std::string& label) { return label == kTau; }

// A sequence of visible labels.
using Trace = std::vector<std::string>;

struct Transition {
  std::size_t src = 0;
  std::string label;
  std::size_t dst = 0;

  friend auto operator<=>(const Transition&, const Transition&) = default;
};

// Labelled transition system with silent steps and successful termination.
// States are opaque tokens; indices are stable for the lifetime of the value.
class Lts {
 public:
  Lts() = default;
  explicit Lts(std::string name) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  // Returns the index of `id`, creating the state if needed.
  std::size_t add_state(const std::string& id);
  bool has_state(const std::string& id) const { return index_.count(id) != 0; }
  std::size_t index_of(const std::string& id) const;
  const std::string& state(std::size_t i) const { return states_.at(i); }
  const std::vector<std::string>& states() const { return states_; }
  std::size_t num_states() const { return states_.size(); }

  void add_action(const std::string& label);
  const std::set<std::string>& alphabet() const { return alphabet_; }

  // Adds the transition; a visible label also joins the alphabet.
  void add_transition(std::size_t src, const std::string& label, std::size_t dst);
  void add_transition(const std::string& src, const std::string& label, const std::string& dst);
  // Adds the transition without declaring its label.
  void add_transition_raw(std::size_t src, const std::string& label, std::size_t dst);
  const std::set<Transition>& transitions() const { return transitions_; }
  std::size_t num_transitions() const { return transitions_.size(); }

  void set_initial(std::size_t s);
  void set_initial(const std::string& id) { set_initial(add_state(id)); }
  std::size_t initial() const { return initial_; }

  void set_terminating(std::size_t s, bool value = true);
  void set_terminating(const std::string& id, bool value = true) { set_terminating(add_state(id), value); }
  bool is_terminating(std::size_t s) const { return terminating_.at(s) != 0; }
  std::vector<std::size_t> terminating_states() const;

  // Outgoing (label, target) pairs per state.
  std::vector<std::vector<std::pair<std::string, std::size_t>>> successors() const;

 private:
  std::string name_;
  std::vector<std::string> states_;
  std::unordered_map<std::string, std::size_t> index_;
  std::set<std::string> alphabet_;
  std::set<Transition> transitions_;
  std::vector<char> terminating_;
  std::size_t initial_ = 0;
};

struct ValidationReport {
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

ValidationReport validate(const Lts& l);

// States reachable from `from` by the generalized transition relation for `sigma`.
std::set<std::size_t> gstep(const Lts& l, std::size_t from, const Trace& sigma);
std::set<std::string> gstep(const Lts& l, const std::string& from, const Trace& sigma);

// States reachable from `from` along silent steps only (including `from`).
std::set<std::size_t> tau_closure(const Lts& l, const std::set<std::size_t>& from);

std::set<Trace> traces(const Lts& l, std::size_t max_len);
std::set<Trace> terminating_traces(const Lts& l, std::size_t max_len);

std::set<std::size_t> reach(const Lts& l);
// States reachable, reflexively, from a reachable state other than the initial one.
std::set<std::size_t> reach_prime(const Lts& l);

// Restriction to `keep` (which must contain the initial state); the alphabet is kept.
Lts restrict_to(const Lts& l, const std::set<std::size_t>& keep);
// Restriction to the reachable states, keeping the declared alphabet.
Lts restrict_reachable(const Lts& l);
// Restriction to the reachable states with the alphabet cut down to used labels.
Lts reduct(const Lts& l);

struct Classification {
  bool connected = false;
  bool finite = false;
  bool regular = false;
  bool finitely_branching = false;
  bool deterministic = false;
};

Classification classify(const Lts& l);

// Bijection between the reachable states of `a` and `b` (by state name), if any.
std::optional<std::map<std::string, std::string>> find_isomorphism(const Lts& a, const Lts& b);
bool isomorphic(const Lts& a, const Lts& b);

// Text format: `lts`, `init`, `state`, `term`, `act` and `tr` lines.
Lts parse_lts(std::string_view text);
std::string print_lts(const Lts& l);
std::string lts_to_dot(const Lts& l);

// Helpers shared by the text formats.
bool is_valid_token(std::string_view token);
std::string quote_dot(std::string_view s);

}  // namespace prockit
