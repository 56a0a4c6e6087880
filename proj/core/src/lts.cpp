#include "prockit/lts.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "graph.hpp"
#include "prockit/error.hpp"

namespace prockit {

std::size_t Lts::add_state(const std::string& id) {
  auto it = index_.find(id);
  if (it != index_.end()) return it->second;
  if (!is_valid_token(id)) throw Error("invalid state name '" + id + "'");
  std::size_t i = states_.size();
  states_.push_back(id);
  terminating_.push_back(0);
  index_.emplace(id, i);
  return i;
}

std::size_t Lts::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw Error("unknown state '" + id + "'");
  return it->second;
}

void Lts::add_action(const std::string& label) {
  if (is_tau(label)) throw Error("tau cannot be declared as an action");
  if (!is_valid_token(label) || label == kDelta) throw Error("invalid action label '" + label + "'");
  alphabet_.insert(label);
}

void Lts::add_transition(std::size_t src, const std::string& label, std::size_t dst) {
  if (!is_tau(label)) add_action(label);
  add_transition_raw(src, label, dst);
}

void Lts::add_transition(const std::string& src, const std::string& label, const std::string& dst) {
  std::size_t s = add_state(src);
  std::size_t d = add_state(dst);
  add_transition(s, label, d);
}

void Lts::add_transition_raw(std::size_t src, const std::string& label, std::size_t dst) {
  if (src >= states_.size() || dst >= states_.size()) throw Error("transition endpoint out of range");
  if (label.empty()) throw Error("empty transition label");
  transitions_.insert(Transition{src, label, dst});
}

void Lts::set_initial(std::size_t s) {
  if (s >= states_.size()) throw Error("initial state out of range");
  initial_ = s;
}

void Lts::set_terminating(std::size_t s, bool value) { terminating_.at(s) = value ? 1 : 0; }

std::vector<std::size_t> Lts::terminating_states() const {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < terminating_.size(); ++s) {
    if (terminating_[s]) out.push_back(s);
  }
  return out;
}

std::vector<std::vector<std::pair<std::string, std::size_t>>> Lts::successors() const {
  std::vector<std::vector<std::pair<std::string, std::size_t>>> out(states_.size());
  for (const auto& t : transitions_) out[t.src].emplace_back(t.label, t.dst);
  return out;
}

ValidationReport validate(const Lts& l) {
  ValidationReport r;
  if (l.num_states() == 0) {
    r.problems.push_back("no states");
    return r;
  }
  if (l.initial() >= l.num_states()) r.problems.push_back("initial state out of range");
  if (l.alphabet().count(kTau) != 0) r.problems.push_back("alphabet contains tau");
  std::vector<char> has_out(l.num_states(), 0);
  for (const auto& t : l.transitions()) {
    has_out[t.src] = 1;
    if (!is_tau(t.label) && l.alphabet().count(t.label) == 0) {
      r.problems.push_back("undeclared label '" + t.label + "' on transition " + l.state(t.src) + " -> " +
                           l.state(t.dst));
    }
  }
  for (std::size_t s = 0; s < l.num_states(); ++s) {
    if (l.is_terminating(s) && has_out[s]) {
      r.problems.push_back("terminating state '" + l.state(s) + "' has outgoing transitions");
    }
  }
  if (l.initial() < l.num_states() && l.is_terminating(l.initial())) {
    r.problems.push_back("initial state marked terminating");
  }
  return r;
}

std::set<std::size_t> tau_closure(const Lts& l, const std::set<std::size_t>& from) {
  auto succ = l.successors();
  std::set<std::size_t> seen = from;
  std::vector<std::size_t> stack(from.begin(), from.end());
  while (!stack.empty()) {
    std::size_t s = stack.back();
    stack.pop_back();
    for (const auto& [label, dst] : succ[s]) {
      if (is_tau(label) && seen.insert(dst).second) stack.push_back(dst);
    }
  }
  return seen;
}

std::set<std::size_t> gstep(const Lts& l, std::size_t from, const Trace& sigma) {
  if (from >= l.num_states()) throw Error("unknown state index");
  auto succ = l.successors();
  auto closure = [&](std::set<std::size_t> s) {
    std::vector<std::size_t> stack(s.begin(), s.end());
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      for (const auto& [label, dst] : succ[u]) {
        if (is_tau(label) && s.insert(dst).second) stack.push_back(dst);
      }
    }
    return s;
  };
  std::set<std::size_t> current = closure({from});
  for (const auto& a : sigma) {
    if (is_tau(a)) throw Error("traces contain visible labels only");
    std::set<std::size_t> next;
    for (auto s : current) {
      for (const auto& [label, dst] : succ[s]) {
        if (label == a) next.insert(dst);
      }
    }
    current = closure(std::move(next));
    if (current.empty()) break;
  }
  return current;
}

std::set<std::string> gstep(const Lts& l, const std::string& from, const Trace& sigma) {
  std::set<std::string> out;
  for (auto s : gstep(l, l.index_of(from), sigma)) out.insert(l.state(s));
  return out;
}

namespace {

void collect_traces(const detail::Graph& g, const detail::LabelTable& labels, const std::vector<int>& visible,
                    const detail::StateSet& current, Trace& prefix, std::size_t max_len, bool terminating_only,
                    std::set<Trace>& out) {
  if (!terminating_only || detail::any_terminating(g, current)) out.insert(prefix);
  if (prefix.size() == max_len) return;
  for (int a : visible) {
    auto next = detail::visible_step(g, current, a);
    if (next.empty()) continue;
    prefix.push_back(labels.name(a));
    collect_traces(g, labels, visible, next, prefix, max_len, terminating_only, out);
    prefix.pop_back();
  }
}

std::set<Trace> enumerate(const Lts& l, std::size_t max_len, bool terminating_only) {
  detail::LabelTable labels;
  auto g = detail::build_graph(l, labels);
  std::set<Trace> out;
  if (g.n == 0) return out;
  Trace prefix;
  auto start = detail::tau_closure(g, {g.init});
  collect_traces(g, labels, labels.sorted_visible(), start, prefix, max_len, terminating_only, out);
  return out;
}

}  // namespace

std::set<Trace> traces(const Lts& l, std::size_t max_len) { return enumerate(l, max_len, false); }

std::set<Trace> terminating_traces(const Lts& l, std::size_t max_len) { return enumerate(l, max_len, true); }

namespace {

std::set<std::size_t> forward(const Lts& l, std::vector<std::size_t> roots) {
  auto succ = l.successors();
  std::set<std::size_t> seen(roots.begin(), roots.end());
  std::deque<std::size_t> queue(roots.begin(), roots.end());
  while (!queue.empty()) {
    std::size_t s = queue.front();
    queue.pop_front();
    for (const auto& [label, dst] : succ[s]) {
      if (seen.insert(dst).second) queue.push_back(dst);
    }
  }
  return seen;
}

}  // namespace

std::set<std::size_t> reach(const Lts& l) {
  if (l.num_states() == 0) return {};
  return forward(l, {l.initial()});
}

std::set<std::size_t> reach_prime(const Lts& l) {
  auto r = reach(l);
  std::vector<std::size_t> roots;
  for (auto s : r) {
    if (s != l.initial()) roots.push_back(s);
  }
  return forward(l, roots);
}

Lts restrict_to(const Lts& l, const std::set<std::size_t>& keep) {
  if (keep.count(l.initial()) == 0) throw Error("restriction must keep the initial state");
  Lts out(l.name());
  std::vector<std::size_t> map(l.num_states(), static_cast<std::size_t>(-1));
  // Keep the original relative order of states.
  for (auto s : keep) map[s] = out.add_state(l.state(s));
  out.set_initial(map[l.initial()]);
  for (const auto& a : l.alphabet()) out.add_action(a);
  for (auto s : keep) {
    if (l.is_terminating(s)) out.set_terminating(map[s]);
  }
  for (const auto& t : l.transitions()) {
    if (keep.count(t.src) && keep.count(t.dst)) out.add_transition_raw(map[t.src], t.label, map[t.dst]);
  }
  return out;
}

Lts restrict_reachable(const Lts& l) { return restrict_to(l, reach(l)); }

Lts reduct(const Lts& l) {
  Lts r = restrict_reachable(l);
  Lts out(r.name());
  for (std::size_t s = 0; s < r.num_states(); ++s) {
    out.add_state(r.state(s));
    if (r.is_terminating(s)) out.set_terminating(s);
  }
  out.set_initial(r.initial());
  for (const auto& t : r.transitions()) out.add_transition(t.src, t.label, t.dst);
  return out;
}

namespace {

// True if some visible transition lies on a cycle of the reachable part.
bool has_visible_cycle(const Lts& l) {
  auto r = reach(l);
  auto succ = l.successors();
  // Tarjan's strongly connected components over the reachable part.
  std::vector<int> index(l.num_states(), -1), low(l.num_states(), 0), comp(l.num_states(), -1);
  std::vector<char> on_stack(l.num_states(), 0);
  std::vector<std::size_t> stack;
  int counter = 0, comps = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = 1;
    for (const auto& [label, w] : succ[v]) {
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      while (true) {
        std::size_t w = stack.back();
        stack.pop_back();
        on_stack[w] = 0;
        comp[w] = comps;
        if (w == v) break;
      }
      ++comps;
    }
  };
  for (auto s : r) {
    if (index[s] < 0) visit(s);
  }
  for (const auto& t : l.transitions()) {
    if (!r.count(t.src) || is_tau(t.label)) continue;
    if (comp[t.src] == comp[t.dst]) return true;
  }
  return false;
}

}  // namespace

Classification classify(const Lts& l) {
  Classification c;
  auto r = reach(l);
  c.connected = r.size() == l.num_states();
  c.finite = !has_visible_cycle(l);
  c.regular = true;
  c.finitely_branching = true;

  detail::LabelTable labels;
  auto g = detail::build_graph(l, labels);
  auto visible = labels.sorted_visible();
  std::set<detail::StateSet> seen;
  std::deque<detail::StateSet> queue;
  auto start = detail::tau_closure(g, {g.init});
  seen.insert(start);
  queue.push_back(start);
  c.deterministic = true;
  while (!queue.empty() && c.deterministic) {
    auto cur = queue.front();
    queue.pop_front();
    if (cur.size() > 1) {
      c.deterministic = false;
      break;
    }
    for (int a : visible) {
      auto next = detail::visible_step(g, cur, a);
      if (!next.empty() && seen.insert(next).second) queue.push_back(next);
    }
  }
  return c;
}

namespace {

class IsoSearch {
 public:
  IsoSearch(const Lts& a, const Lts& b) : a_(a), b_(b) {}

  std::optional<std::map<std::string, std::string>> run() {
    if (a_.num_states() == 0 || b_.num_states() == 0) return std::nullopt;
    ra_ = reach(a_);
    rb_ = reach(b_);
    if (ra_.size() != rb_.size()) return std::nullopt;
    // Count transitions within the reachable parts.
    std::size_t ta = 0, tb = 0;
    for (const auto& t : a_.transitions()) ta += ra_.count(t.src);
    for (const auto& t : b_.transitions()) tb += rb_.count(t.src);
    if (ta != tb) return std::nullopt;

    detail::LabelTable labels;
    auto ga = detail::build_graph(a_, labels);
    auto gb = detail::build_graph(b_, labels);
    auto u = detail::disjoint_union(ga, gb);
    color_ = detail::strong_partition(u);
    offset_ = ga.n;
    if (color_[a_.initial()] != color_[offset_ + b_.initial()]) return std::nullopt;

    succ_a_ = a_.successors();
    succ_b_ = b_.successors();
    for (const auto& t : a_.transitions()) edges_a_.insert({t.src, t.label, t.dst});
    for (const auto& t : b_.transitions()) edges_b_.insert({t.src, t.label, t.dst});

    // Breadth-first order with the discovering edge of every state.
    order_.push_back({a_.initial(), a_.initial(), ""});
    std::set<std::size_t> seen{a_.initial()};
    for (std::size_t i = 0; i < order_.size(); ++i) {
      std::size_t s = order_[i].state;
      for (const auto& [label, dst] : succ_a_[s]) {
        if (seen.insert(dst).second) order_.push_back({dst, s, label});
      }
    }
    map_.assign(a_.num_states(), kNone);
    used_.assign(b_.num_states(), 0);
    if (!extend(0)) return std::nullopt;
    std::map<std::string, std::string> out;
    for (auto s : ra_) out[a_.state(s)] = b_.state(map_[s]);
    return out;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  struct Step {
    std::size_t state;
    std::size_t parent;
    std::string label;
  };

  bool consistent(std::size_t s, std::size_t v) const {
    if (a_.is_terminating(s) != b_.is_terminating(v)) return false;
    if (color_[s] != color_[offset_ + v]) return false;
    if (succ_a_[s].size() != succ_b_[v].size()) return false;
    // Transitions between s and already mapped states must correspond.
    for (const auto& [label, dst] : succ_a_[s]) {
      std::size_t m = dst == s ? v : map_[dst];
      if (m != kNone && !edges_b_.count({v, label, m})) return false;
    }
    for (const auto& [label, dst] : succ_b_[v]) {
      if (dst == v) {
        if (!edges_a_.count({s, label, s})) return false;
      }
    }
    for (std::size_t w = 0; w < map_.size(); ++w) {
      if (map_[w] == kNone) continue;
      for (const auto& [label, dst] : succ_a_[w]) {
        if (dst == s && !edges_b_.count({map_[w], label, v})) return false;
      }
      for (const auto& [label, dst] : succ_b_[map_[w]]) {
        if (dst == v && !edges_a_.count({w, label, s})) return false;
      }
    }
    return true;
  }

  bool extend(std::size_t i) {
    if (i == order_.size()) return true;
    const Step& step = order_[i];
    std::vector<std::size_t> candidates;
    if (i == 0) {
      candidates.push_back(b_.initial());
    } else {
      for (const auto& [label, dst] : succ_b_[map_[step.parent]]) {
        if (label == step.label) candidates.push_back(dst);
      }
    }
    for (auto v : candidates) {
      if (used_[v]) continue;
      if (!consistent(step.state, v)) continue;
      map_[step.state] = v;
      used_[v] = 1;
      if (extend(i + 1)) return true;
      map_[step.state] = kNone;
      used_[v] = 0;
    }
    return false;
  }

  const Lts& a_;
  const Lts& b_;
  std::set<std::size_t> ra_, rb_;
  std::vector<std::size_t> color_;
  std::size_t offset_ = 0;
  std::vector<std::vector<std::pair<std::string, std::size_t>>> succ_a_, succ_b_;
  std::set<std::tuple<std::size_t, std::string, std::size_t>> edges_a_, edges_b_;
  std::vector<Step> order_;
  std::vector<std::size_t> map_;
  std::vector<char> used_;
};

}  // namespace

std::optional<std::map<std::string, std::string>> find_isomorphism(const Lts& a, const Lts& b) {
  return IsoSearch(a, b).run();
}

bool isomorphic(const Lts& a, const Lts& b) { return find_isomorphism(a, b).has_value(); }

}  // namespace prockit
