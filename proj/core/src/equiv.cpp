#include "prockit/equiv.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <tuple>

#include "graph.hpp"
#include "prockit/compose.hpp"

namespace prockit {

namespace {

struct Union {
  detail::LabelTable labels;
  detail::Graph ga, gb, g;
  std::vector<std::size_t> block;
};

Union partition_union(const Lts& a, const Lts& b, bool branching) {
  Union u;
  u.ga = detail::build_graph(a, u.labels);
  u.gb = detail::build_graph(b, u.labels);
  u.g = detail::disjoint_union(u.ga, u.gb);
  u.block = branching ? detail::branching_partition(u.g) : detail::strong_partition(u.g);
  return u;
}

Relation same_block_pairs(const Lts& a, const Lts& b, const Union& u) {
  Relation rel;
  auto ra = reach(a);
  auto rb = reach(b);
  for (auto s : ra) {
    for (auto t : rb) {
      if (u.block[s] == u.block[u.ga.n + t]) rel.emplace_back(s, t);
    }
  }
  return rel;
}

bool root_condition(const Union& u) {
  std::size_t ia = u.ga.init;
  std::size_t ib = u.ga.n + u.gb.init;
  auto matched = [&](std::size_t from, std::size_t other) {
    for (auto [label, dst] : u.g.out[from]) {
      bool ok = std::any_of(u.g.out[other].begin(), u.g.out[other].end(), [&](const auto& e) {
        return e.first == label && u.block[e.second] == u.block[dst];
      });
      if (!ok) return false;
    }
    return true;
  };
  return matched(ia, ib) && matched(ib, ia);
}


std::optional<std::string> unmatched(const Lts& a, const Lts& b, const Union& u) {
  std::size_t ia = u.ga.init;
  std::size_t ib = u.ga.n + u.gb.init;
  if (u.g.term[ia] != u.g.term[ib]) return std::string(u.g.term[ia] ? "left" : "right") + " terminates";
  auto name = [&](std::size_t s) { return s < u.ga.n ? a.state(s) : b.state(s - u.ga.n); };
  for (auto [from, other, side] : {std::tuple{ia, ib, "left"}, std::tuple{ib, ia, "right"}}) {
    for (auto [label, dst] : u.g.out[from]) {
      bool ok = std::any_of(u.g.out[other].begin(), u.g.out[other].end(), [&](const auto& e) {
        return e.first == label && u.block[e.second] == u.block[dst];
      });
      if (!ok) return std::string(side) + " " + u.labels.name(label) + " -> " + name(dst);
    }
  }
  return std::nullopt;
}

}  // namespace

EquivResult bisim(const Lts& a, const Lts& b, Bisim kind) {
  EquivResult r;
  if (a.num_states() == 0 || b.num_states() == 0) {
    r.note = "empty transition system";
    return r;
  }
  Union u = partition_union(a, b, kind != Bisim::Strong);
  r.equivalent = u.block[u.ga.init] == u.block[u.ga.n + u.gb.init];
  if (!r.equivalent) {
    r.note = "initial states are in different classes";
    if (kind == Bisim::Strong) r.unmatched_move = unmatched(a, b, u);
    return r;
  }
  if (kind == Bisim::RootedBranching && !root_condition(u)) {
    r.equivalent = false;
    r.note = "initial states fail the root condition";
    return r;
  }
  r.witness = same_block_pairs(a, b, u);
  return r;
}

EquivResult strong_bisim(const Lts& a, const Lts& b) { return bisim(a, b, Bisim::Strong); }
EquivResult branching_bisim(const Lts& a, const Lts& b) { return bisim(a, b, Bisim::Branching); }
EquivResult rooted_branching_bisim(const Lts& a, const Lts& b) { return bisim(a, b, Bisim::RootedBranching); }

namespace {

EquivResult compare_traces(const Lts& a, const Lts& b, bool prefixes) {
  EquivResult r;
  detail::LabelTable labels;
  auto ga = detail::build_graph(a, labels);
  auto gb = detail::build_graph(b, labels);
  auto visible = labels.sorted_visible();
  using Pair = std::pair<detail::StateSet, detail::StateSet>;
  std::map<Pair, Trace> seen;
  std::deque<Pair> queue;
  Pair start{detail::tau_closure(ga, {ga.init}), detail::tau_closure(gb, {gb.init})};
  seen.emplace(start, Trace{});
  queue.push_back(start);
  while (!queue.empty()) {
    Pair cur = queue.front();
    queue.pop_front();
    const Trace& sigma = seen.at(cur);
    if (prefixes && cur.first.empty() != cur.second.empty()) {
      r.distinguisher = sigma;
      r.note = std::string("trace performable by the ") + (cur.first.empty() ? "right" : "left") + " system only";
      return r;
    }
    bool ta = detail::any_terminating(ga, cur.first);
    bool tb = detail::any_terminating(gb, cur.second);
    if (ta != tb) {
      r.distinguisher = sigma;
      r.distinguisher_terminating = true;
      r.note = std::string("terminating trace of the ") + (ta ? "left" : "right") + " system only";
      return r;
    }
    for (int x : visible) {
      Pair next{detail::visible_step(ga, cur.first, x), detail::visible_step(gb, cur.second, x)};
      if (next.first.empty() && next.second.empty()) continue;
      if (seen.count(next)) continue;
      Trace t = sigma;
      t.push_back(labels.name(x));
      seen.emplace(next, std::move(t));
      queue.push_back(std::move(next));
    }
  }
  r.equivalent = true;
  return r;
}

}  // namespace

EquivResult trace_eq(const Lts& a, const Lts& b) { return compare_traces(a, b, true); }
EquivResult lang_eq(const Lts& a, const Lts& b) { return compare_traces(a, b, false); }

namespace {

class WitnessCheck {
 public:
  WitnessCheck(const Lts& a, const Lts& b, const Relation& rel)
      : a_(a), b_(b), sa_(a.successors()), sb_(b.successors()) {
    for (auto [s, t] : rel) {
      fwd_.insert({s, t});
    }
  }

  std::optional<std::string> run(Bisim kind) {
    if (!fwd_.count({a_.initial(), b_.initial()})) return "initial pair not related";
    for (auto [s, t] : fwd_) {
      if (s >= a_.num_states() || t >= b_.num_states()) return "relation mentions an unknown state";
      std::optional<std::string> err;
      if (kind == Bisim::Strong) {
        err = strong_pair(s, t);
      } else {
        err = branching_pair(s, t);
      }
      if (err) return err;
    }
    if (kind == Bisim::RootedBranching) {
      std::size_t s = a_.initial(), t = b_.initial();
      for (const auto& [x, s2] : sa_[s]) {
        bool ok = std::any_of(sb_[t].begin(), sb_[t].end(),
                              [&](const auto& e) { return e.first == x && rel(s2, e.second); });
        if (!ok) return "root condition fails for left move " + x;
      }
      for (const auto& [x, t2] : sb_[t]) {
        bool ok = std::any_of(sa_[s].begin(), sa_[s].end(),
                              [&](const auto& e) { return e.first == x && rel(e.second, t2); });
        if (!ok) return "root condition fails for right move " + x;
      }
    }
    return std::nullopt;
  }

 private:
  bool rel(std::size_t s, std::size_t t) const { return fwd_.count({s, t}) != 0; }

  std::string where(std::size_t s, std::size_t t) const { return " at (" + a_.state(s) + ", " + b_.state(t) + ")"; }

  std::optional<std::string> strong_pair(std::size_t s, std::size_t t) {
    if (a_.is_terminating(s) != b_.is_terminating(t)) return "termination mismatch" + where(s, t);
    for (const auto& [x, s2] : sa_[s]) {
      bool ok = std::any_of(sb_[t].begin(), sb_[t].end(),
                            [&](const auto& e) { return e.first == x && rel(s2, e.second); });
      if (!ok) return "left move " + x + " unmatched" + where(s, t);
    }
    for (const auto& [x, t2] : sb_[t]) {
      bool ok = std::any_of(sa_[s].begin(), sa_[s].end(),
                            [&](const auto& e) { return e.first == x && rel(e.second, t2); });
      if (!ok) return "right move " + x + " unmatched" + where(s, t);
    }
    return std::nullopt;
  }

  static std::vector<std::size_t> closure(const std::vector<std::vector<std::pair<std::string, std::size_t>>>& succ,
                                          std::size_t from) {
    std::vector<std::size_t> out{from};
    std::set<std::size_t> seen{from};
    for (std::size_t i = 0; i < out.size(); ++i) {
      for (const auto& [x, dst] : succ[out[i]]) {
        if (is_tau(x) && seen.insert(dst).second) out.push_back(dst);
      }
    }
    return out;
  }

  std::optional<std::string> branching_pair(std::size_t s, std::size_t t) {
    auto ct = closure(sb_, t);
    auto cs = closure(sa_, s);
    for (const auto& [x, s2] : sa_[s]) {
      if (is_tau(x) && rel(s2, t)) continue;
      bool ok = false;
      for (auto t1 : ct) {
        if (!rel(s, t1)) continue;
        for (const auto& [y, t2] : sb_[t1]) {
          if (y == x && rel(s2, t2)) ok = true;
        }
        if (ok) break;
      }
      if (!ok) return "left move " + x + " unmatched" + where(s, t);
    }
    for (const auto& [x, t2] : sb_[t]) {
      if (is_tau(x) && rel(s, t2)) continue;
      bool ok = false;
      for (auto s1 : cs) {
        if (!rel(s1, t)) continue;
        for (const auto& [y, s2] : sa_[s1]) {
          if (y == x && rel(s2, t2)) ok = true;
        }
        if (ok) break;
      }
      if (!ok) return "right move " + x + " unmatched" + where(s, t);
    }
    if (a_.is_terminating(s)) {
      bool ok = std::any_of(ct.begin(), ct.end(), [&](std::size_t t1) { return b_.is_terminating(t1) && rel(s, t1); });
      if (!ok) return "left termination unmatched" + where(s, t);
    }
    if (b_.is_terminating(t)) {
      bool ok = std::any_of(cs.begin(), cs.end(), [&](std::size_t s1) { return a_.is_terminating(s1) && rel(s1, t); });
      if (!ok) return "right termination unmatched" + where(s, t);
    }
    return std::nullopt;
  }

  const Lts& a_;
  const Lts& b_;
  std::vector<std::vector<std::pair<std::string, std::size_t>>> sa_, sb_;
  std::set<std::pair<std::size_t, std::size_t>> fwd_;
};

}  // namespace

std::optional<std::string> verify_witness(const Lts& a, const Lts& b, const Relation& rel, Bisim kind) {
  return WitnessCheck(a, b, rel).run(kind);
}

std::vector<std::size_t> bisim_classes(const Lts& l, Reduction kind) {
  detail::LabelTable labels;
  auto g = detail::build_graph(l, labels);
  std::vector<std::size_t> out(l.num_states(), static_cast<std::size_t>(-1));
  if (g.n == 0) return out;
  auto r = reach(l);
  auto sub = restrict_to(l, r);
  auto gs = detail::build_graph(sub, labels);
  auto block = kind == Reduction::Strong ? detail::strong_partition(gs) : detail::branching_partition(gs);
  for (std::size_t i = 0; i < sub.num_states(); ++i) out[l.index_of(sub.state(i))] = block[i];
  return out;
}

Lts minimize(const Lts& l, Reduction kind) {
  Lts out(l.name());
  if (l.num_states() == 0) return out;
  auto cls = bisim_classes(l, kind);
  const auto none = static_cast<std::size_t>(-1);
  std::map<std::size_t, std::string> least;
  for (std::size_t s = 0; s < l.num_states(); ++s) {
    if (cls[s] == none) continue;
    auto it = least.find(cls[s]);
    if (it == least.end() || l.state(s) < it->second) least[cls[s]] = l.state(s);
  }
  std::map<std::size_t, std::size_t> id;
  for (const auto& [c, name] : least) id[c] = out.add_state(name);
  for (const auto& a : l.alphabet()) out.add_action(a);
  for (std::size_t s = 0; s < l.num_states(); ++s) {
    if (cls[s] != none && l.is_terminating(s)) out.set_terminating(id[cls[s]]);
  }
  for (const auto& t : l.transitions()) {
    if (cls[t.src] == none) continue;
    if (kind == Reduction::Branching && is_tau(t.label) && cls[t.src] == cls[t.dst]) continue;
    out.add_transition_raw(id[cls[t.src]], t.label, id[cls[t.dst]]);
  }
  std::size_t init = id[cls[l.initial()]];
  if (out.is_terminating(init)) {
    std::string root = untaken(out.state(init) + "'", [&](const std::string& n) { return out.has_state(n); });
    std::size_t r = out.add_state(root);
    out.add_transition_raw(r, kTau, init);
    init = r;
  }
  out.set_initial(init);
  return out;
}

bool is_determinate(const Lts& l) {
  if (l.num_states() == 0) return true;
  auto cls = bisim_classes(l, Reduction::Branching);
  detail::LabelTable labels;
  auto g = detail::build_graph(l, labels);
  auto visible = labels.sorted_visible();
  std::set<detail::StateSet> seen;
  std::deque<detail::StateSet> queue;
  auto start = detail::tau_closure(g, {g.init});
  seen.insert(start);
  queue.push_back(start);
  while (!queue.empty()) {
    auto cur = queue.front();
    queue.pop_front();
    for (auto s : cur) {
      if (cls[s] != cls[cur.front()]) return false;
    }
    for (int x : visible) {
      auto next = detail::visible_step(g, cur, x);
      if (!next.empty() && seen.insert(next).second) queue.push_back(next);
    }
  }
  return true;
}

std::vector<std::pair<std::string, std::string>> named(const Lts& a, const Lts& b, const Relation& rel) {
  std::vector<std::pair<std::string, std::string>> out;
  for (auto [s, t] : rel) out.emplace_back(a.state(s), b.state(t));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace prockit
