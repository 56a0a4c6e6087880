#include "graph.hpp"

#include <algorithm>
#include <deque>

namespace prockit::detail {

LabelTable::LabelTable() {
  ids_[kTau] = kTauId;
  names_.push_back(kTau);
}

int LabelTable::id(const std::string& label) {
  auto it = ids_.find(label);
  if (it != ids_.end()) return it->second;
  int next = static_cast<int>(names_.size());
  ids_.emplace(label, next);
  names_.push_back(label);
  return next;
}

std::vector<int> LabelTable::sorted_visible() const {
  std::vector<int> out;
  for (const auto& [name, id] : ids_) {
    if (id != kTauId) out.push_back(id);
  }
  return out;
}

Graph build_graph(const Lts& l, LabelTable& labels) {
  Graph g;
  g.n = l.num_states();
  g.init = l.initial();
  g.term.resize(g.n);
  g.out.resize(g.n);
  for (std::size_t s = 0; s < g.n; ++s) g.term[s] = l.is_terminating(s) ? 1 : 0;
  for (const auto& t : l.transitions()) g.out[t.src].emplace_back(labels.id(t.label), t.dst);
  return g;
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  Graph g;
  g.n = a.n + b.n;
  g.init = a.init;
  g.term = a.term;
  g.term.insert(g.term.end(), b.term.begin(), b.term.end());
  g.out = a.out;
  for (const auto& edges : b.out) {
    auto& shifted = g.out.emplace_back();
    for (auto [label, dst] : edges) shifted.emplace_back(label, dst + a.n);
  }
  return g;
}

std::vector<char> reachable(const Graph& g, std::size_t from) {
  std::vector<char> seen(g.n, 0);
  std::deque<std::size_t> queue{from};
  seen[from] = 1;
  while (!queue.empty()) {
    std::size_t s = queue.front();
    queue.pop_front();
    for (auto [label, dst] : g.out[s]) {
      if (!seen[dst]) {
        seen[dst] = 1;
        queue.push_back(dst);
      }
    }
  }
  return seen;
}

namespace {

// Renumbers states by (old block, signature); returns the new block count.
template <typename Signature>
std::size_t renumber(std::vector<std::size_t>& block, const std::vector<Signature>& sig) {
  std::map<std::pair<std::size_t, Signature>, std::size_t> ids;
  std::vector<std::size_t> next(block.size());
  for (std::size_t s = 0; s < block.size(); ++s) {
    auto key = std::make_pair(block[s], sig[s]);
    auto it = ids.find(key);
    if (it == ids.end()) it = ids.emplace(std::move(key), ids.size()).first;
    next[s] = it->second;
  }
  block = std::move(next);
  return ids.size();
}

using Sig = std::vector<std::pair<int, std::size_t>>;

constexpr int kTermMark = -1;

}  // namespace

std::vector<std::size_t> strong_partition(const Graph& g) {
  std::vector<std::size_t> block(g.n);
  for (std::size_t s = 0; s < g.n; ++s) block[s] = g.term[s] ? 1 : 0;
  std::size_t count = 0;
  {
    std::set<std::size_t> distinct(block.begin(), block.end());
    count = distinct.size();
  }
  std::vector<Sig> sig(g.n);
  while (true) {
    for (std::size_t s = 0; s < g.n; ++s) {
      Sig& v = sig[s];
      v.clear();
      for (auto [label, dst] : g.out[s]) v.emplace_back(label, block[dst]);
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    std::size_t next = renumber(block, sig);
    if (next == count) break;
    count = next;
  }
  return block;
}

std::vector<std::size_t> branching_partition(const Graph& g) {
  // Signature refinement: a state's signature collects the moves available
  // after silent steps that stay inside its current block, leaving out
  // inert silent steps. Termination reached that way is recorded too.
  std::vector<std::size_t> block(g.n, 0);
  std::size_t count = g.n == 0 ? 0 : 1;
  std::vector<Sig> sig(g.n);
  std::vector<std::size_t> stamp(g.n, 0);
  std::size_t round = 0;
  std::vector<std::size_t> stack;
  while (true) {
    for (std::size_t s = 0; s < g.n; ++s) {
      ++round;
      Sig& v = sig[s];
      v.clear();
      stack.assign(1, s);
      stamp[s] = round;
      while (!stack.empty()) {
        std::size_t u = stack.back();
        stack.pop_back();
        if (g.term[u]) v.emplace_back(kTermMark, 0);
        for (auto [label, dst] : g.out[u]) {
          if (label == kTauId && block[dst] == block[s]) {
            if (stamp[dst] != round) {
              stamp[dst] = round;
              stack.push_back(dst);
            }
            continue;
          }
          v.emplace_back(label, block[dst]);
        }
      }
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    std::size_t next = renumber(block, sig);
    if (next == count) break;
    count = next;
  }
  return block;
}

StateSet tau_closure(const Graph& g, const StateSet& from) {
  std::vector<char> seen(g.n, 0);
  std::vector<std::size_t> stack(from.begin(), from.end());
  for (auto s : from) seen[s] = 1;
  StateSet out;
  while (!stack.empty()) {
    std::size_t s = stack.back();
    stack.pop_back();
    out.push_back(s);
    for (auto [label, dst] : g.out[s]) {
      if (label == kTauId && !seen[dst]) {
        seen[dst] = 1;
        stack.push_back(dst);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

StateSet visible_step(const Graph& g, const StateSet& from, int label) {
  StateSet next;
  for (auto s : from) {
    for (auto [l, dst] : g.out[s]) {
      if (l == label) next.push_back(dst);
    }
  }
  std::sort(next.begin(), next.end());
  next.erase(std::unique(next.begin(), next.end()), next.end());
  return tau_closure(g, next);
}

bool any_terminating(const Graph& g, const StateSet& s) {
  return std::any_of(s.begin(), s.end(), [&](std::size_t x) { return g.term[x] != 0; });
}

}  // namespace prockit::detail
