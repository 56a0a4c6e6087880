#pragma once

// Integer-indexed view of one or two transition systems, used by the
// partition-refinement and subset-construction algorithms.

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "prockit/lts.hpp"

namespace prockit::detail {

// Label interning; id 0 is always the silent step.
class LabelTable {
 public:
  LabelTable();
  int id(const std::string& label);
  const std::string& name(int id) const { return names_.at(static_cast<std::size_t>(id)); }
  std::size_t size() const { return names_.size(); }
  // Visible label ids sorted by label name.
  std::vector<int> sorted_visible() const;

 private:
  std::map<std::string, int> ids_;
  std::vector<std::string> names_;
};

constexpr int kTauId = 0;

struct Graph {
  std::size_t n = 0;
  std::size_t init = 0;
  std::vector<char> term;
  std::vector<std::vector<std::pair<int, std::size_t>>> out;
};

Graph build_graph(const Lts& l, LabelTable& labels);
// States of `b` are shifted by `a.n`; the initial state is that of `a`.
Graph disjoint_union(const Graph& a, const Graph& b);

std::vector<char> reachable(const Graph& g, std::size_t from);

// Block number per state for the coarsest strong bisimulation.
std::vector<std::size_t> strong_partition(const Graph& g);
// Block number per state for the coarsest branching bisimulation.
std::vector<std::size_t> branching_partition(const Graph& g);

using StateSet = std::vector<std::size_t>;  // sorted, unique

StateSet tau_closure(const Graph& g, const StateSet& from);
StateSet visible_step(const Graph& g, const StateSet& from, int label);
bool any_terminating(const Graph& g, const StateSet& s);

}  // namespace prockit::detail
