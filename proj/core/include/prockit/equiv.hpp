#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "prockit/lts.hpp"

namespace prockit {

// Pairs (state of the left system, state of the right system), by index.
using Relation = std::vector<std::pair<std::size_t, std::size_t>>;

struct EquivResult {
  bool equivalent = false;
  // Set for bisimulation verdicts that hold.
  std::optional<Relation> witness;
  // Shortest (then lexicographically least) distinguishing trace for
  // trace/language verdicts that fail.
  std::optional<Trace> distinguisher;
  // True when the distinguisher is a terminating trace of exactly one side,
  // false when it is a trace of exactly one side.
  bool distinguisher_terminating = false;
  // Failed strong bisimulation: a step of one initial state that the other
  // cannot answer within the same class, e.g. `left r1(0) -> 0`, or
  // `left terminates` when termination differs.
  std::optional<std::string> unmatched_move;
  std::string note;
};

enum class Bisim { Strong, Branching, RootedBranching };

EquivResult strong_bisim(const Lts& a, const Lts& b);
EquivResult branching_bisim(const Lts& a, const Lts& b);
EquivResult rooted_branching_bisim(const Lts& a, const Lts& b);
EquivResult bisim(const Lts& a, const Lts& b, Bisim kind);

EquivResult trace_eq(const Lts& a, const Lts& b);
EquivResult lang_eq(const Lts& a, const Lts& b);

// Checks the transfer conditions of `kind` for `rel` directly from the
// definitions. Returns the first violated condition, if any.
std::optional<std::string> verify_witness(const Lts& a, const Lts& b, const Relation& rel, Bisim kind);

enum class Reduction { Strong, Branching };

// Quotient of the reachable part by the coarsest auto-bisimulation. Each
// class is named after its least member.
Lts minimize(const Lts& l, Reduction kind);

// Block number per reachable state (others map to npos).
std::vector<std::size_t> bisim_classes(const Lts& l, Reduction kind);

bool is_determinate(const Lts& l);

// Human-readable witness pairs, sorted.
std::vector<std::pair<std::string, std::string>> named(const Lts& a, const Lts& b, const Relation& rel);

}  // namespace prockit
