#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "prockit/compose.hpp"
#include "prockit/lts.hpp"

namespace prockit {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class ExprKind { Var, Atom, Tau, Delta, Alt, Seq, Par, LeftMerge, CommMerge, Star, Omega, Encap, Hide };

// Process expression. Unary nodes (Omega, Encap, Hide) use `left` only.
struct Expr {
  ExprKind kind = ExprKind::Delta;
  std::string name;              // variable name or action label
  std::set<std::string> labels;  // H for Encap, I for Hide
  ExprPtr left;
  ExprPtr right;

  static ExprPtr var(std::string name);
  static ExprPtr atom(std::string label);
  static ExprPtr tau();
  static ExprPtr delta();
  static ExprPtr alt(ExprPtr l, ExprPtr r);
  static ExprPtr seq(ExprPtr l, ExprPtr r);
  static ExprPtr par(ExprPtr l, ExprPtr r);
  static ExprPtr left_merge(ExprPtr l, ExprPtr r);
  static ExprPtr comm_merge(ExprPtr l, ExprPtr r);
  static ExprPtr star(ExprPtr l, ExprPtr r);
  static ExprPtr omega(ExprPtr x);
  static ExprPtr encap(std::set<std::string> h, ExprPtr x);
  static ExprPtr hide(std::set<std::string> i, ExprPtr x);
};

bool equal(const ExprPtr& a, const ExprPtr& b);
bool is_closed(const ExprPtr& p);
std::set<std::string> free_vars(const ExprPtr& p);
// Number of nodes.
std::size_t size(const ExprPtr& p);

struct ParseOptions {
  // Admit the auxiliary operators `||_` (left merge) and `|` (communication merge).
  bool allow_aux = false;
};

ExprPtr parse_expr(std::string_view text, const ParseOptions& opts = {});
// Minimal parentheses; parse_expr(print_expr(p)) is structurally equal to p.
std::string print_expr(const ExprPtr& p);
// Same as print_expr without any whitespace; used for state names.
std::string print_compact(const ExprPtr& p);

// A1/A2/A5 normal form: sums flattened and sorted, sequences right-nested.
ExprPtr normalize(const ExprPtr& p);

// Recursion equations consulted when a variable is stepped.
using Defs = std::map<std::string, ExprPtr>;

// SOS successor; nullptr stands for the terminator.
struct SosMove {
  std::string label;
  ExprPtr target;
};

std::vector<SosMove> sos_step(const ExprPtr& p, const CommFn& g, const Defs* defs = nullptr);

struct Exploration {
  Lts lts;
  bool complete = true;
  // States whose successors were cut off by the budget.
  std::vector<std::string> frontier;
};

inline const std::string kDoneState = "[done]";

// Breadth-first exploration of the SOS graph from `p`, at most `bound` states.
Exploration sos_lts(const ExprPtr& p, const CommFn& g, std::size_t bound, const Defs* defs = nullptr);

Lts eval_denotational(const ExprPtr& p, const CommFn& g);

// Rewrites a closed star-free term into an equal term over atoms, delta, + and . only.
ExprPtr expand_to_basic(const ExprPtr& p, const CommFn& g);

// Replaces variables; unbound variables throw.
ExprPtr substitute(const ExprPtr& p, const std::map<std::string, ExprPtr>& bindings);

// Instantiates both templates and compares them by rooted branching bisimulation.
bool check_law(const ExprPtr& lhs, const ExprPtr& rhs, const std::map<std::string, ExprPtr>& bindings,
               const CommFn& g);

}  // namespace prockit
