#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "prockit/expr.hpp"

namespace prockit {

// Finite set of recursive equations; the first equation's variable is the root.
struct RecSpec {
  std::string name;
  std::vector<std::pair<std::string, ExprPtr>> equations;

  const std::string& root() const;
  const ExprPtr* find(const std::string& var) const;
  Defs defs() const;
  // Adds an equation; duplicate left-hand sides throw.
  void add(const std::string& var, ExprPtr rhs);
};

// Throws on duplicate left-hand sides and references to undefined variables.
void check_spec(const RecSpec& s);

RecSpec parse_spec(std::string_view text);
std::string print_spec(const RecSpec& s);

// Variables that occur unguarded on some right-hand side, as (lhs, occurrence) edges.
std::vector<std::pair<std::string, std::string>> unguarded_dependencies(const RecSpec& s);
bool is_guarded(const RecSpec& s);

bool is_linear(const RecSpec& s);
Lts linear_to_lts(const RecSpec& s);
RecSpec lts_to_linear(const Lts& l);

Exploration unfold(const RecSpec& s, const CommFn& g, std::size_t bound);

}  // namespace prockit
