#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "prockit/lts.hpp"

namespace prockit {

// Partial symmetric communication function on visible labels.
class CommFn {
 public:
  // Defines gamma(a,b) = gamma(b,a) = c. Redefining a pair with a different
  // result, or using tau anywhere, throws.
  void set(const std::string& a, const std::string& b, const std::string& c);
  std::optional<std::string> get(const std::string& a, const std::string& b) const;
  bool defined(const std::string& a, const std::string& b) const { return get(a, b).has_value(); }

  // Entries keyed by the ordered pair (min, max).
  const std::map<std::pair<std::string, std::string>, std::string>& entries() const { return table_; }
  std::size_t size() const { return table_.size(); }
  bool empty() const { return table_.empty(); }

  // Union with `other`; conflicting entries throw.
  void merge(const CommFn& other);

 private:
  std::map<std::pair<std::string, std::string>, std::string> table_;
};

// Checks the associativity closure condition; each violating triple is reported.
ValidationReport validate_comm(const CommFn& g);

// gamma(s<i>(d), r<i>(d)) = c<i>(d) for every port i and datum d.
CommFn handshaking(const std::vector<std::string>& data, const std::vector<std::string>& ports);

// `comm <a> <b> -> <c>` lines.
CommFn parse_comm(std::string_view text);
std::string print_comm(const CommFn& g);

// Two states with a single transition into a terminating state. `a` may be tau.
Lts atomic(const std::string& a);
// A single state without transitions.
Lts delta();

Lts parallel(const Lts& a, const Lts& b, const CommFn& g);
Lts encap(const std::set<std::string>& h, const Lts& l);
Lts hide(const std::set<std::string>& i, const Lts& l);
Lts alt(const Lts& a, const Lts& b);
Lts seq(const Lts& a, const Lts& b);
Lts star(const Lts& a, const Lts& b);
Lts omega(const Lts& a);

// Fresh-state helpers shared with the net operators.
std::string fresh_root(std::string_view seed);
// Appends `'` to `name` until `taken` returns false.
template <typename Pred>
std::string untaken(std::string name, Pred taken) {
  while (taken(name)) name += '\'';
  return name;
}

}  // namespace prockit
