#include "prockit/compose.hpp"

#include <cstdint>
#include <deque>
#include <functional>
#include <iomanip>
#include <sstream>

#include "prockit/error.hpp"
#include "text.hpp"

namespace prockit {

namespace {

std::pair<std::string, std::string> key(const std::string& a, const std::string& b) {
  return a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
}

void require_visible(const std::string& label, const char* what) {
  if (is_tau(label)) throw Error(std::string("tau cannot be ") + what);
  if (!is_valid_token(label) || label == kDelta) throw Error("invalid action label '" + label + "'");
}

}  // namespace

void CommFn::set(const std::string& a, const std::string& b, const std::string& c) {
  require_visible(a, "an argument of a communication function");
  require_visible(b, "an argument of a communication function");
  require_visible(c, "the result of a communication function");
  auto [it, inserted] = table_.emplace(key(a, b), c);
  if (!inserted && it->second != c) {
    throw Error("conflicting communication results for " + a + " | " + b + ": " + it->second + " and " + c);
  }
}

std::optional<std::string> CommFn::get(const std::string& a, const std::string& b) const {
  auto it = table_.find(key(a, b));
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

void CommFn::merge(const CommFn& other) {
  for (const auto& [k, c] : other.table_) set(k.first, k.second, c);
}

ValidationReport validate_comm(const CommFn& g) {
  ValidationReport r;
  std::vector<std::pair<std::string, std::string>> ordered;
  for (const auto& [k, c] : g.entries()) {
    ordered.push_back(k);
    if (k.first != k.second) ordered.emplace_back(k.second, k.first);
  }
  std::set<std::string> labels;
  for (const auto& [k, c] : g.entries()) {
    labels.insert(k.first);
    labels.insert(k.second);
    labels.insert(c);
  }
  for (const auto& [a, b] : ordered) {
    std::string ab = *g.get(a, b);
    for (const auto& c : labels) {
      auto ab_c = g.get(ab, c);
      if (!ab_c) continue;
      auto bc = g.get(b, c);
      std::optional<std::string> a_bc;
      if (bc) a_bc = g.get(a, *bc);
      if (!a_bc || *a_bc != *ab_c) {
        std::ostringstream os;
        os << "associativity fails for (" << a << ", " << b << ", " << c << "): gamma(gamma(" << a << "," << b
           << ")," << c << ") = " << *ab_c << " but gamma(" << a << ",gamma(" << b << "," << c << ")) ";
        if (!bc) {
          os << "is undefined since gamma(" << b << "," << c << ") is undefined";
        } else if (!a_bc) {
          os << "is undefined";
        } else {
          os << "= " << *a_bc;
        }
        r.problems.push_back(os.str());
      }
    }
  }
  return r;
}

CommFn handshaking(const std::vector<std::string>& data, const std::vector<std::string>& ports) {
  CommFn g;
  for (const auto& i : ports) {
    for (const auto& d : data) g.set("s" + i + "(" + d + ")", "r" + i + "(" + d + ")", "c" + i + "(" + d + ")");
  }
  return g;
}

CommFn parse_comm(std::string_view text) {
  CommFn g;
  for (const auto& line : detail::tokenize_lines(text)) {
    const auto& t = line.tokens;
    if (t[0].text != "comm") throw ParseError("unknown directive '" + t[0].text + "'", line.number, t[0].column);
    if (t.size() != 5 || t[3].text != "->") {
      throw ParseError("expected 'comm <a> <b> -> <c>'", line.number, t[0].column);
    }
    try {
      g.set(t[1].text, t[2].text, t[4].text);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), line.number, t[1].column);
    }
  }
  return g;
}

std::string print_comm(const CommFn& g) {
  std::ostringstream os;
  for (const auto& [k, c] : g.entries()) os << "comm " << k.first << ' ' << k.second << " -> " << c << '\n';
  return os.str();
}

std::string fresh_root(std::string_view seed) {
  std::uint32_t h = 2166136261u;
  for (unsigned char c : seed) {
    h ^= c;
    h *= 16777619u;
  }
  std::ostringstream os;
  os << "root#" << std::hex << std::setw(8) << std::setfill('0') << h;
  return os.str();
}

Lts atomic(const std::string& a) {
  if (!is_tau(a)) require_visible(a, "");
  Lts l(a);
  l.add_transition("0", a, "1");
  l.set_initial("0");
  l.set_terminating("1");
  return l;
}

Lts delta() {
  Lts l("delta");
  l.set_initial(l.add_state("0"));
  return l;
}

namespace {

// Number of primes that make every name of `b` distinct from `taken`.
std::string prime_suffix(const Lts& b, const std::function<bool(const std::string&)>& taken) {
  std::string suffix;
  while (true) {
    bool clash = false;
    for (const auto& s : b.states()) {
      if (taken(s + suffix)) {
        clash = true;
        break;
      }
    }
    if (!clash) return suffix;
    suffix += '\'';
  }
}

std::string seed_of(const char* op, const Lts& a, const Lts* b) {
  std::string seed = op;
  seed += '\n';
  seed += print_lts(a);
  if (b != nullptr) {
    seed += "\n|\n";
    seed += print_lts(*b);
  }
  return seed;
}

void copy_alphabet(const Lts& from, Lts& to) {
  for (const auto& a : from.alphabet()) to.add_action(a);
}

}  // namespace

Lts parallel(const Lts& a, const Lts& b, const CommFn& g) {
  auto report = validate_comm(g);
  if (!report.ok()) throw Error("invalid communication function: " + report.problems.front());
  Lts out;
  out.set_name(a.name() + "||" + b.name());
  copy_alphabet(a, out);
  copy_alphabet(b, out);
  for (const auto& x : a.alphabet()) {
    for (const auto& y : b.alphabet()) {
      if (auto c = g.get(x, y)) out.add_action(*c);
    }
  }
  if (a.num_states() == 0 || b.num_states() == 0) throw Error("parallel composition of an empty system");

  auto sa = a.successors();
  auto sb = b.successors();
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
  std::set<std::string> names;
  std::deque<std::pair<std::size_t, std::size_t>> queue;
  auto visit = [&](std::size_t x, std::size_t y) {
    auto it = index.find({x, y});
    if (it != index.end()) return it->second;
    std::string name =
        untaken("(" + a.state(x) + "," + b.state(y) + ")", [&](const std::string& n) { return names.count(n) != 0; });
    names.insert(name);
    std::size_t id = out.add_state(name);
    if (a.is_terminating(x) && b.is_terminating(y)) out.set_terminating(id);
    index.emplace(std::make_pair(x, y), id);
    queue.emplace_back(x, y);
    return id;
  };
  out.set_initial(visit(a.initial(), b.initial()));
  while (!queue.empty()) {
    auto [x, y] = queue.front();
    queue.pop_front();
    std::size_t from = index.at({x, y});
    for (const auto& [p, x2] : sa[x]) out.add_transition(from, p, visit(x2, y));
    for (const auto& [q, y2] : sb[y]) out.add_transition(from, q, visit(x, y2));
    for (const auto& [p, x2] : sa[x]) {
      if (is_tau(p)) continue;
      for (const auto& [q, y2] : sb[y]) {
        if (is_tau(q)) continue;
        if (auto c = g.get(p, q)) out.add_transition(from, *c, visit(x2, y2));
      }
    }
  }
  return out;
}

Lts encap(const std::set<std::string>& h, const Lts& l) {
  if (h.count(kTau)) throw Error("tau cannot be encapsulated");
  std::set<std::size_t> keep{l.initial()};
  std::deque<std::size_t> queue{l.initial()};
  auto succ = l.successors();
  while (!queue.empty()) {
    std::size_t s = queue.front();
    queue.pop_front();
    for (const auto& [label, dst] : succ[s]) {
      if (h.count(label)) continue;
      if (keep.insert(dst).second) queue.push_back(dst);
    }
  }
  Lts out(l.name());
  std::map<std::size_t, std::size_t> map;
  for (auto s : keep) {
    map[s] = out.add_state(l.state(s));
    if (l.is_terminating(s)) out.set_terminating(map[s]);
  }
  out.set_initial(map.at(l.initial()));
  for (const auto& t : l.transitions()) {
    if (h.count(t.label) || !keep.count(t.src)) continue;
    out.add_transition(map.at(t.src), t.label, map.at(t.dst));
  }
  return out;
}

Lts hide(const std::set<std::string>& i, const Lts& l) {
  if (i.count(kTau)) throw Error("tau cannot be abstracted from");
  Lts out(l.name());
  for (std::size_t s = 0; s < l.num_states(); ++s) {
    out.add_state(l.state(s));
    if (l.is_terminating(s)) out.set_terminating(s);
  }
  if (l.num_states() != 0) out.set_initial(l.initial());
  for (const auto& a : l.alphabet()) {
    if (!i.count(a)) out.add_action(a);
  }
  for (const auto& t : l.transitions()) out.add_transition_raw(t.src, i.count(t.label) ? kTau : t.label, t.dst);
  return out;
}

namespace {

// Copies the states of `src` into `out` with `suffix` appended to their names.
std::vector<std::size_t> copy_states(const Lts& src, const std::string& suffix, Lts& out, bool keep_term) {
  std::vector<std::size_t> map(src.num_states());
  for (std::size_t s = 0; s < src.num_states(); ++s) {
    map[s] = out.add_state(src.state(s) + suffix);
    if (keep_term && src.is_terminating(s)) out.set_terminating(map[s]);
  }
  return map;
}

}  // namespace

Lts alt(const Lts& a, const Lts& b) {
  std::string root = fresh_root(seed_of("alt", a, &b));
  root = untaken(root, [&](const std::string& n) { return a.has_state(n) || b.has_state(n); });
  std::string suffix =
      prime_suffix(b, [&](const std::string& n) { return a.has_state(n) || n == root; });
  Lts out(a.name() + "+" + b.name());
  std::size_t r = out.add_state(root);
  out.set_initial(r);
  auto ma = copy_states(a, "", out, true);
  auto mb = copy_states(b, suffix, out, true);
  copy_alphabet(a, out);
  copy_alphabet(b, out);
  for (const auto& t : a.transitions()) {
    out.add_transition_raw(ma[t.src], t.label, ma[t.dst]);
    if (t.src == a.initial()) out.add_transition_raw(r, t.label, ma[t.dst]);
  }
  for (const auto& t : b.transitions()) {
    out.add_transition_raw(mb[t.src], t.label, mb[t.dst]);
    if (t.src == b.initial()) out.add_transition_raw(r, t.label, mb[t.dst]);
  }
  return restrict_reachable(out);
}

Lts seq(const Lts& a, const Lts& b) {
  std::string suffix = prime_suffix(b, [&](const std::string& n) { return a.has_state(n); });
  Lts out(a.name() + "." + b.name());
  std::vector<std::size_t> ma(a.num_states());
  for (std::size_t s = 0; s < a.num_states(); ++s) {
    if (!a.is_terminating(s)) ma[s] = out.add_state(a.state(s));
  }
  auto mb = copy_states(b, suffix, out, true);
  out.set_initial(ma[a.initial()]);
  copy_alphabet(a, out);
  copy_alphabet(b, out);
  for (const auto& t : a.transitions()) {
    std::size_t dst = a.is_terminating(t.dst) ? mb[b.initial()] : ma[t.dst];
    out.add_transition_raw(ma[t.src], t.label, dst);
  }
  for (const auto& t : b.transitions()) out.add_transition_raw(mb[t.src], t.label, mb[t.dst]);
  return restrict_reachable(out);
}

Lts star(const Lts& a, const Lts& b) {
  std::string root = fresh_root(seed_of("star", a, &b));
  root = untaken(root, [&](const std::string& n) { return a.has_state(n) || b.has_state(n); });
  std::string suffix =
      prime_suffix(b, [&](const std::string& n) { return a.has_state(n) || n == root; });
  Lts out(a.name() + "*" + b.name());
  std::size_t r = out.add_state(root);
  out.set_initial(r);
  std::vector<std::size_t> ma(a.num_states());
  for (std::size_t s = 0; s < a.num_states(); ++s) {
    if (!a.is_terminating(s)) ma[s] = out.add_state(a.state(s));
  }
  auto mb = copy_states(b, suffix, out, true);
  copy_alphabet(a, out);
  copy_alphabet(b, out);
  for (const auto& t : a.transitions()) {
    std::size_t dst = a.is_terminating(t.dst) ? r : ma[t.dst];
    out.add_transition_raw(ma[t.src], t.label, dst);
    if (t.src == a.initial()) out.add_transition_raw(r, t.label, dst);
  }
  for (const auto& t : b.transitions()) {
    out.add_transition_raw(mb[t.src], t.label, mb[t.dst]);
    if (t.src == b.initial()) out.add_transition_raw(r, t.label, mb[t.dst]);
  }
  return restrict_reachable(out);
}

Lts omega(const Lts& a) {
  Lts out = star(a, delta());
  out.set_name(a.name() + "^omega");
  return out;
}

}  // namespace prockit
