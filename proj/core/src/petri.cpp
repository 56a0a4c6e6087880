#include "prockit/petri.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>

#include "prockit/error.hpp"
#include "text.hpp"

namespace prockit {

namespace {

bool valid_place(const std::string& p) {
  if (!is_valid_token(p)) return false;
  int depth = 0;
  for (char c : p) {
    if (c == '{' || c == '}' || c == ':') return false;
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) return false;
    if (depth < 0) return false;
  }
  return depth == 0;
}

}  // namespace

void Net::add_place(const std::string& p) {
  if (!valid_place(p)) throw Error("invalid place name '" + p + "'");
  places.insert(p);
}

void Net::add_transition(std::set<std::string> pre, const std::string& label, std::set<std::string> post) {
  if (pre.empty() || post.empty()) throw Error("transition '" + label + "' needs a non-empty preset and postset");
  if (!is_valid_token(label) || label == kDelta) throw Error("invalid action label '" + label + "'");
  for (const auto& p : pre) add_place(p);
  for (const auto& p : post) add_place(p);
  if (!is_tau(label)) alphabet.insert(label);
  transitions.insert(NetTransition{std::move(pre), label, std::move(post)});
}

void Net::mark(const std::string& p, unsigned count) {
  add_place(p);
  if (count == 0) return;
  initial[p] += count;
}

ValidationReport validate_net(const Net& n) {
  ValidationReport r;
  if (n.initial.empty()) r.problems.push_back("initial marking is empty");
  for (const auto& [p, c] : n.initial) {
    if (!n.places.count(p)) r.problems.push_back("initial marking names unknown place '" + p + "'");
  }
  if (n.alphabet.count(kTau)) r.problems.push_back("alphabet contains tau");
  for (const auto& t : n.transitions) {
    if (t.pre.empty()) r.problems.push_back("transition '" + t.label + "' has an empty preset");
    if (t.post.empty()) r.problems.push_back("transition '" + t.label + "' has an empty postset");
    for (const auto* side : {&t.pre, &t.post}) {
      for (const auto& p : *side) {
        if (!n.places.count(p)) r.problems.push_back("transition '" + t.label + "' uses unknown place '" + p + "'");
      }
    }
    if (!is_tau(t.label) && !n.alphabet.count(t.label)) {
      r.problems.push_back("undeclared label '" + t.label + "'");
    }
  }
  return r;
}

bool firable(const NetTransition& t, const Marking& m) {
  return std::all_of(t.pre.begin(), t.pre.end(), [&](const std::string& p) {
    auto it = m.find(p);
    return it != m.end() && it->second > 0;
  });
}

std::vector<NetTransition> enabled(const Net& n, const Marking& m) {
  std::vector<NetTransition> out;
  for (const auto& t : n.transitions) {
    if (firable(t, m)) out.push_back(t);
  }
  return out;
}

Marking fire(const Marking& m, const NetTransition& t) {
  if (!firable(t, m)) throw Error("transition '" + t.label + "' is not firable in " + marking_name(m));
  Marking out = m;
  for (const auto& p : t.pre) {
    if (t.post.count(p)) continue;
    if (--out[p] == 0) out.erase(p);
  }
  for (const auto& p : t.post) {
    if (!t.pre.count(p)) ++out[p];
  }
  return out;
}

std::string marking_name(const Marking& m) {
  std::string out = "{";
  bool first = true;
  for (const auto& [p, c] : m) {
    if (c == 0) continue;
    if (!first) out += ',';
    first = false;
    out += p;
    if (c > 1) out += ":" + std::to_string(c);
  }
  return out + "}";
}

Exploration trsy(const Net& n, std::size_t bound) {
  if (bound == 0) throw Error("marking budget must be positive");
  Exploration ex;
  ex.lts.set_name(n.name);
  for (const auto& a : n.alphabet) ex.lts.add_action(a);
  std::deque<std::pair<std::size_t, Marking>> queue;
  std::size_t i0 = ex.lts.add_state(marking_name(n.initial));
  ex.lts.set_initial(i0);
  queue.emplace_back(i0, n.initial);
  while (!queue.empty()) {
    auto [src, m] = queue.front();
    queue.pop_front();
    std::vector<std::tuple<std::string, std::string, Marking>> moves;
    for (const auto& t : enabled(n, m)) {
      Marking next = fire(m, t);
      moves.emplace_back(t.label, marking_name(next), std::move(next));
    }
    std::sort(moves.begin(), moves.end(), [](const auto& a, const auto& b) {
      return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
    });
    bool cut = false;
    for (auto& [label, name, next] : moves) {
      std::size_t dst;
      if (ex.lts.has_state(name)) {
        dst = ex.lts.index_of(name);
      } else {
        if (ex.lts.num_states() >= bound) {
          cut = true;
          continue;
        }
        dst = ex.lts.add_state(name);
        queue.emplace_back(dst, std::move(next));
      }
      ex.lts.add_transition_raw(src, label, dst);
    }
    if (cut) {
      ex.complete = false;
      ex.frontier.push_back(ex.lts.state(src));
    }
  }
  return ex;
}

Net par_nets(const Net& a, const Net& b, const CommFn& g) {
  auto report = validate_comm(g);
  if (!report.ok()) throw Error("invalid communication function: " + report.problems.front());
  std::string suffix;
  while (std::any_of(b.places.begin(), b.places.end(),
                     [&](const std::string& p) { return a.places.count(p + suffix) != 0; })) {
    suffix += '\'';
  }
  auto tag = [&](const std::set<std::string>& s) {
    std::set<std::string> out;
    for (const auto& p : s) out.insert(p + suffix);
    return out;
  };
  Net out;
  out.name = a.name + "||" + b.name;
  for (const auto& p : a.places) out.add_place(p);
  for (const auto& p : b.places) out.add_place(p + suffix);
  out.alphabet = a.alphabet;
  out.alphabet.insert(b.alphabet.begin(), b.alphabet.end());
  for (const auto& x : a.alphabet) {
    for (const auto& y : b.alphabet) {
      if (auto c = g.get(x, y)) out.alphabet.insert(*c);
    }
  }
  for (const auto& t : a.transitions) out.transitions.insert(t);
  for (const auto& t : b.transitions) out.transitions.insert({tag(t.pre), t.label, tag(t.post)});
  for (const auto& t : a.transitions) {
    if (is_tau(t.label)) continue;
    for (const auto& u : b.transitions) {
      if (is_tau(u.label)) continue;
      auto c = g.get(t.label, u.label);
      if (!c) continue;
      NetTransition f{t.pre, *c, t.post};
      for (const auto& p : tag(u.pre)) f.pre.insert(p);
      for (const auto& p : tag(u.post)) f.post.insert(p);
      out.transitions.insert(std::move(f));
    }
  }
  out.initial = a.initial;
  for (const auto& [p, c] : b.initial) out.initial[p + suffix] += c;
  return out;
}

Net encap_net(const std::set<std::string>& h, const Net& n, std::size_t bound) {
  if (h.count(kTau)) throw Error("tau cannot be encapsulated");
  // H-free token game.
  std::set<Marking> seen{n.initial};
  std::deque<Marking> queue{n.initial};
  std::set<std::string> marked_places;
  std::set<std::string> fired;
  while (!queue.empty()) {
    Marking m = queue.front();
    queue.pop_front();
    for (const auto& [p, c] : m) {
      if (c > 0) marked_places.insert(p);
    }
    for (const auto& t : enabled(n, m)) {
      if (h.count(t.label)) continue;
      fired.insert(t.label);
      Marking next = fire(m, t);
      if (seen.count(next)) continue;
      if (seen.size() >= bound) throw Error("marking budget exhausted while encapsulating a net");
      seen.insert(next);
      queue.push_back(std::move(next));
    }
  }
  Net out;
  out.name = n.name;
  out.places = marked_places;
  for (const auto& a : n.alphabet) {
    if (!h.count(a) && fired.count(a)) out.alphabet.insert(a);
  }
  auto inside = [&](const std::set<std::string>& s) {
    return std::all_of(s.begin(), s.end(), [&](const std::string& p) { return marked_places.count(p) != 0; });
  };
  for (const auto& t : n.transitions) {
    if (h.count(t.label)) continue;
    if (!is_tau(t.label) && !out.alphabet.count(t.label)) continue;
    if (!inside(t.pre) || !inside(t.post)) continue;
    out.transitions.insert(t);
  }
  out.initial = n.initial;
  return out;
}

Net hide_net(const std::set<std::string>& i, const Net& n) {
  if (i.count(kTau)) throw Error("tau cannot be abstracted from");
  Net out;
  out.name = n.name;
  out.places = n.places;
  for (const auto& a : n.alphabet) {
    if (!i.count(a)) out.alphabet.insert(a);
  }
  for (const auto& t : n.transitions) out.transitions.insert({t.pre, i.count(t.label) ? kTau : t.label, t.post});
  out.initial = n.initial;
  return out;
}

EquivResult net_branching_eq(const Net& a, const Net& b, std::size_t bound) {
  auto ta = trsy(a, bound);
  auto tb = trsy(b, bound);
  if (!ta.complete || !tb.complete) {
    throw Error(std::string("reachable markings of the ") + (ta.complete ? "right" : "left") +
                " net exceed the budget of " + std::to_string(bound));
  }
  return branching_bisim(ta.lts, tb.lts);
}

namespace {

class NetIso {
 public:
  NetIso(const Net& a, const Net& b) : a_(a), b_(b), pa_(a.places.begin(), a.places.end()) {
    for (const auto& p : a.places) sig_a_[p] = signature(a, p);
    for (const auto& p : b.places) sig_b_[p] = signature(b, p);
  }

  bool run() {
    if (a_.places.size() != b_.places.size() || a_.transitions.size() != b_.transitions.size()) return false;
    if (a_.alphabet != b_.alphabet) return false;
    return extend(0);
  }

 private:
  using Signature = std::tuple<unsigned, std::multiset<std::string>, std::multiset<std::string>>;

  static Signature signature(const Net& n, const std::string& p) {
    Signature s;
    auto it = n.initial.find(p);
    std::get<0>(s) = it == n.initial.end() ? 0 : it->second;
    for (const auto& t : n.transitions) {
      if (t.pre.count(p)) std::get<1>(s).insert(t.label);
      if (t.post.count(p)) std::get<2>(s).insert(t.label);
    }
    return s;
  }

  bool transitions_match() const {
    for (const auto& t : a_.transitions) {
      NetTransition u{{}, t.label, {}};
      for (const auto& p : t.pre) u.pre.insert(map_.at(p));
      for (const auto& p : t.post) u.post.insert(map_.at(p));
      if (!b_.transitions.count(u)) return false;
    }
    return true;
  }

  bool extend(std::size_t i) {
    if (i == pa_.size()) return transitions_match();
    const std::string& p = pa_[i];
    for (const auto& q : b_.places) {
      if (used_.count(q) || sig_a_[p] != sig_b_[q]) continue;
      map_[p] = q;
      used_.insert(q);
      if (extend(i + 1)) return true;
      used_.erase(q);
      map_.erase(p);
    }
    return false;
  }

  const Net& a_;
  const Net& b_;
  std::vector<std::string> pa_;
  std::map<std::string, Signature> sig_a_, sig_b_;
  std::map<std::string, std::string> map_;
  std::set<std::string> used_;
};

std::set<std::string> parse_place_set(const std::string& token, std::size_t line, std::size_t col) {
  if (token.size() < 2 || token.front() != '{' || token.back() != '}') {
    throw ParseError("expected a place set like {p,q}", line, col);
  }
  std::set<std::string> out;
  std::string cur;
  int depth = 0;
  for (std::size_t i = 1; i + 1 < token.size(); ++i) {
    char c = token[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      if (cur.empty()) throw ParseError("empty place name", line, col);
      out.insert(cur);
      cur.clear();
      continue;
    }
    cur += c;
  }
  if (!cur.empty()) out.insert(cur);
  if (out.empty()) throw ParseError("place sets must be non-empty", line, col);
  return out;
}

std::string place_set(const std::set<std::string>& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& p : s) {
    if (!first) out += ',';
    first = false;
    out += p;
  }
  return out + "}";
}

}  // namespace

bool net_isomorphic(const Net& a, const Net& b) { return NetIso(a, b).run(); }

Net parse_net(std::string_view text) {
  Net n;
  bool have_header = false;
  for (const auto& line : detail::tokenize_lines(text)) {
    const auto& t = line.tokens;
    auto fail = [&](const std::string& msg, std::size_t i) {
      return ParseError(msg, line.number, i < t.size() ? t[i].column : t.back().column);
    };
    const std::string& kw = t[0].text;
    try {
      if (!have_header) {
        if (kw != "net") throw fail("expected 'net <name>' header", 0);
        if (t.size() > 2) throw fail("unexpected token after name", 2);
        if (t.size() == 2) n.name = t[1].text;
        have_header = true;
      } else if (kw == "place") {
        if (t.size() < 2) throw fail("expected 'place <p>...'", 1);
        for (std::size_t i = 1; i < t.size(); ++i) n.add_place(t[i].text);
      } else if (kw == "init") {
        if (t.size() != 2 && t.size() != 3) throw fail("expected 'init <p> [count]'", 1);
        unsigned count = 1;
        if (t.size() == 3) {
          const std::string& c = t[2].text;
          if (c.empty() || !std::all_of(c.begin(), c.end(), [](char d) { return d >= '0' && d <= '9'; })) {
            throw fail("token count must be a natural number", 2);
          }
          count = static_cast<unsigned>(std::stoul(c));
        }
        n.mark(t[1].text, count);
      } else if (kw == "act") {
        if (t.size() < 2) throw fail("expected 'act <label>...'", 1);
        for (std::size_t i = 1; i < t.size(); ++i) {
          if (is_tau(t[i].text) || t[i].text == kDelta) throw fail("'" + t[i].text + "' cannot be declared", i);
          n.alphabet.insert(t[i].text);
        }
      } else if (kw == "tr") {
        if (t.size() != 4) throw fail("expected 'tr {pre} <label> {post}'", std::min<std::size_t>(t.size(), 3));
        auto pre = parse_place_set(t[1].text, line.number, t[1].column);
        auto post = parse_place_set(t[3].text, line.number, t[3].column);
        n.add_transition(std::move(pre), t[2].text, std::move(post));
      } else if (kw == "net") {
        throw fail("duplicate 'net' header", 0);
      } else {
        throw fail("unknown directive '" + kw + "'", 0);
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw fail(e.what(), 1);
    }
  }
  if (!have_header) throw ParseError("empty input", 1, 1);
  if (n.initial.empty()) throw ParseError("missing 'init' line", 1, 1);
  return n;
}

std::string print_net(const Net& n) {
  std::ostringstream os;
  os << "net";
  if (!n.name.empty()) os << ' ' << n.name;
  os << '\n';
  for (const auto& p : n.places) os << "place " << p << '\n';
  for (const auto& [p, c] : n.initial) {
    os << "init " << p;
    if (c != 1) os << ' ' << c;
    os << '\n';
  }
  for (const auto& a : n.alphabet) os << "act " << a << '\n';
  std::vector<std::tuple<std::string, std::string, std::string>> rows;
  for (const auto& t : n.transitions) rows.emplace_back(place_set(t.pre), t.label, place_set(t.post));
  std::sort(rows.begin(), rows.end());
  for (const auto& [pre, a, post] : rows) os << "tr " << pre << ' ' << a << ' ' << post << '\n';
  return os.str();
}

std::string net_to_dot(const Net& n) {
  std::ostringstream os;
  os << "digraph " << quote_dot(n.name.empty() ? "net" : n.name) << " {\n";
  os << "  rankdir=LR;\n";
  std::map<std::string, std::string> id;
  std::size_t k = 0;
  for (const auto& p : n.places) {
    id[p] = "p" + std::to_string(k++);
    auto it = n.initial.find(p);
    unsigned tokens = it == n.initial.end() ? 0 : it->second;
    std::string dots;
    if (tokens > 0 && tokens <= 3) {
      for (unsigned i = 0; i < tokens; ++i) dots += "●";
    } else if (tokens > 3) {
      dots = std::to_string(tokens);
    }
    os << "  " << id[p] << " [shape=circle, label=" << quote_dot(dots) << ", xlabel=" << quote_dot(p) << "];\n";
  }
  k = 0;
  for (const auto& t : n.transitions) {
    std::string tid = "t" + std::to_string(k++);
    os << "  " << tid << " [shape=box, label=" << quote_dot(is_tau(t.label) ? "τ" : t.label) << "];\n";
    for (const auto& p : t.pre) os << "  " << id[p] << " -> " << tid << ";\n";
    for (const auto& p : t.post) os << "  " << tid << " -> " << id[p] << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace prockit
