#include "prockit/recspec.hpp"

#include <cctype>
#include <deque>
#include <functional>
#include <map>
#include <sstream>

#include "prockit/error.hpp"
#include "text.hpp"

namespace prockit {

const std::string& RecSpec::root() const {
  if (equations.empty()) throw Error("specification has no equations");
  return equations.front().first;
}

const ExprPtr* RecSpec::find(const std::string& var) const {
  for (const auto& [v, rhs] : equations) {
    if (v == var) return &rhs;
  }
  return nullptr;
}

Defs RecSpec::defs() const {
  Defs d;
  for (const auto& [v, rhs] : equations) d[v] = rhs;
  return d;
}

void RecSpec::add(const std::string& var, ExprPtr rhs) {
  if (find(var) != nullptr) throw Error("duplicate equation for '" + var + "'");
  equations.emplace_back(var, std::move(rhs));
}

void check_spec(const RecSpec& s) {
  if (s.equations.empty()) throw Error("specification has no equations");
  std::set<std::string> defined;
  for (const auto& [v, rhs] : s.equations) {
    if (!defined.insert(v).second) throw Error("duplicate equation for '" + v + "'");
  }
  for (const auto& [v, rhs] : s.equations) {
    for (const auto& x : free_vars(rhs)) {
      if (!defined.count(x)) throw Error("undefined variable '" + x + "' in the equation for '" + v + "'");
    }
  }
}

namespace {

struct Position {
  std::size_t line = 1;
  std::size_t column = 1;
};

Position position_at(std::string_view text, std::size_t offset) {
  Position p;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++p.line;
      p.column = 1;
    } else {
      ++p.column;
    }
  }
  return p;
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

}  // namespace

RecSpec parse_spec(std::string_view text) {
  std::string clean = detail::strip_comments(text);
  RecSpec s;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < clean.size() && is_space(clean[pos])) ++pos;
  };
  skip();
  if (clean.compare(pos, 4, "spec") == 0 && (pos + 4 == clean.size() || is_space(clean[pos + 4]))) {
    pos += 4;
    while (pos < clean.size() && (clean[pos] == ' ' || clean[pos] == '\t')) ++pos;
    std::size_t start = pos;
    while (pos < clean.size() && !is_space(clean[pos])) ++pos;
    s.name = clean.substr(start, pos - start);
    if (s.name.empty()) {
      auto p = position_at(clean, pos);
      throw ParseError("expected a name after 'spec'", p.line, p.column);
    }
    std::size_t eol = clean.find('\n', pos);
    std::string rest = clean.substr(pos, eol == std::string::npos ? std::string::npos : eol - pos);
    for (char c : rest) {
      if (!is_space(c)) {
        auto p = position_at(clean, pos);
        throw ParseError("unexpected text after the specification name", p.line, p.column);
      }
    }
  }
  while (true) {
    skip();
    if (pos >= clean.size()) break;
    std::size_t start = pos;
    if (!std::isupper(static_cast<unsigned char>(clean[pos]))) {
      auto p = position_at(clean, pos);
      throw ParseError("expected an upper-case variable on the left-hand side", p.line, p.column);
    }
    while (pos < clean.size() &&
           (std::isalnum(static_cast<unsigned char>(clean[pos])) || clean[pos] == '_' || clean[pos] == '\'')) {
      ++pos;
    }
    std::string var = clean.substr(start, pos - start);
    skip();
    if (pos >= clean.size() || clean[pos] != '=') {
      auto p = position_at(clean, pos);
      throw ParseError("expected '=' after '" + var + "'", p.line, p.column);
    }
    ++pos;
    std::size_t end = clean.find(';', pos);
    if (end == std::string::npos) {
      auto p = position_at(clean, clean.size());
      throw ParseError("missing ';' after the equation for '" + var + "'", p.line, p.column);
    }
    ExprPtr rhs;
    try {
      rhs = parse_expr(std::string_view(clean).substr(pos, end - pos));
    } catch (const ParseError& e) {
      auto base = position_at(clean, pos);
      std::size_t line = base.line + e.line() - 1;
      std::size_t col = e.line() == 1 ? base.column + e.column() - 1 : e.column();
      std::string msg = e.what();
      auto colon = msg.find(": ");
      throw ParseError(colon == std::string::npos ? msg : msg.substr(colon + 2), line, col);
    }
    if (s.find(var) != nullptr) {
      auto p = position_at(clean, start);
      throw ParseError("duplicate equation for '" + var + "'", p.line, p.column);
    }
    s.equations.emplace_back(var, rhs);
    pos = end + 1;
  }
  if (s.equations.empty()) throw ParseError("empty specification", 1, 1);
  try {
    check_spec(s);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), 1, 1);
  }
  return s;
}

std::string print_spec(const RecSpec& s) {
  std::ostringstream os;
  if (!s.name.empty()) os << "spec " << s.name << '\n';
  for (const auto& [v, rhs] : s.equations) os << v << " = " << print_expr(rhs) << ";\n";
  return os.str();
}

namespace {

// True if `p` cannot terminate without first performing a visible action.
bool guarding(const ExprPtr& p, const std::set<std::string>& hidden) {
  switch (p->kind) {
    case ExprKind::Atom:
      return hidden.count(p->name) == 0;
    case ExprKind::Delta:
    case ExprKind::Omega:
      return true;
    case ExprKind::Tau:
    case ExprKind::Var:
      return false;
    case ExprKind::Alt:
      return guarding(p->left, hidden) && guarding(p->right, hidden);
    case ExprKind::Seq:
    case ExprKind::Par:
    case ExprKind::LeftMerge:
    case ExprKind::CommMerge:
      return guarding(p->left, hidden) || guarding(p->right, hidden);
    case ExprKind::Star:
      return guarding(p->right, hidden);
    case ExprKind::Encap:
      return guarding(p->left, hidden);
    case ExprKind::Hide: {
      auto inner = hidden;
      inner.insert(p->labels.begin(), p->labels.end());
      return guarding(p->left, inner);
    }
  }
  return false;
}

void unguarded(const ExprPtr& p, const std::set<std::string>& hidden, std::set<std::string>& out) {
  switch (p->kind) {
    case ExprKind::Var:
      out.insert(p->name);
      return;
    case ExprKind::Atom:
    case ExprKind::Tau:
    case ExprKind::Delta:
      return;
    case ExprKind::Seq:
      unguarded(p->left, hidden, out);
      if (!guarding(p->left, hidden)) unguarded(p->right, hidden, out);
      return;
    case ExprKind::Hide: {
      auto inner = hidden;
      inner.insert(p->labels.begin(), p->labels.end());
      unguarded(p->left, inner, out);
      return;
    }
    default:
      unguarded(p->left, hidden, out);
      if (p->right) unguarded(p->right, hidden, out);
      return;
  }
}

}  // namespace

std::vector<std::pair<std::string, std::string>> unguarded_dependencies(const RecSpec& s) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [v, rhs] : s.equations) {
    std::set<std::string> vars;
    unguarded(rhs, {}, vars);
    for (const auto& x : vars) out.emplace_back(v, x);
  }
  return out;
}

bool is_guarded(const RecSpec& s) {
  std::map<std::string, std::vector<std::string>> edges;
  for (const auto& [from, to] : unguarded_dependencies(s)) edges[from].push_back(to);
  // Cycle detection by depth-first search with colours.
  std::map<std::string, int> colour;
  std::function<bool(const std::string&)> cyclic = [&](const std::string& v) {
    colour[v] = 1;
    for (const auto& w : edges[v]) {
      if (colour[w] == 1) return true;
      if (colour[w] == 0 && cyclic(w)) return true;
    }
    colour[v] = 2;
    return false;
  };
  for (const auto& [v, rhs] : s.equations) {
    if (colour[v] == 0 && cyclic(v)) return false;
  }
  return true;
}

namespace {

void flatten_alt(const ExprPtr& p, std::vector<ExprPtr>& out) {
  if (p->kind == ExprKind::Alt) {
    flatten_alt(p->left, out);
    flatten_alt(p->right, out);
  } else {
    out.push_back(p);
  }
}

bool linear_summand(const ExprPtr& p) {
  if (p->kind == ExprKind::Atom || p->kind == ExprKind::Delta) return true;
  return p->kind == ExprKind::Seq && p->left->kind == ExprKind::Atom && p->right->kind == ExprKind::Var;
}

}  // namespace

bool is_linear(const RecSpec& s) {
  for (const auto& [v, rhs] : s.equations) {
    if (rhs->kind == ExprKind::Var) continue;
    std::vector<ExprPtr> parts;
    flatten_alt(rhs, parts);
    for (const auto& part : parts) {
      if (!linear_summand(part)) return false;
    }
  }
  return true;
}

Lts linear_to_lts(const RecSpec& s) {
  check_spec(s);
  if (!is_linear(s)) throw Error("specification is not linear");
  if (!is_guarded(s)) throw Error("specification has cyclic variable aliases");
  // An alias X = Y shares Y's state.
  auto resolve = [&](std::string v) {
    while ((*s.find(v))->kind == ExprKind::Var) v = (*s.find(v))->name;
    return v;
  };
  Lts l(s.name);
  for (const auto& [v, rhs] : s.equations) {
    if (rhs->kind != ExprKind::Var) l.add_state(v);
  }
  l.set_initial(l.index_of(resolve(s.root())));
  for (const auto& [v, rhs] : s.equations) {
    if (rhs->kind == ExprKind::Var) continue;
    std::vector<ExprPtr> parts;
    flatten_alt(rhs, parts);
    for (const auto& part : parts) {
      if (part->kind == ExprKind::Delta) continue;
      if (part->kind == ExprKind::Atom) {
        std::size_t done = l.add_state(kDoneState);
        l.set_terminating(done);
        l.add_transition(l.index_of(v), part->name, done);
      } else {
        l.add_transition(l.index_of(v), part->left->name, l.index_of(resolve(part->right->name)));
      }
    }
  }
  return restrict_reachable(l);
}

RecSpec lts_to_linear(const Lts& l) {
  for (const auto& t : l.transitions()) {
    if (is_tau(t.label)) throw Error("silent steps cannot be expressed in a linear specification");
  }
  Lts r = restrict_reachable(l);
  RecSpec s;
  s.name = l.name();
  auto succ = r.successors();
  std::vector<std::size_t> order{r.initial()};
  std::set<std::size_t> seen{r.initial()};
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::vector<std::pair<std::string, std::size_t>> moves = succ[order[i]];
    std::sort(moves.begin(), moves.end(), [&](const auto& a, const auto& b) {
      return std::tie(a.first, r.state(a.second)) < std::tie(b.first, r.state(b.second));
    });
    for (const auto& [label, dst] : moves) {
      if (!r.is_terminating(dst) && seen.insert(dst).second) order.push_back(dst);
    }
  }
  std::map<std::size_t, std::string> var;
  std::set<std::string> used;
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::string name = "X_";
    for (char c : r.state(order[i])) name += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
    if (used.count(name)) name += "_" + std::to_string(i);
    used.insert(name);
    var[order[i]] = name;
  }
  for (auto st : order) {
    std::vector<std::pair<std::string, std::size_t>> moves = succ[st];
    std::sort(moves.begin(), moves.end(), [&](const auto& a, const auto& b) {
      return std::tie(a.first, r.state(a.second)) < std::tie(b.first, r.state(b.second));
    });
    ExprPtr rhs;
    for (const auto& [label, dst] : moves) {
      ExprPtr term = Expr::atom(label);
      if (!r.is_terminating(dst)) term = Expr::seq(term, Expr::var(var.at(dst)));
      rhs = rhs ? Expr::alt(rhs, term) : term;
    }
    s.equations.emplace_back(var.at(st), rhs ? rhs : Expr::delta());
  }
  return s;
}

Exploration unfold(const RecSpec& s, const CommFn& g, std::size_t bound) {
  check_spec(s);
  if (!is_guarded(s)) throw Error("specification is not guarded; its solution is not unique");
  Defs defs = s.defs();
  return sos_lts(Expr::var(s.root()), g, bound, &defs);
}

}  // namespace prockit
