#include <algorithm>
#include <sstream>

#include "prockit/error.hpp"
#include "prockit/lts.hpp"
#include "text.hpp"

namespace prockit {

bool is_valid_token(std::string_view token) {
  if (token.empty()) return false;
  return std::none_of(token.begin(), token.end(),
                      [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; });
}

std::string quote_dot(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

Lts parse_lts(std::string_view text) {
  Lts l;
  bool have_header = false;
  bool have_init = false;
  std::string init_name;
  for (const auto& line : detail::tokenize_lines(text)) {
    const auto& t = line.tokens;
    auto fail = [&](const std::string& msg, std::size_t i) -> ParseError {
      return ParseError(msg, line.number, i < t.size() ? t[i].column : t.back().column);
    };
    const std::string& kw = t[0].text;
    if (!have_header) {
      if (kw != "lts") throw fail("expected 'lts <name>' header", 0);
      if (t.size() > 2) throw fail("unexpected token after name", 2);
      if (t.size() == 2) l.set_name(t[1].text);
      have_header = true;
      continue;
    }
    if (kw == "init") {
      if (t.size() != 2) throw fail("expected 'init <state>'", 1);
      if (have_init) throw fail("duplicate init line", 0);
      have_init = true;
      init_name = t[1].text;
      l.add_state(init_name);
    } else if (kw == "state") {
      if (t.size() != 2) throw fail("expected 'state <state>'", 1);
      l.add_state(t[1].text);
    } else if (kw == "term") {
      if (t.size() != 2) throw fail("expected 'term <state>'", 1);
      l.set_terminating(t[1].text);
    } else if (kw == "act") {
      if (t.size() < 2) throw fail("expected 'act <label>...'", 1);
      for (std::size_t i = 1; i < t.size(); ++i) {
        try {
          l.add_action(t[i].text);
        } catch (const Error& e) {
          throw fail(e.what(), i);
        }
      }
    } else if (kw == "tr") {
      if (t.size() != 4) throw fail("expected 'tr <src> <label> <dst>'", std::min<std::size_t>(t.size(), 3));
      if (t[2].text == kDelta) throw fail("'delta' is not a transition label", 2);
      std::size_t s = l.add_state(t[1].text);
      std::size_t d = l.add_state(t[3].text);
      l.add_transition_raw(s, t[2].text, d);
    } else if (kw == "lts") {
      throw fail("duplicate 'lts' header", 0);
    } else {
      throw fail("unknown directive '" + kw + "'", 0);
    }
  }
  if (!have_header) throw ParseError("empty input", 1, 1);
  if (!have_init) throw ParseError("missing 'init' line", 1, 1);
  l.set_initial(init_name);
  return l;
}

std::string print_lts(const Lts& l) {
  std::ostringstream os;
  os << "lts";
  if (!l.name().empty()) os << ' ' << l.name();
  os << '\n';
  if (l.num_states() == 0) return os.str();
  os << "init " << l.state(l.initial()) << '\n';

  std::vector<char> mentioned(l.num_states(), 0);
  mentioned[l.initial()] = 1;
  for (const auto& t : l.transitions()) mentioned[t.src] = mentioned[t.dst] = 1;
  std::vector<std::string> isolated, term;
  for (std::size_t s = 0; s < l.num_states(); ++s) {
    if (l.is_terminating(s)) {
      term.push_back(l.state(s));
      continue;
    }
    if (!mentioned[s]) isolated.push_back(l.state(s));
  }
  std::sort(isolated.begin(), isolated.end());
  std::sort(term.begin(), term.end());
  for (const auto& s : isolated) os << "state " << s << '\n';
  for (const auto& s : term) os << "term " << s << '\n';
  for (const auto& a : l.alphabet()) os << "act " << a << '\n';

  std::vector<std::tuple<std::string, std::string, std::string>> rows;
  for (const auto& t : l.transitions()) rows.emplace_back(l.state(t.src), t.label, l.state(t.dst));
  std::sort(rows.begin(), rows.end());
  for (const auto& [s, a, d] : rows) os << "tr " << s << ' ' << a << ' ' << d << '\n';
  return os.str();
}

std::string lts_to_dot(const Lts& l) {
  std::ostringstream os;
  os << "digraph " << quote_dot(l.name().empty() ? "lts" : l.name()) << " {\n";
  os << "  rankdir=LR;\n";
  os << "  node [shape=ellipse];\n";
  if (l.num_states() == 0) {
    os << "}\n";
    return os.str();
  }
  std::vector<std::size_t> order(l.num_states());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return l.state(a) < l.state(b); });

  os << "  __init [shape=point];\n";
  os << "  __init -> " << quote_dot(l.state(l.initial())) << ";\n";
  for (auto s : order) os << "  " << quote_dot(l.state(s)) << ";\n";
  std::size_t k = 0;
  for (auto s : order) {
    if (!l.is_terminating(s)) continue;
    os << "  __term" << k << " [shape=point, style=invis];\n";
    os << "  " << quote_dot(l.state(s)) << " -> __term" << k << ";\n";
    ++k;
  }
  std::vector<std::tuple<std::string, std::string, std::string>> rows;
  for (const auto& t : l.transitions()) rows.emplace_back(l.state(t.src), t.label, l.state(t.dst));
  std::sort(rows.begin(), rows.end());
  for (const auto& [s, a, d] : rows) {
    os << "  " << quote_dot(s) << " -> " << quote_dot(d) << " [label=" << quote_dot(is_tau(a) ? "τ" : a)
       << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace prockit
