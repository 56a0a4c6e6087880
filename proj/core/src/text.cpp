#include "text.hpp"

namespace prockit::detail {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v'; }

}  // namespace

std::string strip_comments(std::string_view text) {
  std::string out(text);
  bool in_comment = false;
  for (std::size_t i = 0; i < out.size(); ++i) {
    char c = out[i];
    if (c == '\n') {
      in_comment = false;
      continue;
    }
    if (!in_comment && c == '#' && (i == 0 || is_space(out[i - 1]))) in_comment = true;
    if (in_comment) out[i] = ' ';
  }
  return out;
}

std::vector<TokenLine> tokenize_lines(std::string_view text) {
  std::vector<TokenLine> lines;
  std::string clean = strip_comments(text);
  std::size_t line_no = 1;
  std::size_t pos = 0;
  while (pos <= clean.size()) {
    std::size_t end = clean.find('\n', pos);
    if (end == std::string::npos) end = clean.size();
    TokenLine line;
    line.number = line_no;
    std::size_t i = pos;
    while (i < end) {
      while (i < end && is_space(clean[i])) ++i;
      if (i >= end) break;
      std::size_t start = i;
      while (i < end && !is_space(clean[i])) ++i;
      line.tokens.push_back(Token{clean.substr(start, i - start), start - pos + 1});
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    ++line_no;
    pos = end + 1;
  }
  return lines;
}

}  // namespace prockit::detail
