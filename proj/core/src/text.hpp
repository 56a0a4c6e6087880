#pragma once

// Line tokenizer shared by the LTS, CommFn, net and spec readers.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace prockit::detail {

struct Token {
  std::string text;
  std::size_t column = 1;
};

struct TokenLine {
  std::size_t number = 1;
  std::vector<Token> tokens;
};

// Splits on whitespace. A `#` at the start of a token comments out the rest
// of the line; elsewhere it is an ordinary character. Blank lines are dropped.
std::vector<TokenLine> tokenize_lines(std::string_view text);

// Comment stripping for readers that tokenize themselves.
std::string strip_comments(std::string_view text);

}  // namespace prockit::detail
