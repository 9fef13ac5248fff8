#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "paramspec/error.hpp"

namespace paramspec::dsl {

enum class Tok { Ident, LBrace, RBrace, LParen, RParen, Comma, Colon, Arrow, Equals, End };

struct Token {
  Tok kind;
  std::string text;
  SourceLocation loc;
};

std::string_view describe(Tok kind);

/// Splits into tokens. `//` starts a comment running to the end of the line.
/// Columns count code points. Throws SyntaxError on invalid UTF-8 or an
/// unexpected character.
std::vector<Token> lex(std::string_view text);

/// Throws SyntaxError at the first invalid UTF-8 sequence.
void require_utf8(std::string_view text);

class Cursor {
 public:
  explicit Cursor(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const;
  bool at(Tok kind) const { return peek().kind == kind; }
  bool at_word(std::string_view word) const {
    return peek().kind == Tok::Ident && peek().text == word;
  }
  const Token& next();
  const Token& expect(Tok kind);
  const Token& expect_word(std::string_view word);
  bool accept(Tok kind);
  bool accept_word(std::string_view word);
  [[noreturn]] void fail(const std::string& msg) const;

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace paramspec::dsl
